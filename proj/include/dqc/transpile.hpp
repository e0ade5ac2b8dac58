#pragma once

#include "dqc/backend.hpp"
#include "dqc/circuit.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace dqc {

/// Bijection between logical wires and physical device qubits, evolving under
/// inserted SWAPs.
class QubitMap {
public:
    QubitMap() = default;
    static QubitMap identity(uint32_t n);

    uint32_t size() const { return static_cast<uint32_t>(logical_to_physical_.size()); }
    uint32_t physical(uint32_t logical) const { return logical_to_physical_.at(logical); }
    uint32_t logical_at(uint32_t physical) const { return physical_to_logical_.at(physical); }
    void swap_physical(uint32_t p1, uint32_t p2);

    bool operator==(const QubitMap&) const = default;

private:
    std::vector<uint32_t> logical_to_physical_;
    std::vector<uint32_t> physical_to_logical_;
};

struct RouteOptions {
    /// Wires below this count are data and subject to routing.
    uint32_t num_data = 0;  // 0 = all wires are data
    /// Wires [num_data, num_data + num_comm) are virtual communication wires:
    /// pinned, exempt from coupling, and never used as SWAP intermediates.
    uint32_t num_comm = 0;
};

struct RouteResult {
    Circuit circuit;    // operands are physical device qubits (or comm wires)
    QubitMap final_map; // over the device nodes available to data routing
};

/// Greedy nearest-gate routing: instructions are processed in order; a
/// two-qubit gate on non-adjacent physical qubits triggers SWAPs along a BFS
/// shortest path that moves the first operand toward the second, ties broken
/// by lower physical index. Gates touching communication wires and
/// placeholders are exempt.
RouteResult route(const Circuit& sub, const BackendSpec& spec, const QubitMap& initial,
                  const RouteOptions& options = {});

/// Rewrites every gate into the target basis. Supports bases containing
/// {rz, sx, cx} or {rz, rx, cx}; Measure/Reset/Barrier and placeholders pass
/// through; SWAP lowers to three CX; CZ and CCX must have been lowered
/// earlier and are rejected.
Circuit translate_basis(const Circuit& sub, const std::set<GateKind>& basis);

/// Peephole pass: merges adjacent same-qubit RZ rotations, drops zero-angle
/// rotations and adjacent self-inverse pairs (X X, H H, ...). Never moves
/// gates across placeholders, Measure, Reset, Barrier, two-qubit gates or
/// conditioned gates.
Circuit optimize_1q(const Circuit& sub);

struct CompileOptions {
    uint32_t num_data = 0;   // 0 = whole register
    uint32_t num_comm = 0;
    bool optimize = true;
};

struct CompiledSubcircuit {
    Circuit circuit;       // physical operands, basis gates only
    std::string backend;
    QubitMap final_map;
    /// Placeholder id -> (instruction index, physical qubit of its operand).
    std::map<int64_t, std::pair<size_t, uint32_t>> placeholder_positions;
    uint32_t num_data = 0;
    uint32_t num_comm = 0;
};

/// route -> translate_basis -> optimize_1q. Placeholders must be frozen
/// (anchored) before compilation.
CompiledSubcircuit compile_subcircuit(const Circuit& sub, const BackendSpec& spec,
                                      const CompileOptions& options = {});

/// Structural checks: every non-exempt two-qubit gate sits on a coupling
/// edge and every gate kind is native (or Measure/Reset/Barrier/placeholder).
/// Throws CompileError on violation.
void check_conformance(const CompiledSubcircuit& compiled, const BackendSpec& spec);

}  // namespace dqc
