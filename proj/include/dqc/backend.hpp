#pragma once

#include "dqc/types.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dqc {

/// One QPU: qubit count, undirected coupling graph, native gate alphabet.
struct BackendSpec {
    std::string name;
    uint32_t num_qubits = 0;
    std::set<std::pair<uint32_t, uint32_t>> coupling;  // stored with first < second
    std::set<GateKind> basis_gates;

    bool has_edge(uint32_t a, uint32_t b) const {
        if (a > b) std::swap(a, b);
        return coupling.count({a, b}) != 0;
    }
    bool in_basis(GateKind kind) const { return basis_gates.count(kind) != 0; }
};

/// Throws ValidationError unless coupling pairs are in range and irreflexive,
/// the graph is connected, and the basis contains CX plus a continuous
/// single-qubit rotation.
void validate_backend(const BackendSpec& spec);

class BackendRegistry {
public:
    /// Registry preloaded with the built-in devices FakeVigoV2, FakeAthensV2
    /// and FakeLagosV2.
    static BackendRegistry with_builtins();

    /// Adds or replaces (names are unique, case-sensitive). Validates.
    void add(BackendSpec spec);

    bool contains(const std::string& name) const { return specs_.count(name) != 0; }
    const BackendSpec& get(const std::string& name) const;
    const std::map<std::string, BackendSpec>& specs() const { return specs_; }

private:
    std::map<std::string, BackendSpec> specs_;
};

/// Loads user backends from a JSON file (a list of entries with name,
/// num_qubits, coupling, basis_gates) on top of and optionally overriding the
/// built-ins. An empty path yields just the built-ins.
BackendRegistry load_registry(const std::string& path);

/// Parses registry JSON text (the file's content).
BackendRegistry parse_registry(const std::string& json_text);

/// Capacity check: needed_qubits must fit spec.num_qubits. Throws
/// CapacityError with the needed vs. available counts.
void validate_fit(const BackendSpec& spec, uint32_t needed_qubits);

}  // namespace dqc
