#pragma once

#include "dqc/circuit.hpp"
#include "dqc/partition.hpp"
#include "dqc/schedule.hpp"
#include "dqc/transpile.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dqc {

enum class QubitRole : uint8_t { Data, Comm, Aux };

enum class InstrTag : uint8_t { Local, EprPrep, TelegateCx, ClassicalMsg, Correction, Reset };

const char* tag_name(InstrTag tag);

struct WireInfo {
    std::string qpu;
    QubitRole role = QubitRole::Aux;
    uint32_t physical = 0;           // wire index within the QPU
    int64_t global_data_index = -1;  // original circuit qubit (data wires)
    int64_t epr_id = -1;             // owning EPR event (comm wires)
};

/// The assembled global circuit plus per-wire ownership and the remote-gate
/// bookkeeping. Wire layout: each QPU's subcircuit occupies a contiguous
/// block, data wires first, communication wires after them.
struct DistributedLayout {
    Circuit global_circuit;
    std::vector<WireInfo> wires;
    std::vector<InstrTag> tags;              // parallel to global_circuit
    std::vector<std::string> instr_qpu;      // owning QPU per instruction
    std::vector<EprEvent> epr_events;
    std::vector<ClassicalMessage> messages;
    uint32_t base_clbits = 0;                // original circuit's classical bits
    std::map<std::string, uint32_t> qpu_offset;      // label -> first wire
    std::vector<uint32_t> initial_wire_of_data;      // global data qubit -> wire
    std::vector<uint32_t> final_wire_of_data;        // after routing permutations
    PartitionPlan plan;

    uint32_t num_data_qubits() const;
    uint32_t num_comm_qubits() const;
};

/// The Table-style metrics row for one compiled layout.
struct MetricsReport {
    std::string benchmark;
    std::string partition_desc;
    std::string assignment_desc;
    uint32_t n_data = 0;
    uint32_t n_comm = 0;
    uint32_t n_total = 0;
    size_t subcirc_depth_min = 0;
    size_t subcirc_depth_max = 0;
    double subcirc_depth_avg = 0.0;
    size_t layout_depth = 0;
    size_t gate_count = 0;
    bool simulated = false;
    std::string sim_note;
    std::string top_state;
    double iprob = 0.0;
    double eprob = 0.0;
    double fidelity = 0.0;
    double error_rate = 0.0;
    std::vector<std::pair<std::string, double>> top_outcomes;
};

/// The fixed non-local CNOT realization over one fresh EPR pair: prepare
/// |Phi+> on (e1, e2), entangle the control into e1, measure e1 and correct
/// e2 with X, apply the proxy CX onto the target, disentangle e2 in the X
/// basis, correct the control with Z, and reset both communication wires.
/// Exactly 11 instructions; tags attached per instruction.
std::vector<std::pair<Instruction, InstrTag>> expand_telegate(uint32_t c_qubit, uint32_t t_qubit,
                                                              uint32_t e1, uint32_t e2,
                                                              uint32_t m1_bit, uint32_t m2_bit);

/// Stage 4: merges the compiled subcircuits into one global circuit,
/// interleaving by remote-gate ordinal (control side flushed before target
/// side, then the TeleGate expansion), and resolves every placeholder.
/// compiled[i] must correspond to schedule.qpus[i].
DistributedLayout assemble(const Schedule& schedule, const std::vector<CompiledSubcircuit>& compiled,
                           const PartitionPlan& plan);

/// Fills the structural metric fields (counts, depths). Fidelity fields are
/// filled by the pipeline when simulation results exist. Subcircuit depths
/// exclude the remote-gate placeholders.
MetricsReport compute_metrics(const DistributedLayout& layout,
                              const std::vector<CompiledSubcircuit>& compiled);

/// Deterministic JSON document with top-level keys qpus, instructions and
/// metrics (byte-identical output for identical inputs).
std::string emit_layout(const DistributedLayout& layout, const MetricsReport& metrics);

std::string metrics_to_json(const MetricsReport& metrics);
MetricsReport metrics_from_json(const std::string& text);

}  // namespace dqc
