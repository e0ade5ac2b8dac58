#pragma once

#include "dqc/circuit.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dqc {

/// User grouping of data qubits plus the group -> QPU -> backend assignment.
struct PartitionPlan {
    std::vector<std::vector<uint32_t>> groups;        // sorted global indices
    std::vector<std::string> qpu_labels;              // one label per group (Q0, Q1, ...)
    std::map<std::string, std::string> backend_of;    // label -> backend name

    const std::string& backend_name(size_t group) const;
    /// Group owning a qubit, or -1.
    int group_of(uint32_t qubit) const;
    /// Disjointness, full cover of [0, num_qubits), label/backend totality.
    void validate(uint32_t num_qubits) const;
    /// "q0-q1|q2-q3|q4-q5" form for reports.
    std::string describe_partitions() const;
    std::string describe_assignment() const;
};

/// A cross-partition CX lowered to a remote-gate record.
struct RemoteGate {
    int64_t id = 0;
    uint32_t control = 0;        // global qubit index
    uint32_t target = 0;         // global qubit index
    uint32_t control_group = 0;
    uint32_t target_group = 0;
};

/// One partition projected to its own local index space. The local circuit
/// contains a single-qubit placeholder marker wherever one of the group's
/// qubits takes part in a remote gate. Classical bits stay global.
struct LogicalGroup {
    uint32_t index = 0;
    std::string qpu_label;
    std::string backend;
    std::vector<uint32_t> data_qubits;  // sorted global indices; local i = data_qubits[i]
    Circuit local_circuit;
    std::vector<int64_t> remote_refs;   // remote ids touching this group, in order

    uint32_t local_of(uint32_t global_qubit) const;
};

/// Stage 1: lowers every multi-qubit gate to CX, then replaces each CX whose
/// endpoints live in different groups by a placeholder carrying a fresh
/// RemoteGate record. Everything else is unchanged.
std::pair<Circuit, std::vector<RemoteGate>> lower_to_remote(const Circuit& circuit,
                                                            const PartitionPlan& plan);

/// Two communication qubits (one EPR pair) per remote gate, never reused.
size_t count_comm_qubits(const std::vector<RemoteGate>& remotes);

/// Projects the lowered circuit onto each group.
std::vector<LogicalGroup> build_groups(const Circuit& lowered, const PartitionPlan& plan);

/// Parses an inclusive range spec like "q0-q2" or "q5" into indices.
std::vector<uint32_t> parse_qubit_range(const std::string& spec);

/// Builds a plan from "q0-q1|q2-q3" notation plus labels and a label ->
/// backend map.
PartitionPlan make_plan(const std::string& partition_spec, std::vector<std::string> labels,
                        std::map<std::string, std::string> backends);

/// Loads the partition JSON file: {"partitions": [["q0-q1"], ...],
/// "assignment": ["Q0", ...], "backends": {"Q0": "FakeVigoV2", ...}}.
PartitionPlan load_partition(const std::string& path);
PartitionPlan parse_partition(const std::string& json_text);

}  // namespace dqc
