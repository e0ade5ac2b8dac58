#pragma once

#include "dqc/circuit.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace dqc {

/// Dependency DAG over the instructions of a circuit. Edges connect an
/// instruction to its immediate successor on each qubit, and classical
/// write -> read, read -> write and write -> write pairs on each bit.
struct CircuitDag {
    uint32_t num_qubits = 0;
    uint32_t num_clbits = 0;
    std::vector<Instruction> nodes;
    std::vector<std::pair<uint32_t, uint32_t>> edges;  // (from, to), from < to in source order
};

CircuitDag to_dag(const Circuit& circuit);

/// Relinearizes a DAG back into a circuit. Ties between ready nodes are
/// broken by original node index, so to_dag followed by from_dag is the
/// identity.
Circuit from_dag(const CircuitDag& dag);

/// Longest dependency path; every instruction counts one layer except
/// Barrier, and classical dependencies (a measurement feeding a conditioned
/// gate) extend paths like qubit dependencies do.
size_t depth(const Circuit& circuit);

/// Number of instructions excluding Barrier. Measure and Reset count.
size_t gate_count(const Circuit& circuit);

}  // namespace dqc
