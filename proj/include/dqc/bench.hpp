#pragma once

#include "dqc/circuit.hpp"
#include "dqc/partition.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dqc {

/// GHZ preparation: H on q0, a CX chain, measure everything.
Circuit gen_ghz(uint32_t n);

/// Bit-flip repetition code with syndrome extraction. Qubits interleave data
/// and ancilla (d0, a0, d1, a1, d2 for three data qubits). Each round applies
/// CX(d_i, a_i) and CX(d_{i+1}, a_i) per ancilla, measures and resets the
/// ancilla; a final measurement covers every qubit. Final readout bits are
/// clbits [0, n); syndrome bits follow.
Circuit gen_bitcode(uint32_t n_data, uint32_t rounds, const std::vector<uint8_t>& initial_bits);

/// Trotterized transverse-field Ising evolution on a chain, starting from
/// |1...1>: per step, ZZ(2*J*dt) on each neighbor pair then RX(2*h*dt)
/// everywhere; measure everything.
Circuit gen_tfim(uint32_t n, uint32_t steps = 3, double j = 1.0, double h = 1.0, double dt = 0.2);

/// One QAOA layer on the complete graph: H everywhere, ZZ(2*gamma) per pair
/// i<j, RX(2*beta) everywhere, measure everything.
Circuit gen_qaoa(uint32_t n, double gamma = 0.35, double beta = 0.45);

struct BenchmarkSpec {
    std::string family;  // ghz | bitcode | tfim | qaoa
    uint32_t size = 0;
    uint32_t rounds = 2;                 // bitcode
    std::vector<uint8_t> initial_bits;   // bitcode; default 0..010..0 pattern
    uint32_t steps = 3;                  // tfim
    double j = 1.0, h = 1.0, dt = 0.2;   // tfim
    double gamma = 0.35, beta = 0.45;    // qaoa

    std::string display_name() const;
};

/// Parses "ghz:6", "bitcode:3", "tfim:3", "qaoa:10".
BenchmarkSpec parse_benchmark(const std::string& text);

Circuit generate(const BenchmarkSpec& spec);

/// One reference evaluation row: benchmark, partition, assignment, and the
/// published circuit metrics to compare against.
struct ReferenceRow {
    BenchmarkSpec bench;
    std::string partition;                 // "q0-q1|q2-q3|q4-q5"
    std::vector<std::string> assignment;   // {"Q0","Q1","Q2"}
    uint32_t ref_data = 0;
    uint32_t ref_comm = 0;
    uint32_t ref_total = 0;
    size_t ref_layout_depth = 0;
    size_t ref_gate_count = 0;
    bool simulatable = true;  // desk-scale statevector check feasible

    PartitionPlan plan() const;
};

/// The twelve evaluation configurations.
const std::vector<ReferenceRow>& reference_rows();

}  // namespace dqc
