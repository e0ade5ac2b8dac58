#pragma once

#include "dqc/circuit.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dqc {

using Amplitude = std::complex<double>;
using Mat2 = std::array<Amplitude, 4>;  // row-major [m00, m01, m10, m11]

/// 2x2 matrix of a single-qubit gate kind.
Mat2 gate_matrix_1q(GateKind kind, double angle = 0.0);

/// Seedable uniform generator. The algorithm is part of the external
/// contract: a splitmix64 stream with uniforms drawn as (next() >> 11) *
/// 2^-53, so sampled distributions are bit-reproducible across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed);
    /// Stream for one shot, decorrelated from the base seed.
    static Rng for_shot(uint64_t seed, uint64_t shot_index);
    double uniform();  // in [0, 1)

private:
    uint64_t state_;
};

/// Dense statevector over a fixed qubit count, little-endian: qubit 0 is the
/// least significant bit of the amplitude index.
class StateVector {
public:
    explicit StateVector(uint32_t num_qubits);

    uint32_t num_qubits() const { return num_qubits_; }
    const std::vector<Amplitude>& amplitudes() const { return amp_; }
    std::vector<Amplitude>& amplitudes() { return amp_; }

    void apply_1q(uint32_t q, const Mat2& m);
    void apply_cx(uint32_t control, uint32_t target);
    void apply_cz(uint32_t a, uint32_t b);
    void apply_swap(uint32_t a, uint32_t b);
    void apply_ccx(uint32_t c1, uint32_t c2, uint32_t target);

    double prob_one(uint32_t q) const;
    /// Collapses qubit q to `outcome` and renormalizes. Returns the Born
    /// probability the outcome had. Collapsing onto a zero-probability
    /// outcome leaves |0...0>.
    double collapse(uint32_t q, int outcome);

    double norm() const;

private:
    uint32_t num_qubits_;
    std::vector<Amplitude> amp_;
};

struct ClassicalStore {
    std::vector<uint8_t> bits;

    explicit ClassicalStore(uint32_t n = 0) : bits(n, 0) {}
    bool test(const Condition& c) const { return bits.at(c.bit) == c.value; }
};

/// Applies one instruction: unitaries act as matrices, Measure collapses via
/// the Born rule (or `forced_outcome`) and records the bit, Reset measures
/// then flips to |0>. Barrier is a no-op; RemotePlaceholder is rejected.
void apply(StateVector& state, const Instruction& instr, ClassicalStore& classical, Rng& rng,
           std::optional<int> forced_outcome = std::nullopt);

/// Map from readout bitstring (most significant qubit first) to probability.
using Distribution = std::map<std::string, double>;

struct SimOptions {
    uint32_t qubit_cap = 24;
    /// Classical bits forming the readout key, ascending; empty = all bits.
    std::vector<uint32_t> key_bits;
    uint32_t threads = 0;  // 0 = pick automatically
};

/// Samples `shots` executions. Deterministic for a fixed (circuit, shots,
/// seed) regardless of thread count: shot i uses Rng::for_shot(seed, i).
Distribution run_shots(const Circuit& circuit, uint64_t shots, uint64_t seed,
                       const SimOptions& options = {});

/// Exact output distribution over the key bits, via weighted enumeration of
/// measurement branches (branch count capped at 2^16).
Distribution ideal_distribution(const Circuit& circuit, const SimOptions& options = {});

/// Hellinger fidelity f = (sum_i sqrt(p_i q_i))^2; missing keys count as 0.
double hellinger_fidelity(const Distribution& p, const Distribution& q);

struct Branch {
    std::vector<uint8_t> outcomes;  // one entry per Measure, in program order
    double weight = 0.0;
    StateVector state{0};
    ClassicalStore classical;
    bool unreachable = false;  // weight 0; state is an arbitrary placeholder
};

/// Runs every forced-outcome combination of the circuit's Measure
/// instructions (at most 16) and returns final states with Born weights.
/// Reset on a qubit in superposition is not supported here.
std::vector<Branch> enumerate_branches(const Circuit& circuit);

/// Formats selected classical bits as a bitstring, most significant bit
/// (highest index) first.
std::string bits_to_string(const std::vector<uint8_t>& bits, const std::vector<uint32_t>& key_bits);

}  // namespace dqc
