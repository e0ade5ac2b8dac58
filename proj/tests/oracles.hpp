// Test-only reference implementations, kept independent of the passes they
// check: dense unitaries built column-by-column from basis states, a
// brute-force longest-path walk over the explicit dependency DAG, and seeded
// random circuit generators.
#pragma once

#include "dqc/circuit.hpp"
#include "dqc/dag.hpp"
#include "dqc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace dqc::test {

using Unitary = std::vector<std::vector<Amplitude>>;  // [row][col]

/// Dense unitary of a measurement-free circuit (columns = images of basis
/// states), little-endian index convention.
inline Unitary circuit_unitary(const Circuit& circuit) {
    const size_t dim = size_t{1} << circuit.num_qubits();
    Unitary u(dim, std::vector<Amplitude>(dim, 0.0));
    for (size_t col = 0; col < dim; ++col) {
        StateVector state(circuit.num_qubits());
        state.amplitudes().assign(dim, 0.0);
        state.amplitudes()[col] = 1.0;
        ClassicalStore classical(circuit.num_clbits());
        Rng rng(0);
        for (const Instruction& instr : circuit.instructions()) {
            if (instr.kind == GateKind::Barrier) continue;
            apply(state, instr, classical, rng);
        }
        for (size_t row = 0; row < dim; ++row) u[row][col] = state.amplitudes()[row];
    }
    return u;
}

/// Max entrywise deviation between u and v after aligning global phase.
inline double unitary_distance_up_to_phase(const Unitary& u, const Unitary& v) {
    const size_t dim = u.size();
    // Align on the largest entry of u.
    size_t br = 0, bc = 0;
    double best = -1.0;
    for (size_t r = 0; r < dim; ++r) {
        for (size_t c = 0; c < dim; ++c) {
            if (std::abs(u[r][c]) > best) {
                best = std::abs(u[r][c]);
                br = r;
                bc = c;
            }
        }
    }
    if (best <= 0.0 || std::abs(v[br][bc]) == 0.0) return 1e9;
    const Amplitude phase = (u[br][bc] / std::abs(u[br][bc])) /
                            (v[br][bc] / std::abs(v[br][bc]));
    double dist = 0.0;
    for (size_t r = 0; r < dim; ++r) {
        for (size_t c = 0; c < dim; ++c) {
            dist = std::max(dist, std::abs(u[r][c] - v[r][c] * phase));
        }
    }
    return dist;
}

/// Max amplitude deviation between two states after phase alignment.
inline double state_distance_up_to_phase(const std::vector<Amplitude>& a,
                                         const std::vector<Amplitude>& b) {
    size_t bi = 0;
    double best = -1.0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i]) > best) {
            best = std::abs(a[i]);
            bi = i;
        }
    }
    if (best <= 0.0 || std::abs(b[bi]) == 0.0) return 1e9;
    const Amplitude phase = (a[bi] / std::abs(a[bi])) / (b[bi] / std::abs(b[bi]));
    double dist = 0.0;
    for (size_t i = 0; i < a.size(); ++i) dist = std::max(dist, std::abs(a[i] - b[i] * phase));
    return dist;
}

/// Longest weighted path over the explicit DAG, by memoized recursion.
/// Barrier nodes weigh 0, everything else 1.
inline size_t brute_force_depth(const Circuit& circuit) {
    const CircuitDag dag = to_dag(circuit);
    const size_t n = dag.nodes.size();
    std::vector<std::vector<uint32_t>> preds(n);
    for (auto [from, to] : dag.edges) preds[to].push_back(from);
    std::vector<int64_t> memo(n, -1);
    auto longest = [&](auto&& self, uint32_t node) -> int64_t {
        if (memo[node] >= 0) return memo[node];
        int64_t best = 0;
        for (uint32_t p : preds[node]) best = std::max(best, self(self, p));
        const int64_t weight = dag.nodes[node].kind == GateKind::Barrier ? 0 : 1;
        return memo[node] = best + weight;
    };
    size_t result = 0;
    for (uint32_t i = 0; i < n; ++i) {
        result = std::max<size_t>(result, static_cast<size_t>(longest(longest, i)));
    }
    return result;
}

struct RandomCircuitOptions {
    uint32_t num_qubits = 4;
    uint32_t num_clbits = 0;
    size_t num_instructions = 20;
    bool unitary_only = true;   // no Measure/Reset/Barrier
    bool with_conditions = false;
};

inline Circuit random_circuit(std::mt19937_64& rng, const RandomCircuitOptions& opt) {
    Circuit c(opt.num_qubits, opt.num_clbits);
    std::vector<GateKind> kinds = {GateKind::H,  GateKind::X,   GateKind::Y,  GateKind::Z,
                                   GateKind::S,  GateKind::Sdg, GateKind::T,  GateKind::Tdg,
                                   GateKind::SX, GateKind::RX,  GateKind::RY, GateKind::RZ};
    if (opt.num_qubits >= 2) {
        kinds.push_back(GateKind::CX);
        kinds.push_back(GateKind::CZ);
        kinds.push_back(GateKind::Swap);
    }
    if (opt.num_qubits >= 3) kinds.push_back(GateKind::CCX);
    if (!opt.unitary_only) {
        kinds.push_back(GateKind::Measure);
        kinds.push_back(GateKind::Reset);
        kinds.push_back(GateKind::Barrier);
    }
    std::uniform_int_distribution<size_t> pick_kind(0, kinds.size() - 1);
    std::uniform_real_distribution<double> pick_angle(-3.5, 3.5);
    for (size_t i = 0; i < opt.num_instructions; ++i) {
        const GateKind kind = kinds[pick_kind(rng)];
        const int arity = gate_arity(kind);
        if (kind == GateKind::Measure && opt.num_clbits == 0) continue;
        std::vector<uint32_t> qubits(opt.num_qubits);
        std::iota(qubits.begin(), qubits.end(), 0u);
        std::shuffle(qubits.begin(), qubits.end(), rng);
        Instruction instr;
        instr.kind = kind;
        if (arity < 0) {
            instr.qubits = {qubits[0]};  // single-qubit barrier
        } else {
            instr.qubits.assign(qubits.begin(), qubits.begin() + arity);
        }
        if (is_rotation(kind)) instr.angle = pick_angle(rng);
        if (kind == GateKind::Measure) {
            instr.clbits = {static_cast<uint32_t>(rng() % opt.num_clbits)};
        }
        if (opt.with_conditions && opt.num_clbits > 0 && is_unitary_gate(kind) && rng() % 8 == 0) {
            instr.condition = Condition{static_cast<uint32_t>(rng() % opt.num_clbits),
                                        static_cast<uint8_t>(rng() % 2)};
        }
        c.append(std::move(instr));
    }
    return c;
}

}  // namespace dqc::test
