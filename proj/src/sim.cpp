#include "dqc/sim.hpp"

#include "dqc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <thread>

namespace dqc {

namespace {

constexpr double kCollapseEps = 1e-12;

uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(uint64_t seed) : state_(seed) {
    // Warm up so nearby seeds decorrelate.
    splitmix64(state_);
    splitmix64(state_);
}

Rng Rng::for_shot(uint64_t seed, uint64_t shot_index) {
    uint64_t s = seed;
    uint64_t mixed = splitmix64(s) ^ (shot_index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    return Rng(mixed);
}

double Rng::uniform() {
    return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
}

Mat2 gate_matrix_1q(GateKind kind, double angle) {
    using namespace std::complex_literals;
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    switch (kind) {
        case GateKind::H: return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
        case GateKind::X: return {0, 1, 1, 0};
        case GateKind::Y: return {0, -1i, 1i, 0};
        case GateKind::Z: return {1, 0, 0, -1};
        case GateKind::S: return {1, 0, 0, 1i};
        case GateKind::Sdg: return {1, 0, 0, -1i};
        case GateKind::T: return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
        case GateKind::Tdg: return {1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)};
        case GateKind::SX:
            return {0.5 + 0.5i, 0.5 - 0.5i, 0.5 - 0.5i, 0.5 + 0.5i};
        case GateKind::RX: return {c, -1i * s, -1i * s, c};
        case GateKind::RY: return {c, -s, s, c};
        case GateKind::RZ:
            return {std::polar(1.0, -angle / 2.0), 0, 0, std::polar(1.0, angle / 2.0)};
        default:
            throw SimulationError(std::string("no single-qubit matrix for '") + gate_name(kind) +
                                  "'");
    }
}

StateVector::StateVector(uint32_t num_qubits) : num_qubits_(num_qubits) {
    amp_.assign(size_t{1} << num_qubits, 0.0);
    amp_[0] = 1.0;
}

void StateVector::apply_1q(uint32_t q, const Mat2& m) {
    const size_t stride = size_t{1} << q;
    const size_t n = amp_.size();
    for (size_t base = 0; base < n; base += 2 * stride) {
        for (size_t i = base; i < base + stride; ++i) {
            const Amplitude a0 = amp_[i];
            const Amplitude a1 = amp_[i + stride];
            amp_[i] = m[0] * a0 + m[1] * a1;
            amp_[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void StateVector::apply_cx(uint32_t control, uint32_t target) {
    const size_t cbit = size_t{1} << control;
    const size_t tbit = size_t{1} << target;
    const size_t n = amp_.size();
    for (size_t i = 0; i < n; ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amp_[i], amp_[i | tbit]);
    }
}

void StateVector::apply_cz(uint32_t a, uint32_t b) {
    const size_t abit = size_t{1} << a;
    const size_t bbit = size_t{1} << b;
    const size_t n = amp_.size();
    for (size_t i = 0; i < n; ++i) {
        if ((i & abit) && (i & bbit)) amp_[i] = -amp_[i];
    }
}

void StateVector::apply_swap(uint32_t a, uint32_t b) {
    const size_t abit = size_t{1} << a;
    const size_t bbit = size_t{1} << b;
    const size_t n = amp_.size();
    for (size_t i = 0; i < n; ++i) {
        if ((i & abit) && !(i & bbit)) std::swap(amp_[i], amp_[(i & ~abit) | bbit]);
    }
}

void StateVector::apply_ccx(uint32_t c1, uint32_t c2, uint32_t target) {
    const size_t m1 = size_t{1} << c1;
    const size_t m2 = size_t{1} << c2;
    const size_t tbit = size_t{1} << target;
    const size_t n = amp_.size();
    for (size_t i = 0; i < n; ++i) {
        if ((i & m1) && (i & m2) && !(i & tbit)) std::swap(amp_[i], amp_[i | tbit]);
    }
}

double StateVector::prob_one(uint32_t q) const {
    const size_t qbit = size_t{1} << q;
    double p = 0.0;
    for (size_t i = 0; i < amp_.size(); ++i) {
        if (i & qbit) p += std::norm(amp_[i]);
    }
    return p;
}

double StateVector::collapse(uint32_t q, int outcome) {
    const size_t qbit = size_t{1} << q;
    const double p1 = prob_one(q);
    const double p = outcome ? p1 : 1.0 - p1;
    if (p < kCollapseEps) {
        amp_.assign(amp_.size(), 0.0);
        amp_[0] = 1.0;
        return 0.0;
    }
    const double scale = 1.0 / std::sqrt(p);
    for (size_t i = 0; i < amp_.size(); ++i) {
        const bool one = (i & qbit) != 0;
        if (one == (outcome != 0)) {
            amp_[i] *= scale;
        } else {
            amp_[i] = 0.0;
        }
    }
    return p;
}

double StateVector::norm() const {
    double n = 0.0;
    for (const Amplitude& a : amp_) n += std::norm(a);
    return std::sqrt(n);
}

void apply(StateVector& state, const Instruction& instr, ClassicalStore& classical, Rng& rng,
           std::optional<int> forced_outcome) {
    for (uint32_t q : instr.qubits) {
        if (q >= state.num_qubits()) throw SimulationError("qubit index out of range");
    }
    if (instr.condition && !classical.test(*instr.condition)) return;
    switch (instr.kind) {
        case GateKind::Barrier:
            return;
        case GateKind::RemotePlaceholder:
            throw SimulationError("cannot simulate a remote placeholder");
        case GateKind::CX:
            state.apply_cx(instr.qubits[0], instr.qubits[1]);
            return;
        case GateKind::CZ:
            state.apply_cz(instr.qubits[0], instr.qubits[1]);
            return;
        case GateKind::Swap:
            state.apply_swap(instr.qubits[0], instr.qubits[1]);
            return;
        case GateKind::CCX:
            state.apply_ccx(instr.qubits[0], instr.qubits[1], instr.qubits[2]);
            return;
        case GateKind::Measure: {
            const uint32_t q = instr.qubits[0];
            int outcome;
            if (forced_outcome) {
                outcome = *forced_outcome;
            } else {
                outcome = rng.uniform() < state.prob_one(q) ? 1 : 0;
            }
            state.collapse(q, outcome);
            classical.bits.at(instr.clbits[0]) = static_cast<uint8_t>(outcome);
            return;
        }
        case GateKind::Reset: {
            const uint32_t q = instr.qubits[0];
            const int outcome = rng.uniform() < state.prob_one(q) ? 1 : 0;
            state.collapse(q, outcome);
            if (outcome) state.apply_1q(q, gate_matrix_1q(GateKind::X));
            return;
        }
        default:
            state.apply_1q(instr.qubits[0], gate_matrix_1q(instr.kind, instr.angle));
            return;
    }
}

namespace {

/// Statevector over the subset of wires that are currently live. Wires grow
/// in on first touch (in |0>) and are dropped again right after a Reset,
/// which is exact because a freshly reset wire is in a |0> product state.
/// This keeps wide layouts cheap: idle communication wires cost nothing.
class LazyRegister {
public:
    explicit LazyRegister(uint32_t num_wires) : slot_of_(num_wires, -1) { amp_ = {1.0}; }

    uint32_t live_count() const { return static_cast<uint32_t>(slot_wires_.size()); }

    uint32_t slot(uint32_t wire) {
        int32_t s = slot_of_.at(wire);
        if (s < 0) {
            s = static_cast<int32_t>(slot_wires_.size());
            slot_of_[wire] = s;
            slot_wires_.push_back(wire);
            amp_.resize(amp_.size() * 2, 0.0);  // new most-significant bit = 0
        }
        return static_cast<uint32_t>(s);
    }

    void apply_1q(uint32_t wire, const Mat2& m) {
        const size_t stride = size_t{1} << slot(wire);
        for (size_t base = 0; base < amp_.size(); base += 2 * stride) {
            for (size_t i = base; i < base + stride; ++i) {
                const Amplitude a0 = amp_[i];
                const Amplitude a1 = amp_[i + stride];
                amp_[i] = m[0] * a0 + m[1] * a1;
                amp_[i + stride] = m[2] * a0 + m[3] * a1;
            }
        }
    }

    void apply_cx(uint32_t cw, uint32_t tw) {
        const size_t cbit = size_t{1} << slot(cw);
        const size_t tbit = size_t{1} << slot(tw);
        for (size_t i = 0; i < amp_.size(); ++i) {
            if ((i & cbit) && !(i & tbit)) std::swap(amp_[i], amp_[i | tbit]);
        }
    }

    void apply_cz(uint32_t aw, uint32_t bw) {
        const size_t abit = size_t{1} << slot(aw);
        const size_t bbit = size_t{1} << slot(bw);
        for (size_t i = 0; i < amp_.size(); ++i) {
            if ((i & abit) && (i & bbit)) amp_[i] = -amp_[i];
        }
    }

    void apply_swap(uint32_t aw, uint32_t bw) {
        const size_t abit = size_t{1} << slot(aw);
        const size_t bbit = size_t{1} << slot(bw);
        for (size_t i = 0; i < amp_.size(); ++i) {
            if ((i & abit) && !(i & bbit)) std::swap(amp_[i], amp_[(i & ~abit) | bbit]);
        }
    }

    void apply_ccx(uint32_t c1w, uint32_t c2w, uint32_t tw) {
        const size_t m1 = size_t{1} << slot(c1w);
        const size_t m2 = size_t{1} << slot(c2w);
        const size_t tbit = size_t{1} << slot(tw);
        for (size_t i = 0; i < amp_.size(); ++i) {
            if ((i & m1) && (i & m2) && !(i & tbit)) std::swap(amp_[i], amp_[i | tbit]);
        }
    }

    double prob_one(uint32_t wire) {
        const size_t qbit = size_t{1} << slot(wire);
        double p = 0.0;
        for (size_t i = 0; i < amp_.size(); ++i) {
            if (i & qbit) p += std::norm(amp_[i]);
        }
        return p;
    }

    /// Collapse + renormalize; returns the probability of the outcome.
    double collapse(uint32_t wire, int outcome) {
        const size_t qbit = size_t{1} << slot(wire);
        const double p1 = prob_one(wire);
        const double p = outcome ? p1 : 1.0 - p1;
        if (p < kCollapseEps) {
            amp_.assign(amp_.size(), 0.0);
            amp_[0] = 1.0;
            return 0.0;
        }
        const double scale = 1.0 / std::sqrt(p);
        for (size_t i = 0; i < amp_.size(); ++i) {
            const bool one = (i & qbit) != 0;
            if (one == (outcome != 0)) {
                amp_[i] *= scale;
            } else {
                amp_[i] = 0.0;
            }
        }
        return p;
    }

    /// Removes a wire known to be in |0>.
    void drop(uint32_t wire) {
        const int32_t s = slot_of_.at(wire);
        if (s < 0) return;
        const size_t sbit = size_t{1} << s;
        const size_t low_mask = sbit - 1;
        std::vector<Amplitude> next(amp_.size() / 2);
        for (size_t i = 0; i < amp_.size(); ++i) {
            if (i & sbit) continue;
            next[((i >> (s + 1)) << s) | (i & low_mask)] = amp_[i];
        }
        amp_ = std::move(next);
        slot_wires_.erase(slot_wires_.begin() + s);
        slot_of_[wire] = -1;
        for (size_t t = static_cast<size_t>(s); t < slot_wires_.size(); ++t) {
            slot_of_[slot_wires_[t]] = static_cast<int32_t>(t);
        }
    }

private:
    std::vector<Amplitude> amp_;
    std::vector<uint32_t> slot_wires_;  // slot index -> wire id
    std::vector<int32_t> slot_of_;      // wire id -> slot index or -1
};

void run_unitary_on_register(LazyRegister& reg, const Instruction& instr) {
    switch (instr.kind) {
        case GateKind::CX: reg.apply_cx(instr.qubits[0], instr.qubits[1]); break;
        case GateKind::CZ: reg.apply_cz(instr.qubits[0], instr.qubits[1]); break;
        case GateKind::Swap: reg.apply_swap(instr.qubits[0], instr.qubits[1]); break;
        case GateKind::CCX: reg.apply_ccx(instr.qubits[0], instr.qubits[1], instr.qubits[2]); break;
        default: reg.apply_1q(instr.qubits[0], gate_matrix_1q(instr.kind, instr.angle)); break;
    }
}

std::vector<uint32_t> resolve_key_bits(const Circuit& circuit, const SimOptions& options) {
    std::vector<uint32_t> key = options.key_bits;
    if (key.empty()) {
        key.resize(circuit.num_clbits());
        std::iota(key.begin(), key.end(), 0u);
    }
    for (uint32_t b : key) {
        if (b >= circuit.num_clbits()) throw SimulationError("key bit out of range");
    }
    return key;
}

void check_cap(const Circuit& circuit, const SimOptions& options) {
    if (circuit.num_qubits() > options.qubit_cap) {
        throw SimRefusedError("circuit has " + std::to_string(circuit.num_qubits()) +
                              " qubits, exceeding the simulation cap of " +
                              std::to_string(options.qubit_cap));
    }
}

void run_one_shot(const Circuit& circuit, uint64_t seed, uint64_t shot, ClassicalStore& classical) {
    LazyRegister reg(circuit.num_qubits());
    Rng rng = Rng::for_shot(seed, shot);
    for (const Instruction& instr : circuit.instructions()) {
        if (instr.condition && !classical.test(*instr.condition)) continue;
        switch (instr.kind) {
            case GateKind::Barrier:
                break;
            case GateKind::RemotePlaceholder:
                throw SimulationError("cannot simulate a remote placeholder");
            case GateKind::Measure: {
                const uint32_t w = instr.qubits[0];
                const int outcome = rng.uniform() < reg.prob_one(w) ? 1 : 0;
                reg.collapse(w, outcome);
                classical.bits.at(instr.clbits[0]) = static_cast<uint8_t>(outcome);
                break;
            }
            case GateKind::Reset: {
                const uint32_t w = instr.qubits[0];
                const int outcome = rng.uniform() < reg.prob_one(w) ? 1 : 0;
                reg.collapse(w, outcome);
                if (outcome) reg.apply_1q(w, gate_matrix_1q(GateKind::X));
                reg.drop(w);
                break;
            }
            default:
                run_unitary_on_register(reg, instr);
                break;
        }
    }
}

}  // namespace

std::string bits_to_string(const std::vector<uint8_t>& bits, const std::vector<uint32_t>& key_bits) {
    std::string s;
    s.reserve(key_bits.size());
    for (auto it = key_bits.rbegin(); it != key_bits.rend(); ++it) {
        s.push_back(bits.at(*it) ? '1' : '0');
    }
    return s;
}

Distribution run_shots(const Circuit& circuit, uint64_t shots, uint64_t seed,
                       const SimOptions& options) {
    if (shots == 0) throw SimulationError("shots must be >= 1");
    check_cap(circuit, options);
    const std::vector<uint32_t> key = resolve_key_bits(circuit, options);

    uint32_t threads = options.threads;
    if (threads == 0) {
        threads = std::min<uint32_t>(std::thread::hardware_concurrency(), 8);
        if (threads == 0) threads = 1;
    }
    if (shots < 1024) threads = 1;

    std::vector<std::map<std::string, uint64_t>> partial(threads);
    auto worker = [&](uint32_t t) {
        std::map<std::string, uint64_t>& counts = partial[t];
        for (uint64_t shot = t; shot < shots; shot += threads) {
            ClassicalStore classical(circuit.num_clbits());
            run_one_shot(circuit, seed, shot, classical);
            ++counts[bits_to_string(classical.bits, key)];
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (uint32_t t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    std::map<std::string, uint64_t> counts;
    for (const auto& part : partial) {
        for (const auto& [k, v] : part) counts[k] += v;
    }
    Distribution dist;
    for (const auto& [k, v] : counts) {
        dist[k] = static_cast<double>(v) / static_cast<double>(shots);
    }
    return dist;
}

Distribution ideal_distribution(const Circuit& circuit, const SimOptions& options) {
    check_cap(circuit, options);
    const std::vector<uint32_t> key = resolve_key_bits(circuit, options);
    constexpr size_t kBranchCap = 1u << 16;

    struct Work {
        LazyRegister reg;
        ClassicalStore classical;
        size_t pc;
        double weight;
    };

    Distribution dist;
    size_t branches = 0;
    std::vector<Work> stack;
    stack.push_back({LazyRegister(circuit.num_qubits()), ClassicalStore(circuit.num_clbits()), 0, 1.0});
    const auto& code = circuit.instructions();

    while (!stack.empty()) {
        Work work = std::move(stack.back());
        stack.pop_back();
        for (size_t pc = work.pc; pc < code.size(); ++pc) {
            const Instruction& instr = code[pc];
            if (instr.condition && !work.classical.test(*instr.condition)) continue;
            switch (instr.kind) {
                case GateKind::Barrier:
                    break;
                case GateKind::RemotePlaceholder:
                    throw SimulationError("cannot simulate a remote placeholder");
                case GateKind::Measure:
                case GateKind::Reset: {
                    const uint32_t w = instr.qubits[0];
                    const double p1 = work.reg.prob_one(w);
                    const bool can0 = 1.0 - p1 > kCollapseEps;
                    const bool can1 = p1 > kCollapseEps;
                    if (can0 && can1) {
                        if (++branches > kBranchCap) {
                            throw SimulationError("branch enumeration cap (2^16) exceeded");
                        }
                        Work forked{work.reg, work.classical, pc, work.weight * p1};
                        forked.reg.collapse(w, 1);
                        if (instr.kind == GateKind::Measure) {
                            forked.classical.bits.at(instr.clbits[0]) = 1;
                        } else {
                            forked.reg.apply_1q(w, gate_matrix_1q(GateKind::X));
                            forked.reg.drop(w);
                        }
                        forked.pc = pc + 1;
                        stack.push_back(std::move(forked));
                        work.weight *= 1.0 - p1;
                        work.reg.collapse(w, 0);
                        if (instr.kind == GateKind::Measure) {
                            work.classical.bits.at(instr.clbits[0]) = 0;
                        } else {
                            work.reg.drop(w);
                        }
                    } else {
                        const int outcome = can1 ? 1 : 0;
                        work.reg.collapse(w, outcome);
                        if (instr.kind == GateKind::Measure) {
                            work.classical.bits.at(instr.clbits[0]) = static_cast<uint8_t>(outcome);
                        } else {
                            if (outcome) work.reg.apply_1q(w, gate_matrix_1q(GateKind::X));
                            work.reg.drop(w);
                        }
                    }
                    break;
                }
                default:
                    run_unitary_on_register(work.reg, instr);
                    break;
            }
        }
        dist[bits_to_string(work.classical.bits, key)] += work.weight;
    }
    return dist;
}

double hellinger_fidelity(const Distribution& p, const Distribution& q) {
    double bc = 0.0;
    for (const auto& [key, pv] : p) {
        auto it = q.find(key);
        if (it != q.end() && pv > 0.0 && it->second > 0.0) {
            bc += std::sqrt(pv * it->second);
        }
    }
    return bc * bc;
}

std::vector<Branch> enumerate_branches(const Circuit& circuit) {
    size_t num_measures = 0;
    for (const Instruction& instr : circuit.instructions()) {
        if (instr.kind == GateKind::Measure) ++num_measures;
    }
    if (num_measures > 16) {
        throw SimulationError("branch enumeration supports at most 16 measurements");
    }

    std::vector<Branch> branches;
    branches.reserve(size_t{1} << num_measures);
    for (uint64_t pattern = 0; pattern < (uint64_t{1} << num_measures); ++pattern) {
        Branch branch;
        branch.state = StateVector(circuit.num_qubits());
        branch.classical = ClassicalStore(circuit.num_clbits());
        branch.weight = 1.0;
        size_t measure_index = 0;
        for (const Instruction& instr : circuit.instructions()) {
            if (instr.condition && !branch.classical.test(*instr.condition)) continue;
            if (instr.kind == GateKind::Measure) {
                const int outcome = static_cast<int>((pattern >> measure_index) & 1);
                ++measure_index;
                branch.outcomes.push_back(static_cast<uint8_t>(outcome));
                const uint32_t q = instr.qubits[0];
                const double p1 = branch.state.prob_one(q);
                const double p = outcome ? p1 : 1.0 - p1;
                if (p < kCollapseEps) {
                    branch.weight = 0.0;
                    branch.unreachable = true;
                    branch.state = StateVector(circuit.num_qubits());
                    break;
                }
                branch.weight *= p;
                branch.state.collapse(q, outcome);
                branch.classical.bits.at(instr.clbits[0]) = static_cast<uint8_t>(outcome);
            } else if (instr.kind == GateKind::Reset) {
                const uint32_t q = instr.qubits[0];
                const double p1 = branch.state.prob_one(q);
                if (p1 > kCollapseEps && 1.0 - p1 > kCollapseEps) {
                    throw SimulationError(
                        "reset on a qubit in superposition is not supported in branch enumeration");
                }
                const int outcome = p1 > 0.5 ? 1 : 0;
                branch.state.collapse(q, outcome);
                if (outcome) branch.state.apply_1q(q, gate_matrix_1q(GateKind::X));
            } else if (instr.kind == GateKind::Barrier) {
                continue;
            } else if (instr.kind == GateKind::RemotePlaceholder) {
                throw SimulationError("cannot simulate a remote placeholder");
            } else {
                switch (instr.kind) {
                    case GateKind::CX: branch.state.apply_cx(instr.qubits[0], instr.qubits[1]); break;
                    case GateKind::CZ: branch.state.apply_cz(instr.qubits[0], instr.qubits[1]); break;
                    case GateKind::Swap:
                        branch.state.apply_swap(instr.qubits[0], instr.qubits[1]);
                        break;
                    case GateKind::CCX:
                        branch.state.apply_ccx(instr.qubits[0], instr.qubits[1], instr.qubits[2]);
                        break;
                    default:
                        branch.state.apply_1q(instr.qubits[0],
                                              gate_matrix_1q(instr.kind, instr.angle));
                        break;
                }
            }
        }
        while (branch.outcomes.size() < num_measures) {
            branch.outcomes.push_back(static_cast<uint8_t>((pattern >> branch.outcomes.size()) & 1));
        }
        branches.push_back(std::move(branch));
    }
    return branches;
}

}  // namespace dqc
