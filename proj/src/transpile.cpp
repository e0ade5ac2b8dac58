#include "dqc/transpile.hpp"

#include "dqc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>

namespace dqc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroAngleEps = 1e-12;

bool is_comm_wire(uint32_t wire, const RouteOptions& opt) {
    return opt.num_data != 0 && wire >= opt.num_data && wire < opt.num_data + opt.num_comm;
}

}  // namespace

QubitMap QubitMap::identity(uint32_t n) {
    QubitMap map;
    map.logical_to_physical_.resize(n);
    map.physical_to_logical_.resize(n);
    std::iota(map.logical_to_physical_.begin(), map.logical_to_physical_.end(), 0u);
    std::iota(map.physical_to_logical_.begin(), map.physical_to_logical_.end(), 0u);
    return map;
}

void QubitMap::swap_physical(uint32_t p1, uint32_t p2) {
    const uint32_t l1 = physical_to_logical_.at(p1);
    const uint32_t l2 = physical_to_logical_.at(p2);
    std::swap(physical_to_logical_[p1], physical_to_logical_[p2]);
    std::swap(logical_to_physical_[l1], logical_to_physical_[l2]);
}

RouteResult route(const Circuit& sub, const BackendSpec& spec, const QubitMap& initial,
                  const RouteOptions& options) {
    const uint32_t num_data = options.num_data == 0 ? sub.num_qubits() : options.num_data;
    RouteOptions opt = options;
    opt.num_data = num_data;
    if (num_data > spec.num_qubits) {
        throw CapacityError("subcircuit has " + std::to_string(num_data) +
                            " data qubits but backend '" + spec.name + "' has " +
                            std::to_string(spec.num_qubits));
    }

    // Device nodes reserved for communication wires are off-limits to routing.
    std::vector<bool> available(spec.num_qubits, true);
    for (uint32_t w = num_data; w < std::min(num_data + opt.num_comm, spec.num_qubits); ++w) {
        available[w] = false;
    }
    std::vector<std::vector<uint32_t>> adj(spec.num_qubits);
    for (auto [a, b] : spec.coupling) {
        if (available[a] && available[b]) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    }
    for (auto& neighbors : adj) std::sort(neighbors.begin(), neighbors.end());

    QubitMap map = initial;
    if (map.size() == 0) map = QubitMap::identity(spec.num_qubits);
    if (map.size() != spec.num_qubits) {
        throw RoutingError("initial map covers " + std::to_string(map.size()) +
                           " qubits, device has " + std::to_string(spec.num_qubits));
    }

    const uint32_t out_width = std::max(spec.num_qubits, num_data + opt.num_comm);
    Circuit out(out_width, sub.num_clbits());

    auto shortest_path = [&](uint32_t from, uint32_t to) {
        std::vector<int32_t> dist(spec.num_qubits, -1);
        std::queue<uint32_t> frontier;
        dist[to] = 0;
        frontier.push(to);
        while (!frontier.empty()) {
            const uint32_t v = frontier.front();
            frontier.pop();
            for (uint32_t w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    frontier.push(w);
                }
            }
        }
        if (dist[from] < 0) {
            throw RoutingError("no routing path between device qubits " + std::to_string(from) +
                               " and " + std::to_string(to) + " on backend '" + spec.name +
                               "' (communication wires reserve part of the device)");
        }
        std::vector<uint32_t> path{from};
        uint32_t cur = from;
        while (cur != to) {
            // Lowest-index neighbor strictly closer to the target.
            for (uint32_t w : adj[cur]) {
                if (dist[w] == dist[cur] - 1) {
                    cur = w;
                    break;
                }
            }
            path.push_back(cur);
        }
        return path;
    };

    for (const Instruction& instr : sub.instructions()) {
        Instruction mapped = instr;
        bool exempt = instr.kind == GateKind::RemotePlaceholder;
        for (uint32_t q : instr.qubits) exempt = exempt || is_comm_wire(q, opt);

        for (uint32_t& q : mapped.qubits) {
            if (!is_comm_wire(q, opt)) q = map.physical(q);
        }

        if (!exempt && mapped.qubits.size() == 2 && instr.kind != GateKind::Barrier) {
            uint32_t p1 = mapped.qubits[0];
            uint32_t p2 = mapped.qubits[1];
            if (!spec.has_edge(p1, p2)) {
                const std::vector<uint32_t> path = shortest_path(p1, p2);
                for (size_t i = 0; i + 2 < path.size(); ++i) {
                    Instruction swap_instr;
                    swap_instr.kind = GateKind::Swap;
                    swap_instr.qubits = {path[i], path[i + 1]};
                    out.append(std::move(swap_instr));
                    map.swap_physical(path[i], path[i + 1]);
                }
                mapped.qubits[0] = path[path.size() - 2];
                mapped.qubits[1] = p2;
            }
        }
        out.append(std::move(mapped));
    }
    return {std::move(out), std::move(map)};
}

namespace {

enum class BasisFlavor { ZSX, ZRX };

Instruction gate1(GateKind kind, uint32_t q, const std::optional<Condition>& cond,
                  double angle = 0.0) {
    Instruction instr;
    instr.kind = kind;
    instr.qubits = {q};
    instr.angle = angle;
    instr.condition = cond;
    return instr;
}

void emit_translated(Circuit& out, const Instruction& instr, const std::set<GateKind>& basis,
                     BasisFlavor flavor) {
    const uint32_t q = instr.qubits[0];
    const auto& cond = instr.condition;
    auto rz = [&](double a) { out.append(gate1(GateKind::RZ, q, cond, a)); };
    auto sx = [&]() { out.append(gate1(GateKind::SX, q, cond)); };
    auto rxp = [&](double a) { out.append(gate1(GateKind::RX, q, cond, a)); };
    auto emit_x = [&]() {
        if (basis.count(GateKind::X)) {
            out.append(gate1(GateKind::X, q, cond));
        } else if (flavor == BasisFlavor::ZSX) {
            sx();
            sx();
        } else {
            rxp(kPi);
        }
    };

    switch (instr.kind) {
        case GateKind::H:
            if (flavor == BasisFlavor::ZSX) {
                rz(kPi / 2);
                sx();
                rz(kPi / 2);
            } else {
                rz(kPi / 2);
                rxp(kPi / 2);
                rz(kPi / 2);
            }
            return;
        case GateKind::X:
            emit_x();
            return;
        case GateKind::Y:
            rz(kPi);
            emit_x();
            return;
        case GateKind::Z: rz(kPi); return;
        case GateKind::S: rz(kPi / 2); return;
        case GateKind::Sdg: rz(-kPi / 2); return;
        case GateKind::T: rz(kPi / 4); return;
        case GateKind::Tdg: rz(-kPi / 4); return;
        case GateKind::SX:
            if (flavor == BasisFlavor::ZRX) {
                rxp(kPi / 2);
                return;
            }
            break;
        case GateKind::RX:
            if (flavor == BasisFlavor::ZSX) {
                rz(kPi / 2);
                sx();
                rz(instr.angle + kPi);
                sx();
                rz(kPi / 2);
                return;
            }
            break;
        case GateKind::RY:
            if (flavor == BasisFlavor::ZSX) {
                sx();
                rz(instr.angle + kPi);
                sx();
                rz(kPi);
            } else {
                rz(-kPi / 2);
                rxp(instr.angle);
                rz(kPi / 2);
            }
            return;
        default:
            break;
    }
    throw TranslationError(std::string("no translation rule for '") + gate_name(instr.kind) +
                           "' into the target basis");
}

}  // namespace

Circuit translate_basis(const Circuit& sub, const std::set<GateKind>& basis) {
    if (!basis.count(GateKind::CX) || !basis.count(GateKind::RZ)) {
        throw TranslationError("target basis must contain cx and rz");
    }
    BasisFlavor flavor;
    if (basis.count(GateKind::SX)) {
        flavor = BasisFlavor::ZSX;
    } else if (basis.count(GateKind::RX)) {
        flavor = BasisFlavor::ZRX;
    } else {
        throw TranslationError("target basis must contain sx or rx");
    }

    Circuit out(sub.num_qubits(), sub.num_clbits());
    for (const Instruction& instr : sub.instructions()) {
        switch (instr.kind) {
            case GateKind::Measure:
            case GateKind::Reset:
            case GateKind::Barrier:
            case GateKind::RemotePlaceholder:
                out.append(instr);
                continue;
            case GateKind::CZ:
            case GateKind::CCX:
                throw TranslationError(std::string("'") + gate_name(instr.kind) +
                                       "' must be lowered before basis translation");
            case GateKind::Swap:
                if (!basis.count(GateKind::Swap)) {
                    Instruction cx_instr;
                    cx_instr.kind = GateKind::CX;
                    cx_instr.condition = instr.condition;
                    cx_instr.qubits = {instr.qubits[0], instr.qubits[1]};
                    out.append(cx_instr);
                    cx_instr.qubits = {instr.qubits[1], instr.qubits[0]};
                    out.append(cx_instr);
                    cx_instr.qubits = {instr.qubits[0], instr.qubits[1]};
                    out.append(cx_instr);
                    continue;
                }
                out.append(instr);
                continue;
            default:
                break;
        }
        if (basis.count(instr.kind)) {
            out.append(instr);
            continue;
        }
        emit_translated(out, instr, basis, flavor);
    }
    return out;
}

Circuit optimize_1q(const Circuit& sub) {
    std::vector<Instruction> out;
    std::vector<bool> dead;
    // Per-qubit stack of indices into `out` holding merge candidates.
    std::vector<std::vector<size_t>> chain(sub.num_qubits());

    auto is_self_inverse = [](GateKind kind) {
        return kind == GateKind::X || kind == GateKind::Y || kind == GateKind::Z ||
               kind == GateKind::H;
    };

    for (const Instruction& instr : sub.instructions()) {
        const bool candidate = is_single_qubit_unitary(instr.kind) && !instr.condition;
        if (!candidate) {
            for (uint32_t q : instr.qubits) chain[q].clear();
            out.push_back(instr);
            dead.push_back(false);
            continue;
        }
        const uint32_t q = instr.qubits[0];
        if (is_rotation(instr.kind) && std::abs(instr.angle) < kZeroAngleEps) {
            continue;  // identity rotation
        }
        if (!chain[q].empty()) {
            Instruction& top = out[chain[q].back()];
            if (top.kind == GateKind::RZ && instr.kind == GateKind::RZ) {
                top.angle += instr.angle;
                if (std::abs(top.angle) < kZeroAngleEps) {
                    dead[chain[q].back()] = true;
                    chain[q].pop_back();
                }
                continue;
            }
            if (top.kind == instr.kind && is_self_inverse(instr.kind)) {
                dead[chain[q].back()] = true;
                chain[q].pop_back();
                continue;
            }
        }
        chain[q].push_back(out.size());
        out.push_back(instr);
        dead.push_back(false);
    }

    Circuit result(sub.num_qubits(), sub.num_clbits());
    for (size_t i = 0; i < out.size(); ++i) {
        if (!dead[i]) result.append(std::move(out[i]));
    }
    return result;
}

CompiledSubcircuit compile_subcircuit(const Circuit& sub, const BackendSpec& spec,
                                      const CompileOptions& options) {
    for (const Instruction& instr : sub.instructions()) {
        if (instr.kind == GateKind::RemotePlaceholder && !instr.anchored) {
            throw CompileError("placeholders must be frozen before backend compilation");
        }
    }
    RouteOptions route_opt;
    route_opt.num_data = options.num_data;
    route_opt.num_comm = options.num_comm;
    RouteResult routed = route(sub, spec, QubitMap(), route_opt);
    Circuit translated = translate_basis(routed.circuit, spec.basis_gates);
    Circuit final_circuit = options.optimize ? optimize_1q(translated) : std::move(translated);

    CompiledSubcircuit compiled;
    compiled.backend = spec.name;
    compiled.final_map = std::move(routed.final_map);
    compiled.num_data = options.num_data == 0 ? sub.num_qubits() : options.num_data;
    compiled.num_comm = options.num_comm;
    for (size_t i = 0; i < final_circuit.instructions().size(); ++i) {
        const Instruction& instr = final_circuit.instructions()[i];
        if (instr.kind == GateKind::RemotePlaceholder) {
            if (compiled.placeholder_positions.count(instr.remote_id)) {
                throw CompileError("duplicate placeholder id " + std::to_string(instr.remote_id) +
                                   " in one subcircuit");
            }
            compiled.placeholder_positions[instr.remote_id] = {i, instr.qubits[0]};
        }
    }
    compiled.circuit = std::move(final_circuit);
    return compiled;
}

void check_conformance(const CompiledSubcircuit& compiled, const BackendSpec& spec) {
    const RouteOptions opt{compiled.num_data, compiled.num_comm};
    for (const Instruction& instr : compiled.circuit.instructions()) {
        switch (instr.kind) {
            case GateKind::Measure:
            case GateKind::Reset:
            case GateKind::Barrier:
            case GateKind::RemotePlaceholder:
                continue;
            default:
                break;
        }
        if (!spec.in_basis(instr.kind)) {
            throw CompileError(std::string("gate '") + gate_name(instr.kind) +
                               "' is not native to backend '" + spec.name + "'");
        }
        if (instr.qubits.size() == 2) {
            bool exempt = false;
            for (uint32_t q : instr.qubits) exempt = exempt || is_comm_wire(q, opt);
            if (!exempt && !spec.has_edge(instr.qubits[0], instr.qubits[1])) {
                throw CompileError("two-qubit gate on (" + std::to_string(instr.qubits[0]) + "," +
                                   std::to_string(instr.qubits[1]) +
                                   ") is not on a coupling edge of '" + spec.name + "'");
            }
        }
    }
}

}  // namespace dqc
