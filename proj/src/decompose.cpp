#include "dqc/decompose.hpp"

#include "dqc/errors.hpp"

namespace dqc {

namespace {

Instruction gate_on(GateKind kind, std::vector<uint32_t> qubits,
                    const std::optional<Condition>& condition) {
    Instruction instr;
    instr.kind = kind;
    instr.qubits = std::move(qubits);
    instr.condition = condition;
    return instr;
}

void emit_cz(Circuit& out, const Instruction& instr) {
    const uint32_t a = instr.qubits[0], b = instr.qubits[1];
    out.append(gate_on(GateKind::H, {b}, instr.condition));
    out.append(gate_on(GateKind::CX, {a, b}, instr.condition));
    out.append(gate_on(GateKind::H, {b}, instr.condition));
}

void emit_swap(Circuit& out, const Instruction& instr) {
    const uint32_t a = instr.qubits[0], b = instr.qubits[1];
    out.append(gate_on(GateKind::CX, {a, b}, instr.condition));
    out.append(gate_on(GateKind::CX, {b, a}, instr.condition));
    out.append(gate_on(GateKind::CX, {a, b}, instr.condition));
}

// Textbook 6-CX form: 2 H, 7 T/Tdg, 6 CX.
void emit_ccx(Circuit& out, const Instruction& instr) {
    const uint32_t a = instr.qubits[0], b = instr.qubits[1], t = instr.qubits[2];
    const auto& cond = instr.condition;
    out.append(gate_on(GateKind::H, {t}, cond));
    out.append(gate_on(GateKind::CX, {b, t}, cond));
    out.append(gate_on(GateKind::Tdg, {t}, cond));
    out.append(gate_on(GateKind::CX, {a, t}, cond));
    out.append(gate_on(GateKind::T, {t}, cond));
    out.append(gate_on(GateKind::CX, {b, t}, cond));
    out.append(gate_on(GateKind::Tdg, {t}, cond));
    out.append(gate_on(GateKind::CX, {a, t}, cond));
    out.append(gate_on(GateKind::T, {b}, cond));
    out.append(gate_on(GateKind::T, {t}, cond));
    out.append(gate_on(GateKind::H, {t}, cond));
    out.append(gate_on(GateKind::CX, {a, b}, cond));
    out.append(gate_on(GateKind::T, {a}, cond));
    out.append(gate_on(GateKind::Tdg, {b}, cond));
    out.append(gate_on(GateKind::CX, {a, b}, cond));
}

}  // namespace

Circuit decompose_multiqubit(const Circuit& circuit, const std::set<GateKind>& keep) {
    if (!keep.count(GateKind::CX)) {
        throw DecompositionError("decompose_multiqubit requires CX in the kept set");
    }
    Circuit out(circuit.num_qubits(), circuit.num_clbits());
    out.set_qubit_labels(circuit.qubit_labels());
    for (const Instruction& instr : circuit.instructions()) {
        if (keep.count(instr.kind) || gate_arity(instr.kind) <= 1 ||
            instr.kind == GateKind::CX || instr.kind == GateKind::Barrier ||
            instr.kind == GateKind::RemotePlaceholder) {
            out.append(instr);
            continue;
        }
        switch (instr.kind) {
            case GateKind::CZ: emit_cz(out, instr); break;
            case GateKind::Swap: emit_swap(out, instr); break;
            case GateKind::CCX: emit_ccx(out, instr); break;
            default:
                throw DecompositionError(std::string("no decomposition rule for '") +
                                         gate_name(instr.kind) + "'");
        }
    }
    return out;
}

}  // namespace dqc
