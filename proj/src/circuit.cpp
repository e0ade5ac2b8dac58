#include "dqc/circuit.hpp"

#include "dqc/errors.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace dqc {

namespace {

std::string describe(const Instruction& instr) {
    std::string s = gate_name(instr.kind);
    for (uint32_t q : instr.qubits) s += " q" + std::to_string(q);
    return s;
}

}  // namespace

void Circuit::append(Instruction instr) {
    const int arity = gate_arity(instr.kind);
    if (arity >= 0 && instr.qubits.size() != static_cast<size_t>(arity)) {
        throw ValidationError("operand count mismatch for '" + describe(instr) + "': expected " +
                              std::to_string(arity) + ", got " + std::to_string(instr.qubits.size()));
    }
    if (instr.kind == GateKind::RemotePlaceholder &&
        (instr.qubits.empty() || instr.qubits.size() > 2)) {
        throw ValidationError("remote placeholder must touch 1 or 2 qubits");
    }
    std::set<uint32_t> seen;
    for (uint32_t q : instr.qubits) {
        if (q >= num_qubits_) {
            throw ValidationError("qubit index " + std::to_string(q) + " out of range for '" +
                                  describe(instr) + "' (circuit has " + std::to_string(num_qubits_) +
                                  " qubits)");
        }
        if (!seen.insert(q).second) {
            throw ValidationError("duplicate qubit index " + std::to_string(q) + " in '" +
                                  describe(instr) + "'");
        }
    }
    const size_t want_clbits = instr.kind == GateKind::Measure ? 1 : 0;
    if (instr.clbits.size() != want_clbits) {
        throw ValidationError("classical operand count mismatch for '" + describe(instr) + "'");
    }
    for (uint32_t c : instr.clbits) {
        if (c >= num_clbits_) {
            throw ValidationError("classical bit index " + std::to_string(c) + " out of range");
        }
    }
    if (instr.condition) {
        if (!is_unitary_gate(instr.kind)) {
            throw ValidationError("condition not allowed on '" + describe(instr) + "'");
        }
        if (instr.condition->bit >= num_clbits_) {
            throw ValidationError("condition bit " + std::to_string(instr.condition->bit) +
                                  " out of range");
        }
        if (instr.condition->value > 1) {
            throw ValidationError("condition value must be 0 or 1");
        }
    }
    if (is_rotation(instr.kind) && !std::isfinite(instr.angle)) {
        throw ValidationError("non-finite rotation angle");
    }
    if (instr.kind == GateKind::RemotePlaceholder && instr.remote_id < 0) {
        throw ValidationError("remote placeholder requires an id");
    }
    instructions_.push_back(std::move(instr));
}

void Circuit::append_gate(GateKind kind, std::vector<uint32_t> qubits, double angle) {
    Instruction instr;
    instr.kind = kind;
    instr.qubits = std::move(qubits);
    instr.angle = angle;
    append(std::move(instr));
}

void Circuit::measure(uint32_t q, uint32_t c) {
    Instruction instr;
    instr.kind = GateKind::Measure;
    instr.qubits = {q};
    instr.clbits = {c};
    append(std::move(instr));
}

void Circuit::barrier(std::vector<uint32_t> qubits) {
    if (qubits.empty()) {
        qubits.resize(num_qubits_);
        std::iota(qubits.begin(), qubits.end(), 0u);
    }
    Instruction instr;
    instr.kind = GateKind::Barrier;
    instr.qubits = std::move(qubits);
    append(std::move(instr));
}

}  // namespace dqc
