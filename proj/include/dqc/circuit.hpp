#pragma once

#include "dqc/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dqc {

/// Ordered instruction list over a flat qubit register and a flat classical
/// register. Instructions are validated on append and the list is
/// immutable-after-construction apart from append.
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(uint32_t num_qubits, uint32_t num_clbits = 0)
        : num_qubits_(num_qubits), num_clbits_(num_clbits) {}

    uint32_t num_qubits() const { return num_qubits_; }
    uint32_t num_clbits() const { return num_clbits_; }

    const std::vector<Instruction>& instructions() const { return instructions_; }
    size_t size() const { return instructions_.size(); }
    bool empty() const { return instructions_.empty(); }

    const std::vector<std::string>& qubit_labels() const { return qubit_labels_; }
    void set_qubit_labels(std::vector<std::string> labels) { qubit_labels_ = std::move(labels); }

    /// Validates operand counts, index ranges, angle finiteness and the
    /// condition rules, then appends. Throws ValidationError.
    void append(Instruction instr);

    // Gate helpers.
    void h(uint32_t q) { append_gate(GateKind::H, {q}); }
    void x(uint32_t q) { append_gate(GateKind::X, {q}); }
    void y(uint32_t q) { append_gate(GateKind::Y, {q}); }
    void z(uint32_t q) { append_gate(GateKind::Z, {q}); }
    void s(uint32_t q) { append_gate(GateKind::S, {q}); }
    void sdg(uint32_t q) { append_gate(GateKind::Sdg, {q}); }
    void t(uint32_t q) { append_gate(GateKind::T, {q}); }
    void tdg(uint32_t q) { append_gate(GateKind::Tdg, {q}); }
    void sx(uint32_t q) { append_gate(GateKind::SX, {q}); }
    void rx(uint32_t q, double angle) { append_gate(GateKind::RX, {q}, angle); }
    void ry(uint32_t q, double angle) { append_gate(GateKind::RY, {q}, angle); }
    void rz(uint32_t q, double angle) { append_gate(GateKind::RZ, {q}, angle); }
    void cx(uint32_t control, uint32_t target) { append_gate(GateKind::CX, {control, target}); }
    void cz(uint32_t a, uint32_t b) { append_gate(GateKind::CZ, {a, b}); }
    void swap(uint32_t a, uint32_t b) { append_gate(GateKind::Swap, {a, b}); }
    void ccx(uint32_t c1, uint32_t c2, uint32_t target) { append_gate(GateKind::CCX, {c1, c2, target}); }

    void measure(uint32_t q, uint32_t c);
    void reset(uint32_t q) { append_gate(GateKind::Reset, {q}); }
    /// Barrier over the given qubits; empty list means all qubits.
    void barrier(std::vector<uint32_t> qubits = {});

    bool operator==(const Circuit& other) const {
        return num_qubits_ == other.num_qubits_ && num_clbits_ == other.num_clbits_ &&
               instructions_ == other.instructions_;
    }

private:
    void append_gate(GateKind kind, std::vector<uint32_t> qubits, double angle = 0.0);

    uint32_t num_qubits_ = 0;
    uint32_t num_clbits_ = 0;
    std::vector<Instruction> instructions_;
    std::vector<std::string> qubit_labels_;
};

}  // namespace dqc
