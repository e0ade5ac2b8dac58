#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dqc {

enum class GateKind : uint8_t {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    SX,
    RX,
    RY,
    RZ,
    CX,
    CZ,
    Swap,
    CCX,
    Measure,
    Reset,
    Barrier,
    RemotePlaceholder,
};

/// Which side of a remote CX a placeholder stands for.
enum class RemoteSide : uint8_t { None, Control, Target };

/// Classical condition attached to a unitary gate: apply iff bit == value.
struct Condition {
    uint32_t bit = 0;
    uint8_t value = 0;

    bool operator==(const Condition&) const = default;
};

struct Instruction {
    GateKind kind = GateKind::Barrier;
    std::vector<uint32_t> qubits;
    std::vector<uint32_t> clbits;
    double angle = 0.0;
    std::optional<Condition> condition;
    int64_t remote_id = -1;             // RemotePlaceholder only
    RemoteSide side = RemoteSide::None; // RemotePlaceholder only
    bool anchored = false;              // set when a placeholder is frozen

    bool operator==(const Instruction&) const = default;
};

/// Canonical lowercase name for a gate kind (matches the textual format).
const char* gate_name(GateKind kind);

/// Number of qubit operands a kind requires, or -1 for variable (Barrier,
/// RemotePlaceholder).
int gate_arity(GateKind kind);

bool is_rotation(GateKind kind);

/// True for kinds that act as a unitary on their qubits (everything except
/// Measure, Reset, Barrier and RemotePlaceholder).
bool is_unitary_gate(GateKind kind);

bool is_single_qubit_unitary(GateKind kind);

}  // namespace dqc
