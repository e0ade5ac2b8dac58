#include "dqc/types.hpp"

namespace dqc {

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Y: return "y";
        case GateKind::Z: return "z";
        case GateKind::S: return "s";
        case GateKind::Sdg: return "sdg";
        case GateKind::T: return "t";
        case GateKind::Tdg: return "tdg";
        case GateKind::SX: return "sx";
        case GateKind::RX: return "rx";
        case GateKind::RY: return "ry";
        case GateKind::RZ: return "rz";
        case GateKind::CX: return "cx";
        case GateKind::CZ: return "cz";
        case GateKind::Swap: return "swap";
        case GateKind::CCX: return "ccx";
        case GateKind::Measure: return "measure";
        case GateKind::Reset: return "reset";
        case GateKind::Barrier: return "barrier";
        case GateKind::RemotePlaceholder: return "remote_placeholder";
    }
    return "?";
}

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CX:
        case GateKind::CZ:
        case GateKind::Swap:
            return 2;
        case GateKind::CCX:
            return 3;
        case GateKind::Barrier:
        case GateKind::RemotePlaceholder:
            return -1;
        default:
            return 1;
    }
}

bool is_rotation(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

bool is_unitary_gate(GateKind kind) {
    switch (kind) {
        case GateKind::Measure:
        case GateKind::Reset:
        case GateKind::Barrier:
        case GateKind::RemotePlaceholder:
            return false;
        default:
            return true;
    }
}

bool is_single_qubit_unitary(GateKind kind) {
    return is_unitary_gate(kind) && gate_arity(kind) == 1;
}

}  // namespace dqc
