#pragma once

#include "dqc/circuit.hpp"

#include <set>

namespace dqc {

/// Rewrites CZ, SWAP and CCX into H/T/Tdg/CX sequences unless the kind is in
/// `keep`. The result is equivalent to the input up to global phase, and the
/// pass is idempotent. `keep` must contain CX.
Circuit decompose_multiqubit(const Circuit& circuit, const std::set<GateKind>& keep = {GateKind::CX});

}  // namespace dqc
