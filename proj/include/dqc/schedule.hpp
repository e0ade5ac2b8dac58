#pragma once

#include "dqc/backend.hpp"
#include "dqc/circuit.hpp"
#include "dqc/partition.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dqc {

/// Capacity policy. Strict requires data + communication qubits to fit the
/// device; expanded only requires the data qubits to fit and lets
/// communication qubits extend the index space virtually.
enum class ScheduleMode { Strict, Expanded };

/// One EPR pair established between two QPUs. Ordinal is the position in the
/// global schedule; each (qpu, slot) pair is used exactly once.
struct EprEvent {
    int64_t id = 0;        // matching RemoteGate id
    uint32_t ordinal = 0;  // position in the global schedule
    std::string qpu_a;     // control side
    std::string qpu_b;     // target side
    uint32_t comm_a = 0;   // subcircuit wire on qpu_a
    uint32_t comm_b = 0;   // subcircuit wire on qpu_b
};

/// One measurement outcome carried between QPUs during a TeleGate.
struct ClassicalMessage {
    std::string from_qpu;
    std::string to_qpu;
    uint32_t bit = 0;       // global classical bit index
    int64_t remote_id = 0;
    uint8_t stage = 1;      // 1: control-side outcome, 2: target-side outcome
};

/// Resolved resources for one remote gate.
struct RemoteBinding {
    int64_t remote_id = 0;
    uint32_t ordinal = 0;
    uint32_t control_group = 0;
    uint32_t target_group = 0;
    uint32_t e1_slot = 0;  // comm wire on the control-side subcircuit
    uint32_t e2_slot = 0;  // comm wire on the target-side subcircuit
    uint32_t m1_bit = 0;   // global classical bits for the two messages
    uint32_t m2_bit = 0;
};

/// One QPU's share of the computation: data qubits on the lowest wires,
/// communication wires after them.
struct QpuAllocation {
    uint32_t group_index = 0;
    std::string qpu_label;
    std::string backend;
    std::vector<uint32_t> data_qubits;  // global indices; wire i holds data_qubits[i]
    uint32_t num_comm = 0;
    Circuit subcircuit;                 // width = data + comm, classical bits global
};

struct Schedule {
    ScheduleMode mode = ScheduleMode::Expanded;
    uint32_t base_clbits = 0;  // classical bits of the source circuit
    std::vector<QpuAllocation> qpus;
    std::vector<EprEvent> epr_events;            // ordered by ordinal
    std::vector<ClassicalMessage> messages;
    std::map<int64_t, RemoteBinding> bindings;

    const QpuAllocation& qpu_for_group(uint32_t group) const;
};

/// Places each logical group on its assigned backend: data qubits on the
/// lowest wires in order, communication wires following in EPR order.
/// Capacity is enforced per `mode`.
Schedule assign_and_allocate(const std::vector<LogicalGroup>& groups, const PartitionPlan& plan,
                             const BackendRegistry& registry, ScheduleMode mode);

/// Orders EPR establishment by the remote gates' global positions, binds each
/// remote gate to its pair of communication wires, and registers the two
/// classical messages of each TeleGate.
Schedule schedule_remote(const std::vector<RemoteGate>& remotes, Schedule schedule);

/// Marks every placeholder opaque-and-anchored and checks that ids pair up
/// (one control side, one target side, no duplicates).
Schedule freeze_placeholders(Schedule schedule);

ScheduleMode parse_mode(const std::string& text);

}  // namespace dqc
