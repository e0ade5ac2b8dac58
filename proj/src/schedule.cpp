#include "dqc/schedule.hpp"

#include "dqc/errors.hpp"

#include <algorithm>

namespace dqc {

const QpuAllocation& Schedule::qpu_for_group(uint32_t group) const {
    for (const QpuAllocation& q : qpus) {
        if (q.group_index == group) return q;
    }
    throw ValidationError("no QPU allocation for group " + std::to_string(group));
}

Schedule assign_and_allocate(const std::vector<LogicalGroup>& groups, const PartitionPlan& plan,
                             const BackendRegistry& registry, ScheduleMode mode) {
    Schedule schedule;
    schedule.mode = mode;
    for (const LogicalGroup& group : groups) {
        const BackendSpec& spec = registry.get(plan.backend_name(group.index));
        QpuAllocation alloc;
        alloc.group_index = group.index;
        alloc.qpu_label = group.qpu_label;
        alloc.backend = spec.name;
        alloc.data_qubits = group.data_qubits;
        alloc.num_comm = static_cast<uint32_t>(group.remote_refs.size());
        schedule.base_clbits = group.local_circuit.num_clbits();

        const uint32_t n_data = static_cast<uint32_t>(alloc.data_qubits.size());
        if (mode == ScheduleMode::Strict) {
            validate_fit(spec, n_data + alloc.num_comm);
        } else {
            validate_fit(spec, n_data);
        }

        // Same instructions, widened with the communication wires.
        Circuit widened(n_data + alloc.num_comm, group.local_circuit.num_clbits());
        for (const Instruction& instr : group.local_circuit.instructions()) {
            widened.append(instr);
        }
        alloc.subcircuit = std::move(widened);
        schedule.qpus.push_back(std::move(alloc));
    }
    return schedule;
}

Schedule schedule_remote(const std::vector<RemoteGate>& remotes, Schedule schedule) {
    // Remote ids are dense and in global instruction order.
    std::vector<RemoteGate> ordered = remotes;
    std::sort(ordered.begin(), ordered.end(),
              [](const RemoteGate& a, const RemoteGate& b) { return a.id < b.id; });

    std::map<uint32_t, uint32_t> next_comm_wire;  // group -> next free wire
    for (const QpuAllocation& alloc : schedule.qpus) {
        next_comm_wire[alloc.group_index] = static_cast<uint32_t>(alloc.data_qubits.size());
    }

    schedule.epr_events.clear();
    schedule.messages.clear();
    schedule.bindings.clear();
    uint32_t ordinal = 0;
    for (const RemoteGate& remote : ordered) {
        const QpuAllocation& control_qpu = schedule.qpu_for_group(remote.control_group);
        const QpuAllocation& target_qpu = schedule.qpu_for_group(remote.target_group);

        RemoteBinding binding;
        binding.remote_id = remote.id;
        binding.ordinal = ordinal;
        binding.control_group = remote.control_group;
        binding.target_group = remote.target_group;
        binding.e1_slot = next_comm_wire.at(remote.control_group)++;
        binding.e2_slot = next_comm_wire.at(remote.target_group)++;
        binding.m1_bit = schedule.base_clbits + 2 * ordinal;
        binding.m2_bit = schedule.base_clbits + 2 * ordinal + 1;

        EprEvent event;
        event.id = remote.id;
        event.ordinal = ordinal;
        event.qpu_a = control_qpu.qpu_label;
        event.qpu_b = target_qpu.qpu_label;
        event.comm_a = binding.e1_slot;
        event.comm_b = binding.e2_slot;
        schedule.epr_events.push_back(event);

        schedule.messages.push_back({control_qpu.qpu_label, target_qpu.qpu_label, binding.m1_bit,
                                     remote.id, uint8_t{1}});
        schedule.messages.push_back({target_qpu.qpu_label, control_qpu.qpu_label, binding.m2_bit,
                                     remote.id, uint8_t{2}});

        schedule.bindings[remote.id] = binding;
        ++ordinal;
    }

    // Sanity: allocation counts must match what the groups advertised.
    for (const QpuAllocation& alloc : schedule.qpus) {
        const uint32_t used = next_comm_wire.at(alloc.group_index) -
                              static_cast<uint32_t>(alloc.data_qubits.size());
        if (used != alloc.num_comm) {
            throw ValidationError("communication-wire allocation mismatch on QPU '" +
                                  alloc.qpu_label + "'");
        }
    }
    return schedule;
}

Schedule freeze_placeholders(Schedule schedule) {
    std::map<int64_t, int> control_seen;
    std::map<int64_t, int> target_seen;
    for (QpuAllocation& alloc : schedule.qpus) {
        Circuit frozen(alloc.subcircuit.num_qubits(), alloc.subcircuit.num_clbits());
        for (Instruction instr : alloc.subcircuit.instructions()) {
            if (instr.kind == GateKind::RemotePlaceholder) {
                instr.anchored = true;
                if (!schedule.bindings.count(instr.remote_id)) {
                    throw ValidationError("placeholder id " + std::to_string(instr.remote_id) +
                                          " has no remote binding");
                }
                auto& seen = instr.side == RemoteSide::Target ? target_seen : control_seen;
                if (++seen[instr.remote_id] > 1) {
                    throw ValidationError("placeholder id " + std::to_string(instr.remote_id) +
                                          " appears twice on the same side");
                }
            }
            frozen.append(std::move(instr));
        }
        alloc.subcircuit = std::move(frozen);
    }
    for (const auto& [id, binding] : schedule.bindings) {
        (void)binding;
        if (control_seen[id] != 1 || target_seen[id] != 1) {
            throw ValidationError("remote gate " + std::to_string(id) +
                                  " must appear on exactly one control side and one target side");
        }
    }
    return schedule;
}

ScheduleMode parse_mode(const std::string& text) {
    if (text == "strict") return ScheduleMode::Strict;
    if (text == "expanded") return ScheduleMode::Expanded;
    throw ConfigError("unknown mode '" + text + "' (expected strict or expanded)");
}

}  // namespace dqc
