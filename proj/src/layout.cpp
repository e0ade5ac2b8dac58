#include "dqc/layout.hpp"

#include "dqc/dag.hpp"
#include "dqc/errors.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace dqc {

namespace {

using ordered_json = nlohmann::ordered_json;

Circuit without_placeholders(const Circuit& circuit) {
    Circuit out(circuit.num_qubits(), circuit.num_clbits());
    for (const Instruction& instr : circuit.instructions()) {
        if (instr.kind != GateKind::RemotePlaceholder) out.append(instr);
    }
    return out;
}

}  // namespace

const char* tag_name(InstrTag tag) {
    switch (tag) {
        case InstrTag::Local: return "local";
        case InstrTag::EprPrep: return "epr_prep";
        case InstrTag::TelegateCx: return "telegate_cx";
        case InstrTag::ClassicalMsg: return "classical_msg";
        case InstrTag::Correction: return "correction";
        case InstrTag::Reset: return "reset";
    }
    return "?";
}

uint32_t DistributedLayout::num_data_qubits() const {
    uint32_t n = 0;
    for (const WireInfo& w : wires) n += w.role == QubitRole::Data ? 1 : 0;
    return n;
}

uint32_t DistributedLayout::num_comm_qubits() const {
    uint32_t n = 0;
    for (const WireInfo& w : wires) n += w.role == QubitRole::Comm ? 1 : 0;
    return n;
}

std::vector<std::pair<Instruction, InstrTag>> expand_telegate(uint32_t c_qubit, uint32_t t_qubit,
                                                              uint32_t e1, uint32_t e2,
                                                              uint32_t m1_bit, uint32_t m2_bit) {
    std::vector<std::pair<Instruction, InstrTag>> seq;
    seq.reserve(11);
    auto gate = [](GateKind kind, std::vector<uint32_t> qubits) {
        Instruction instr;
        instr.kind = kind;
        instr.qubits = std::move(qubits);
        return instr;
    };

    seq.emplace_back(gate(GateKind::H, {e1}), InstrTag::EprPrep);
    seq.emplace_back(gate(GateKind::CX, {e1, e2}), InstrTag::EprPrep);
    seq.emplace_back(gate(GateKind::CX, {c_qubit, e1}), InstrTag::TelegateCx);

    Instruction m1 = gate(GateKind::Measure, {e1});
    m1.clbits = {m1_bit};
    seq.emplace_back(std::move(m1), InstrTag::ClassicalMsg);

    Instruction x_corr = gate(GateKind::X, {e2});
    x_corr.condition = Condition{m1_bit, 1};
    seq.emplace_back(std::move(x_corr), InstrTag::Correction);

    seq.emplace_back(gate(GateKind::CX, {e2, t_qubit}), InstrTag::TelegateCx);
    seq.emplace_back(gate(GateKind::H, {e2}), InstrTag::TelegateCx);

    Instruction m2 = gate(GateKind::Measure, {e2});
    m2.clbits = {m2_bit};
    seq.emplace_back(std::move(m2), InstrTag::ClassicalMsg);

    Instruction z_corr = gate(GateKind::Z, {c_qubit});
    z_corr.condition = Condition{m2_bit, 1};
    seq.emplace_back(std::move(z_corr), InstrTag::Correction);

    seq.emplace_back(gate(GateKind::Reset, {e1}), InstrTag::Reset);
    seq.emplace_back(gate(GateKind::Reset, {e2}), InstrTag::Reset);
    return seq;
}

DistributedLayout assemble(const Schedule& schedule, const std::vector<CompiledSubcircuit>& compiled,
                           const PartitionPlan& plan) {
    if (compiled.size() != schedule.qpus.size()) {
        throw AssemblyError("expected " + std::to_string(schedule.qpus.size()) +
                            " compiled subcircuits, got " + std::to_string(compiled.size()));
    }

    // Placeholder pairing: every binding id must appear once on its control
    // side and once on its target side, and nothing else may carry ids.
    std::map<uint32_t, size_t> qpu_index_of_group;
    for (size_t i = 0; i < schedule.qpus.size(); ++i) {
        qpu_index_of_group[schedule.qpus[i].group_index] = i;
    }
    for (size_t i = 0; i < compiled.size(); ++i) {
        for (const auto& [id, pos] : compiled[i].placeholder_positions) {
            auto it = schedule.bindings.find(id);
            if (it == schedule.bindings.end()) {
                throw AssemblyError("placeholder id " + std::to_string(id) +
                                    " has no remote binding");
            }
            const Instruction& instr = compiled[i].circuit.instructions().at(pos.first);
            const uint32_t expected_group = instr.side == RemoteSide::Target
                                                ? it->second.target_group
                                                : it->second.control_group;
            if (qpu_index_of_group.at(expected_group) != i) {
                throw AssemblyError("placeholder id " + std::to_string(id) +
                                    " appears on the wrong subcircuit");
            }
        }
    }
    for (const auto& [id, binding] : schedule.bindings) {
        const auto& control_positions =
            compiled[qpu_index_of_group.at(binding.control_group)].placeholder_positions;
        const auto& target_positions =
            compiled[qpu_index_of_group.at(binding.target_group)].placeholder_positions;
        if (!control_positions.count(id) || !target_positions.count(id)) {
            throw AssemblyError("remote gate " + std::to_string(id) +
                                " lost a placeholder during compilation");
        }
    }

    // Wire blocks: one contiguous block per QPU.
    DistributedLayout layout;
    layout.plan = plan;
    layout.base_clbits = schedule.base_clbits;
    layout.epr_events = schedule.epr_events;
    layout.messages = schedule.messages;

    std::vector<uint32_t> width(schedule.qpus.size(), 0);
    for (size_t i = 0; i < schedule.qpus.size(); ++i) {
        const QpuAllocation& alloc = schedule.qpus[i];
        uint32_t w = static_cast<uint32_t>(alloc.data_qubits.size()) + alloc.num_comm;
        for (const Instruction& instr : compiled[i].circuit.instructions()) {
            for (uint32_t q : instr.qubits) w = std::max(w, q + 1);
        }
        width[i] = w;
    }
    std::vector<uint32_t> offset(schedule.qpus.size(), 0);
    for (size_t i = 1; i < schedule.qpus.size(); ++i) offset[i] = offset[i - 1] + width[i - 1];
    const uint32_t total_wires = schedule.qpus.empty()
                                     ? 0
                                     : offset.back() + width.back();

    layout.wires.resize(total_wires);
    uint32_t max_data_global = 0;
    for (size_t i = 0; i < schedule.qpus.size(); ++i) {
        const QpuAllocation& alloc = schedule.qpus[i];
        layout.qpu_offset[alloc.qpu_label] = offset[i];
        const uint32_t d = static_cast<uint32_t>(alloc.data_qubits.size());
        for (uint32_t w = 0; w < width[i]; ++w) {
            WireInfo info;
            info.qpu = alloc.qpu_label;
            info.physical = w;
            if (w < d) {
                info.role = QubitRole::Data;
                info.global_data_index = alloc.data_qubits[w];
                max_data_global = std::max(max_data_global, alloc.data_qubits[w]);
            } else if (w < d + alloc.num_comm) {
                info.role = QubitRole::Comm;
            } else {
                info.role = QubitRole::Aux;
            }
            layout.wires[offset[i] + w] = std::move(info);
        }
    }
    for (const auto& [id, binding] : schedule.bindings) {
        const size_t ci = qpu_index_of_group.at(binding.control_group);
        const size_t ti = qpu_index_of_group.at(binding.target_group);
        layout.wires.at(offset[ci] + binding.e1_slot).epr_id = id;
        layout.wires.at(offset[ti] + binding.e2_slot).epr_id = id;
    }

    // Data-qubit positions, initial and after routing.
    layout.initial_wire_of_data.assign(schedule.qpus.empty() ? 0 : max_data_global + 1, 0);
    layout.final_wire_of_data.assign(layout.initial_wire_of_data.size(), 0);
    for (size_t i = 0; i < schedule.qpus.size(); ++i) {
        const QpuAllocation& alloc = schedule.qpus[i];
        for (uint32_t local = 0; local < alloc.data_qubits.size(); ++local) {
            const uint32_t global = alloc.data_qubits[local];
            layout.initial_wire_of_data[global] = offset[i] + local;
            layout.final_wire_of_data[global] = offset[i] + compiled[i].final_map.physical(local);
        }
    }

    const uint32_t num_remote = static_cast<uint32_t>(schedule.epr_events.size());
    Circuit global(total_wires, schedule.base_clbits + 2 * num_remote);
    layout.tags.clear();
    layout.instr_qpu.clear();

    std::vector<size_t> cursor(compiled.size(), 0);
    std::set<uint32_t> consumed_comm;

    auto emit = [&](Instruction instr, InstrTag tag) {
        const std::string& owner =
            instr.qubits.empty() ? std::string() : layout.wires.at(instr.qubits[0]).qpu;
        global.append(std::move(instr));
        layout.tags.push_back(tag);
        layout.instr_qpu.push_back(owner);
    };

    // Emits instructions up to (and consuming) the placeholder `stop_id`, or
    // the whole remaining tail when stop_id < 0.
    auto flush = [&](size_t i, int64_t stop_id) {
        const auto& code = compiled[i].circuit.instructions();
        while (cursor[i] < code.size()) {
            const Instruction& instr = code[cursor[i]];
            if (instr.kind == GateKind::RemotePlaceholder) {
                if (stop_id < 0) {
                    throw AssemblyError("placeholder id " + std::to_string(instr.remote_id) +
                                        " left after the last scheduled remote gate");
                }
                if (instr.remote_id != stop_id) {
                    throw AssemblyError("placeholder id " + std::to_string(instr.remote_id) +
                                        " out of schedule order (expected " +
                                        std::to_string(stop_id) + ")");
                }
                ++cursor[i];
                return;
            }
            Instruction shifted = instr;
            for (uint32_t& q : shifted.qubits) q += offset[i];
            const InstrTag tag =
                instr.kind == GateKind::Reset ? InstrTag::Reset : InstrTag::Local;
            emit(std::move(shifted), tag);
            ++cursor[i];
        }
        if (stop_id >= 0) {
            throw AssemblyError("subcircuit ended before placeholder id " +
                                std::to_string(stop_id));
        }
    };

    for (const EprEvent& event : schedule.epr_events) {
        const RemoteBinding& binding = schedule.bindings.at(event.id);
        const size_t ci = qpu_index_of_group.at(binding.control_group);
        const size_t ti = qpu_index_of_group.at(binding.target_group);
        flush(ci, event.id);
        flush(ti, event.id);

        const uint32_t c_wire =
            offset[ci] + compiled[ci].placeholder_positions.at(event.id).second;
        const uint32_t t_wire =
            offset[ti] + compiled[ti].placeholder_positions.at(event.id).second;
        const uint32_t e1_wire = offset[ci] + binding.e1_slot;
        const uint32_t e2_wire = offset[ti] + binding.e2_slot;
        if (!consumed_comm.insert(e1_wire).second || !consumed_comm.insert(e2_wire).second) {
            throw AssemblyError("communication qubit reused by remote gate " +
                                std::to_string(event.id));
        }
        for (auto& [instr, tag] :
             expand_telegate(c_wire, t_wire, e1_wire, e2_wire, binding.m1_bit, binding.m2_bit)) {
            emit(std::move(instr), tag);
        }
    }
    for (size_t i = 0; i < compiled.size(); ++i) flush(i, -1);

    layout.global_circuit = std::move(global);
    return layout;
}

MetricsReport compute_metrics(const DistributedLayout& layout,
                              const std::vector<CompiledSubcircuit>& compiled) {
    MetricsReport report;
    report.partition_desc = layout.plan.describe_partitions();
    report.assignment_desc = layout.plan.describe_assignment();
    report.n_data = layout.num_data_qubits();
    report.n_comm = layout.num_comm_qubits();
    report.n_total = report.n_data + report.n_comm;
    if (!compiled.empty()) {
        size_t min_depth = SIZE_MAX, max_depth = 0, sum = 0;
        for (const CompiledSubcircuit& sub : compiled) {
            const size_t d = depth(without_placeholders(sub.circuit));
            min_depth = std::min(min_depth, d);
            max_depth = std::max(max_depth, d);
            sum += d;
        }
        report.subcirc_depth_min = min_depth;
        report.subcirc_depth_max = max_depth;
        report.subcirc_depth_avg = static_cast<double>(sum) / static_cast<double>(compiled.size());
    }
    report.layout_depth = depth(layout.global_circuit);
    report.gate_count = gate_count(layout.global_circuit);
    return report;
}

namespace {

ordered_json metrics_to_json_obj(const MetricsReport& m) {
    ordered_json j;
    j["benchmark"] = m.benchmark;
    j["partition"] = m.partition_desc;
    j["assignment"] = m.assignment_desc;
    j["n_data"] = m.n_data;
    j["n_comm"] = m.n_comm;
    j["n_total"] = m.n_total;
    j["subcirc_depth"] = {{"min", m.subcirc_depth_min},
                          {"max", m.subcirc_depth_max},
                          {"avg", m.subcirc_depth_avg}};
    j["layout_depth"] = m.layout_depth;
    j["gate_count"] = m.gate_count;
    j["simulated"] = m.simulated;
    if (!m.sim_note.empty()) j["sim_note"] = m.sim_note;
    if (m.simulated) {
        j["state"] = m.top_state;
        j["iprob"] = m.iprob;
        j["eprob"] = m.eprob;
        j["hellinger_fidelity"] = m.fidelity;
        j["error_rate"] = m.error_rate;
        ordered_json outcomes = ordered_json::array();
        for (const auto& [state, prob] : m.top_outcomes) {
            outcomes.push_back({{"state", state}, {"probability", prob}});
        }
        j["top_outcomes"] = outcomes;
    }
    return j;
}

}  // namespace

std::string emit_layout(const DistributedLayout& layout, const MetricsReport& metrics) {
    ordered_json doc;
    ordered_json qpus = ordered_json::array();
    for (size_t g = 0; g < layout.plan.groups.size(); ++g) {
        const std::string& label = layout.plan.qpu_labels[g];
        ordered_json entry;
        entry["name"] = label;
        entry["backend"] = layout.plan.backend_name(g);
        ordered_json data = ordered_json::array();
        ordered_json comm = ordered_json::array();
        for (const WireInfo& wire : layout.wires) {
            if (wire.qpu != label) continue;
            if (wire.role == QubitRole::Data) {
                data.push_back({{"global_index", wire.global_data_index},
                                {"physical_index", wire.physical}});
            } else if (wire.role == QubitRole::Comm) {
                comm.push_back({{"physical_index", wire.physical}, {"epr_event_id", wire.epr_id}});
            }
        }
        entry["data_qubits"] = std::move(data);
        entry["comm_qubits"] = std::move(comm);
        qpus.push_back(std::move(entry));
    }
    doc["qpus"] = std::move(qpus);

    ordered_json instructions = ordered_json::array();
    const auto& code = layout.global_circuit.instructions();
    for (size_t i = 0; i < code.size(); ++i) {
        const Instruction& instr = code[i];
        ordered_json entry;
        entry["op"] = gate_name(instr.kind);
        entry["qpu"] = layout.instr_qpu[i];
        ordered_json qubits = ordered_json::array();
        for (uint32_t q : instr.qubits) qubits.push_back(layout.wires.at(q).physical);
        entry["qubits"] = std::move(qubits);
        entry["clbits"] = instr.clbits;
        if (is_rotation(instr.kind)) entry["angle"] = instr.angle;
        if (instr.condition) {
            entry["condition"] = {{"bit", instr.condition->bit}, {"value", instr.condition->value}};
        }
        entry["tag"] = tag_name(layout.tags[i]);
        instructions.push_back(std::move(entry));
    }
    doc["instructions"] = std::move(instructions);
    doc["metrics"] = metrics_to_json_obj(metrics);
    return doc.dump(2) + "\n";
}

std::string metrics_to_json(const MetricsReport& metrics) {
    return metrics_to_json_obj(metrics).dump(2) + "\n";
}

MetricsReport metrics_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("metrics file: invalid JSON: ") + e.what());
    }
    MetricsReport m;
    try {
        m.benchmark = j.value("benchmark", "");
        m.partition_desc = j.value("partition", "");
        m.assignment_desc = j.value("assignment", "");
        m.n_data = j.at("n_data").get<uint32_t>();
        m.n_comm = j.at("n_comm").get<uint32_t>();
        m.n_total = j.at("n_total").get<uint32_t>();
        m.subcirc_depth_min = j.at("subcirc_depth").at("min").get<size_t>();
        m.subcirc_depth_max = j.at("subcirc_depth").at("max").get<size_t>();
        m.subcirc_depth_avg = j.at("subcirc_depth").at("avg").get<double>();
        m.layout_depth = j.at("layout_depth").get<size_t>();
        m.gate_count = j.at("gate_count").get<size_t>();
        m.simulated = j.value("simulated", false);
        m.sim_note = j.value("sim_note", "");
        if (m.simulated) {
            m.top_state = j.value("state", "");
            m.iprob = j.value("iprob", 0.0);
            m.eprob = j.value("eprob", 0.0);
            m.fidelity = j.value("hellinger_fidelity", 0.0);
            m.error_rate = j.value("error_rate", 0.0);
            if (j.contains("top_outcomes")) {
                for (const auto& entry : j.at("top_outcomes")) {
                    m.top_outcomes.emplace_back(entry.at("state").get<std::string>(),
                                                entry.at("probability").get<double>());
                }
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("metrics file: ") + e.what());
    }
    return m;
}

}  // namespace dqc
