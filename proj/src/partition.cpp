#include "dqc/partition.hpp"

#include "dqc/decompose.hpp"
#include "dqc/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dqc {

namespace {

using nlohmann::json;

}  // namespace

const std::string& PartitionPlan::backend_name(size_t group) const {
    const std::string& label = qpu_labels.at(group);
    auto it = backend_of.find(label);
    if (it == backend_of.end()) {
        throw ConfigError("no backend mapped for QPU label '" + label + "'");
    }
    return it->second;
}

int PartitionPlan::group_of(uint32_t qubit) const {
    for (size_t g = 0; g < groups.size(); ++g) {
        if (std::binary_search(groups[g].begin(), groups[g].end(), qubit)) {
            return static_cast<int>(g);
        }
    }
    return -1;
}

void PartitionPlan::validate(uint32_t num_qubits) const {
    if (groups.empty()) throw ConfigError("partition plan has no groups");
    if (qpu_labels.size() != groups.size()) {
        throw ConfigError("partition plan has " + std::to_string(groups.size()) + " groups but " +
                          std::to_string(qpu_labels.size()) + " assignments");
    }
    std::set<uint32_t> seen;
    for (size_t g = 0; g < groups.size(); ++g) {
        if (!std::is_sorted(groups[g].begin(), groups[g].end())) {
            throw ConfigError("group " + std::to_string(g) + " is not sorted");
        }
        for (uint32_t q : groups[g]) {
            if (q >= num_qubits) {
                throw ConfigError("group " + std::to_string(g) + " references qubit q" +
                                  std::to_string(q) + " but the circuit has " +
                                  std::to_string(num_qubits) + " qubits");
            }
            if (!seen.insert(q).second) {
                throw ConfigError("qubit q" + std::to_string(q) + " appears in more than one group");
            }
        }
    }
    if (seen.size() != num_qubits) {
        for (uint32_t q = 0; q < num_qubits; ++q) {
            if (!seen.count(q)) {
                throw ConfigError("qubit q" + std::to_string(q) + " is not covered by any group");
            }
        }
    }
    std::set<std::string> labels;
    for (const std::string& label : qpu_labels) {
        if (!labels.insert(label).second) {
            throw ConfigError("QPU label '" + label + "' is assigned to more than one group");
        }
        if (!backend_of.count(label)) {
            throw ConfigError("no backend mapped for QPU label '" + label + "'");
        }
    }
}

std::string PartitionPlan::describe_partitions() const {
    std::string out;
    for (size_t g = 0; g < groups.size(); ++g) {
        if (g > 0) out += "|";
        // Print as compact runs.
        const auto& qs = groups[g];
        size_t i = 0;
        bool first = true;
        while (i < qs.size()) {
            size_t j = i;
            while (j + 1 < qs.size() && qs[j + 1] == qs[j] + 1) ++j;
            if (!first) out += ",";
            first = false;
            if (j == i) {
                out += "q" + std::to_string(qs[i]);
            } else {
                out += "q" + std::to_string(qs[i]) + "-q" + std::to_string(qs[j]);
            }
            i = j + 1;
        }
    }
    return out;
}

std::string PartitionPlan::describe_assignment() const {
    std::string out;
    for (size_t g = 0; g < qpu_labels.size(); ++g) {
        if (g > 0) out += ",";
        out += qpu_labels[g];
    }
    return out;
}

uint32_t LogicalGroup::local_of(uint32_t global_qubit) const {
    auto it = std::lower_bound(data_qubits.begin(), data_qubits.end(), global_qubit);
    if (it == data_qubits.end() || *it != global_qubit) {
        throw ValidationError("qubit q" + std::to_string(global_qubit) + " is not in group " +
                              std::to_string(index));
    }
    return static_cast<uint32_t>(it - data_qubits.begin());
}

std::pair<Circuit, std::vector<RemoteGate>> lower_to_remote(const Circuit& circuit,
                                                            const PartitionPlan& plan) {
    plan.validate(circuit.num_qubits());
    const Circuit lowered = decompose_multiqubit(circuit);

    Circuit out(lowered.num_qubits(), lowered.num_clbits());
    out.set_qubit_labels(lowered.qubit_labels());
    std::vector<RemoteGate> remotes;
    for (const Instruction& instr : lowered.instructions()) {
        if (instr.kind == GateKind::CX) {
            const int cg = plan.group_of(instr.qubits[0]);
            const int tg = plan.group_of(instr.qubits[1]);
            if (cg != tg) {
                if (instr.condition) {
                    throw CompileError(
                        "conditioned two-qubit gates cannot cross partitions (qubits q" +
                        std::to_string(instr.qubits[0]) + ", q" + std::to_string(instr.qubits[1]) +
                        ")");
                }
                RemoteGate remote;
                remote.id = static_cast<int64_t>(remotes.size());
                remote.control = instr.qubits[0];
                remote.target = instr.qubits[1];
                remote.control_group = static_cast<uint32_t>(cg);
                remote.target_group = static_cast<uint32_t>(tg);

                Instruction marker;
                marker.kind = GateKind::RemotePlaceholder;
                marker.qubits = {remote.control, remote.target};
                marker.remote_id = remote.id;
                out.append(std::move(marker));
                remotes.push_back(remote);
                continue;
            }
        }
        out.append(instr);
    }
    return {std::move(out), std::move(remotes)};
}

size_t count_comm_qubits(const std::vector<RemoteGate>& remotes) {
    return 2 * remotes.size();
}

std::vector<LogicalGroup> build_groups(const Circuit& lowered, const PartitionPlan& plan) {
    plan.validate(lowered.num_qubits());
    std::vector<LogicalGroup> result;
    result.reserve(plan.groups.size());
    for (size_t g = 0; g < plan.groups.size(); ++g) {
        LogicalGroup group;
        group.index = static_cast<uint32_t>(g);
        group.qpu_label = plan.qpu_labels[g];
        group.backend = plan.backend_name(g);
        group.data_qubits = plan.groups[g];
        group.local_circuit =
            Circuit(static_cast<uint32_t>(group.data_qubits.size()), lowered.num_clbits());
        result.push_back(std::move(group));
    }

    for (const Instruction& instr : lowered.instructions()) {
        if (instr.kind == GateKind::RemotePlaceholder) {
            const uint32_t control = instr.qubits.at(0);
            const uint32_t target = instr.qubits.at(1);
            for (const RemoteSide side : {RemoteSide::Control, RemoteSide::Target}) {
                const uint32_t q = side == RemoteSide::Control ? control : target;
                LogicalGroup& group = result[static_cast<size_t>(plan.group_of(q))];
                Instruction marker;
                marker.kind = GateKind::RemotePlaceholder;
                marker.qubits = {group.local_of(q)};
                marker.remote_id = instr.remote_id;
                marker.side = side;
                group.local_circuit.append(std::move(marker));
                group.remote_refs.push_back(instr.remote_id);
            }
            continue;
        }
        if (instr.kind == GateKind::Barrier) {
            // Project the barrier onto each group it overlaps.
            for (LogicalGroup& group : result) {
                std::vector<uint32_t> local;
                for (uint32_t q : instr.qubits) {
                    const int owner = plan.group_of(q);
                    if (owner == static_cast<int>(group.index)) local.push_back(group.local_of(q));
                }
                if (!local.empty()) {
                    Instruction barrier;
                    barrier.kind = GateKind::Barrier;
                    barrier.qubits = std::move(local);
                    group.local_circuit.append(std::move(barrier));
                }
            }
            continue;
        }
        const int owner = plan.group_of(instr.qubits.at(0));
        LogicalGroup& group = result[static_cast<size_t>(owner)];
        Instruction local = instr;
        for (uint32_t& q : local.qubits) {
            if (plan.group_of(q) != owner) {
                throw ValidationError("instruction '" + std::string(gate_name(instr.kind)) +
                                      "' spans groups after lowering");
            }
            q = group.local_of(q);
        }
        group.local_circuit.append(std::move(local));
    }
    return result;
}

std::vector<uint32_t> parse_qubit_range(const std::string& spec) {
    auto parse_one = [&](const std::string& part) -> uint32_t {
        if (part.size() < 2 || part[0] != 'q') {
            throw ConfigError("invalid qubit spec '" + spec + "': expected 'qN' or 'qN-qM'");
        }
        for (size_t i = 1; i < part.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) {
                throw ConfigError("invalid qubit spec '" + spec + "'");
            }
        }
        return static_cast<uint32_t>(std::stoul(part.substr(1)));
    };
    const size_t dash = spec.find('-');
    std::vector<uint32_t> out;
    if (dash == std::string::npos) {
        out.push_back(parse_one(spec));
        return out;
    }
    const uint32_t lo = parse_one(spec.substr(0, dash));
    const uint32_t hi = parse_one(spec.substr(dash + 1));
    if (hi < lo) throw ConfigError("invalid qubit range '" + spec + "': end before start");
    for (uint32_t q = lo; q <= hi; ++q) out.push_back(q);
    return out;
}

PartitionPlan make_plan(const std::string& partition_spec, std::vector<std::string> labels,
                        std::map<std::string, std::string> backends) {
    PartitionPlan plan;
    std::string current;
    std::vector<std::string> parts;
    for (char c : partition_spec) {
        if (c == '|') {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(current);
    for (const std::string& part : parts) {
        std::vector<uint32_t> group;
        std::string item;
        std::istringstream ss(part);
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            for (uint32_t q : parse_qubit_range(item)) group.push_back(q);
        }
        std::sort(group.begin(), group.end());
        plan.groups.push_back(std::move(group));
    }
    plan.qpu_labels = std::move(labels);
    plan.backend_of = std::move(backends);
    return plan;
}

PartitionPlan parse_partition(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("partition config: invalid JSON: ") + e.what());
    }
    PartitionPlan plan;
    try {
        for (const auto& group_spec : doc.at("partitions")) {
            std::vector<uint32_t> group;
            if (group_spec.is_string()) {
                for (uint32_t q : parse_qubit_range(group_spec.get<std::string>())) {
                    group.push_back(q);
                }
            } else {
                for (const auto& item : group_spec) {
                    for (uint32_t q : parse_qubit_range(item.get<std::string>())) {
                        group.push_back(q);
                    }
                }
            }
            std::sort(group.begin(), group.end());
            plan.groups.push_back(std::move(group));
        }
        for (const auto& label : doc.at("assignment")) {
            plan.qpu_labels.push_back(label.get<std::string>());
        }
        for (const auto& [label, backend] : doc.at("backends").items()) {
            plan.backend_of[label] = backend.get<std::string>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("partition config: ") + e.what());
    }
    return plan;
}

PartitionPlan load_partition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open partition file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_partition(ss.str());
}

}  // namespace dqc
