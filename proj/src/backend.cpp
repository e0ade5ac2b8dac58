#include "dqc/backend.hpp"

#include "dqc/errors.hpp"

#include <fstream>
#include <queue>
#include <sstream>

#include "json.hpp"

namespace dqc {

namespace {

using nlohmann::json;

const std::map<std::string, GateKind>& basis_name_table() {
    static const std::map<std::string, GateKind> table = {
        {"h", GateKind::H},     {"x", GateKind::X},     {"y", GateKind::Y},
        {"z", GateKind::Z},     {"s", GateKind::S},     {"sdg", GateKind::Sdg},
        {"t", GateKind::T},     {"tdg", GateKind::Tdg}, {"sx", GateKind::SX},
        {"rx", GateKind::RX},   {"ry", GateKind::RY},   {"rz", GateKind::RZ},
        {"cx", GateKind::CX},   {"cz", GateKind::CZ},   {"swap", GateKind::Swap},
        {"ccx", GateKind::CCX},
    };
    return table;
}

BackendSpec make_builtin(std::string name, uint32_t n,
                         std::initializer_list<std::pair<uint32_t, uint32_t>> edges) {
    BackendSpec spec;
    spec.name = std::move(name);
    spec.num_qubits = n;
    for (auto [a, b] : edges) spec.coupling.insert({std::min(a, b), std::max(a, b)});
    spec.basis_gates = {GateKind::RZ, GateKind::SX, GateKind::X, GateKind::CX};
    return spec;
}

BackendSpec parse_backend_entry(const json& entry, size_t index) {
    const std::string where = "backends[" + std::to_string(index) + "]";
    if (!entry.is_object()) throw ConfigError(where + ": expected an object");
    BackendSpec spec;
    try {
        spec.name = entry.at("name").get<std::string>();
        spec.num_qubits = entry.at("num_qubits").get<uint32_t>();
        for (const auto& pair : entry.at("coupling")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ConfigError(where + ".coupling: expected pairs [a, b]");
            }
            const uint32_t a = pair[0].get<uint32_t>();
            const uint32_t b = pair[1].get<uint32_t>();
            spec.coupling.insert({std::min(a, b), std::max(a, b)});
        }
        for (const auto& g : entry.at("basis_gates")) {
            const std::string name = g.get<std::string>();
            auto it = basis_name_table().find(name);
            if (it == basis_name_table().end()) {
                throw ConfigError(where + ".basis_gates: unknown gate '" + name + "'");
            }
            spec.basis_gates.insert(it->second);
        }
    } catch (const json::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return spec;
}

}  // namespace

void validate_backend(const BackendSpec& spec) {
    if (spec.name.empty()) throw ValidationError("backend name must not be empty");
    if (spec.num_qubits == 0) {
        throw ValidationError("backend '" + spec.name + "' must have at least one qubit");
    }
    for (auto [a, b] : spec.coupling) {
        if (a == b) {
            throw ValidationError("backend '" + spec.name + "': coupling pair (" +
                                  std::to_string(a) + "," + std::to_string(b) + ") is reflexive");
        }
        if (a >= spec.num_qubits || b >= spec.num_qubits) {
            throw ValidationError("backend '" + spec.name + "': coupling pair (" +
                                  std::to_string(a) + "," + std::to_string(b) +
                                  ") out of range for " + std::to_string(spec.num_qubits) +
                                  " qubits");
        }
    }
    if (!spec.basis_gates.count(GateKind::CX)) {
        throw ValidationError("backend '" + spec.name + "': basis must contain cx");
    }
    if (!spec.basis_gates.count(GateKind::RX) && !spec.basis_gates.count(GateKind::RY) &&
        !spec.basis_gates.count(GateKind::RZ)) {
        throw ValidationError("backend '" + spec.name +
                              "': basis must contain a continuous rotation (rx, ry or rz)");
    }
    // Connectivity (single-qubit devices are trivially connected).
    if (spec.num_qubits > 1) {
        std::vector<std::vector<uint32_t>> adj(spec.num_qubits);
        for (auto [a, b] : spec.coupling) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::vector<bool> seen(spec.num_qubits, false);
        std::queue<uint32_t> frontier;
        frontier.push(0);
        seen[0] = true;
        uint32_t visited = 1;
        while (!frontier.empty()) {
            const uint32_t v = frontier.front();
            frontier.pop();
            for (uint32_t w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    ++visited;
                    frontier.push(w);
                }
            }
        }
        if (visited != spec.num_qubits) {
            throw ValidationError("backend '" + spec.name + "': coupling graph is disconnected");
        }
    }
}

BackendRegistry BackendRegistry::with_builtins() {
    BackendRegistry reg;
    reg.add(make_builtin("FakeVigoV2", 5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}}));
    reg.add(make_builtin("FakeAthensV2", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
    reg.add(make_builtin("FakeLagosV2", 7, {{0, 1}, {1, 2}, {1, 3}, {3, 5}, {4, 5}, {5, 6}}));
    return reg;
}

void BackendRegistry::add(BackendSpec spec) {
    validate_backend(spec);
    specs_[spec.name] = std::move(spec);
}

const BackendSpec& BackendRegistry::get(const std::string& name) const {
    auto it = specs_.find(name);
    if (it == specs_.end()) throw ConfigError("unknown backend '" + name + "'");
    return it->second;
}

BackendRegistry parse_registry(const std::string& json_text) {
    BackendRegistry reg = BackendRegistry::with_builtins();
    if (json_text.find_first_not_of(" \t\r\n") == std::string::npos) return reg;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("backend config: invalid JSON: ") + e.what());
    }
    const json* entries = &doc;
    if (doc.is_object()) {
        if (!doc.contains("backends")) {
            throw ConfigError("backend config: expected a list or an object with key 'backends'");
        }
        entries = &doc.at("backends");
    }
    if (!entries->is_array()) {
        throw ConfigError("backend config: 'backends' must be a list");
    }
    for (size_t i = 0; i < entries->size(); ++i) {
        BackendSpec spec = parse_backend_entry((*entries)[i], i);
        try {
            reg.add(std::move(spec));
        } catch (const ValidationError& e) {
            throw ConfigError("backends[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return reg;
}

BackendRegistry load_registry(const std::string& path) {
    if (path.empty()) return BackendRegistry::with_builtins();
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open backend config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_registry(ss.str());
}

void validate_fit(const BackendSpec& spec, uint32_t needed_qubits) {
    if (needed_qubits > spec.num_qubits) {
        throw CapacityError("backend '" + spec.name + "' has " + std::to_string(spec.num_qubits) +
                            " qubits but " + std::to_string(needed_qubits) + " are needed");
    }
}

}  // namespace dqc
