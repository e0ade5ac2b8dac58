#include "dqc/dag.hpp"

#include "dqc/errors.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace dqc {

CircuitDag to_dag(const Circuit& circuit) {
    CircuitDag dag;
    dag.num_qubits = circuit.num_qubits();
    dag.num_clbits = circuit.num_clbits();
    dag.nodes = circuit.instructions();

    const auto n = dag.nodes.size();
    std::vector<int64_t> last_on_qubit(circuit.num_qubits(), -1);
    std::vector<int64_t> last_write(circuit.num_clbits(), -1);
    std::vector<std::vector<uint32_t>> readers_since_write(circuit.num_clbits());
    std::set<std::pair<uint32_t, uint32_t>> edge_set;

    auto add_edge = [&](int64_t from, uint32_t to) {
        if (from >= 0 && static_cast<uint32_t>(from) != to) {
            edge_set.emplace(static_cast<uint32_t>(from), to);
        }
    };

    for (uint32_t i = 0; i < n; ++i) {
        const Instruction& instr = dag.nodes[i];
        for (uint32_t q : instr.qubits) {
            add_edge(last_on_qubit[q], i);
            last_on_qubit[q] = i;
        }
        if (instr.condition) {
            const uint32_t b = instr.condition->bit;
            add_edge(last_write[b], i);
            readers_since_write[b].push_back(i);
        }
        for (uint32_t b : instr.clbits) {
            add_edge(last_write[b], i);
            for (uint32_t reader : readers_since_write[b]) add_edge(reader, i);
            readers_since_write[b].clear();
            last_write[b] = i;
        }
    }
    dag.edges.assign(edge_set.begin(), edge_set.end());
    return dag;
}

Circuit from_dag(const CircuitDag& dag) {
    const size_t n = dag.nodes.size();
    std::vector<uint32_t> indegree(n, 0);
    std::vector<std::vector<uint32_t>> succ(n);
    for (auto [from, to] : dag.edges) {
        if (from >= n || to >= n) throw ValidationError("dag edge references missing node");
        succ[from].push_back(to);
        ++indegree[to];
    }

    std::priority_queue<uint32_t, std::vector<uint32_t>, std::greater<>> ready;
    for (uint32_t i = 0; i < n; ++i) {
        if (indegree[i] == 0) ready.push(i);
    }

    Circuit out(dag.num_qubits, dag.num_clbits);
    size_t emitted = 0;
    while (!ready.empty()) {
        const uint32_t i = ready.top();
        ready.pop();
        out.append(dag.nodes[i]);
        ++emitted;
        for (uint32_t s : succ[i]) {
            if (--indegree[s] == 0) ready.push(s);
        }
    }
    if (emitted != n) throw ValidationError("dag contains a cycle");
    return out;
}

size_t depth(const Circuit& circuit) {
    std::vector<size_t> qubit_depth(circuit.num_qubits(), 0);
    std::vector<size_t> write_depth(circuit.num_clbits(), 0);
    std::vector<size_t> read_depth(circuit.num_clbits(), 0);
    size_t result = 0;

    for (const Instruction& instr : circuit.instructions()) {
        size_t level = 0;
        for (uint32_t q : instr.qubits) level = std::max(level, qubit_depth[q]);
        if (instr.condition) level = std::max(level, write_depth[instr.condition->bit]);
        for (uint32_t b : instr.clbits) {
            level = std::max(level, std::max(write_depth[b], read_depth[b]));
        }
        const size_t weight = instr.kind == GateKind::Barrier ? 0 : 1;
        level += weight;
        for (uint32_t q : instr.qubits) qubit_depth[q] = level;
        if (instr.condition) {
            read_depth[instr.condition->bit] = std::max(read_depth[instr.condition->bit], level);
        }
        for (uint32_t b : instr.clbits) write_depth[b] = level;
        result = std::max(result, level);
    }
    return result;
}

size_t gate_count(const Circuit& circuit) {
    size_t count = 0;
    for (const Instruction& instr : circuit.instructions()) {
        if (instr.kind != GateKind::Barrier) ++count;
    }
    return count;
}

}  // namespace dqc
