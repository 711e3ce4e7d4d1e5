#include "pinnet/structure.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace pinnet {

int NetworkStructure::component_of(int node) const {
    for (int c = 0; c < static_cast<int>(scc_partition.size()); ++c)
        for (int v : scc_partition[c])
            if (v == node) return c;
    return -1;
}

namespace {

// Iterative Tarjan. Emits components in reverse topological order of the
// condensation (a component is finished only after everything it reaches).
std::vector<std::vector<int>> tarjan_scc(const std::vector<std::vector<int>>& out) {
    const int n = static_cast<int>(out.size());
    std::vector<int> index(n, -1), lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int next_index = 0;

    struct Frame {
        int v;
        size_t edge;
    };
    std::vector<Frame> call;

    for (int start = 0; start < n; ++start) {
        if (index[start] != -1) continue;
        call.push_back({start, 0});
        while (!call.empty()) {
            Frame& f = call.back();
            const int v = f.v;
            if (f.edge == 0) {
                index[v] = lowlink[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            bool descended = false;
            while (f.edge < out[v].size()) {
                const int w = out[v][f.edge++];
                if (index[w] == -1) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
            }
            if (descended) continue;
            if (lowlink[v] == index[v]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
            call.pop_back();
            if (!call.empty())
                lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
        }
    }
    return comps;
}

}  // namespace

NetworkStructure analyze_structure(const CouplingMatrix& A) {
    const int m = A.size();
    std::vector<std::vector<int>> out(m);  // out[j]: nodes influenced by j
    for (int i = 0; i < m; ++i)
        for (const auto& e : A.row(i)) out[e.col].push_back(i);

    auto comps = tarjan_scc(out);
    std::reverse(comps.begin(), comps.end());  // topological order, sources first

    const int nc = static_cast<int>(comps.size());
    std::vector<int> comp_of(m);
    for (int c = 0; c < nc; ++c)
        for (int v : comps[c]) comp_of[v] = c;

    std::set<std::pair<int, int>> cedges;
    for (int j = 0; j < m; ++j)
        for (int i : out[j])
            if (comp_of[j] != comp_of[i]) cedges.insert({comp_of[j], comp_of[i]});

    NetworkStructure s;
    s.scc_partition = std::move(comps);
    s.condensation_edges.assign(cedges.begin(), cedges.end());

    std::vector<bool> has_incoming(nc, false);
    for (const auto& [from, to] : s.condensation_edges) has_incoming[to] = true;
    for (int c = 0; c < nc; ++c)
        if (!has_incoming[c]) s.root_components.push_back(c);

    s.irreducible = (nc == 1);
    s.has_spanning_tree = (s.root_components.size() == 1);

    s.frobenius_permutation.reserve(m);
    for (const auto& comp : s.scc_partition)
        for (int v : comp) s.frobenius_permutation.push_back(v);
    return s;
}

CouplingMatrix augment_master_slave(const CouplingMatrix& A, double eps, int pinned) {
    if (eps <= 0) throw std::invalid_argument("augment_master_slave: eps must be > 0");
    if (pinned < 0 || pinned >= A.size())
        throw std::invalid_argument("augment_master_slave: pinned index " +
                                    std::to_string(pinned) + " out of range");
    std::vector<std::tuple<int, int, double>> triplets;
    triplets.reserve(A.nonzero_count() + 1);
    for (int i = 0; i < A.size(); ++i)
        for (const auto& e : A.row(i)) triplets.emplace_back(i + 1, e.col + 1, e.weight);
    triplets.emplace_back(pinned + 1, 0, eps);
    return CouplingMatrix::from_triplets(A.size() + 1, triplets);
}

}  // namespace pinnet
