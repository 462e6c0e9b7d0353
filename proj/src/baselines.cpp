#include "casrec/baselines.hpp"

#include <cmath>
#include <limits>
#include <queue>

#include "casrec/inference.hpp"
#include "casrec/pagerank.hpp"

namespace casrec {

NodeScores pagerank_baseline(const ProbGraph& g, const Observation& o,
                             double damping) {
    const std::size_t observed =
        o.observed_infected.size() + o.observed_uninfected.size();
    if (observed == 0)
        throw std::invalid_argument("pagerank_baseline: empty observation");

    std::vector<double> personalization(g.num_nodes(), 0.0);
    const double share = 1.0 / static_cast<double>(observed);
    for (NodeId u : o.observed_infected)
        personalization[u] = share;
    for (NodeId u : o.observed_uninfected)
        personalization[u] = share;
    const auto scores = personalized_pagerank(g, personalization, damping);

    std::vector<char> is_observed(g.num_nodes(), 0);
    for (NodeId u : o.observed_infected)
        is_observed[u] = 1;
    for (NodeId u : o.observed_uninfected)
        is_observed[u] = 1;

    NodeScores out;
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        if (!is_observed[u])
            out.emplace_back(u, scores[u]);
    return out;
}

SteinerBaseline min_steiner_tree(const ProbGraph& g,
                                 std::span<const NodeId> terminals) {
    const NodeId n = g.num_nodes();
    const NodeId root = root_min_dist(g, terminals);

    std::vector<char> in_tree(n, 0);
    std::vector<NodeId> parent(n, Tree::kNoParent);
    std::vector<NodeId> members{root};
    in_tree[root] = 1;

    std::vector<char> pending(n, 0);
    std::size_t remaining = 0;
    for (NodeId x : terminals) {
        if (!in_tree[x] && !pending[x]) {
            pending[x] = 1;
            ++remaining;
        }
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n);
    std::vector<NodeId> pred(n);
    while (remaining > 0) {
        // Multi-source Dijkstra outward from the current tree; edge (u,v)
        // costs -log p_uv, the negative log-likelihood of that hop.
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(pred.begin(), pred.end(), Tree::kNoParent);
        using Item = std::pair<double, NodeId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        for (NodeId u : members) {
            dist[u] = 0.0;
            heap.emplace(0.0, u);
        }
        while (!heap.empty()) {
            const auto [d, u] = heap.top();
            heap.pop();
            if (d > dist[u])
                continue;
            const auto nbrs = g.out_neighbors(u);
            const auto probs = g.out_probs(u);
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                const double nd = d - std::log(probs[i]);
                if (nd < dist[nbrs[i]]) {
                    dist[nbrs[i]] = nd;
                    pred[nbrs[i]] = u;
                    heap.emplace(nd, nbrs[i]);
                }
            }
        }

        NodeId cheapest = -1;
        for (NodeId x = 0; x < n; ++x)
            if (pending[x] && (cheapest < 0 || dist[x] < dist[cheapest]))
                cheapest = x;
        if (cheapest < 0 || !std::isfinite(dist[cheapest]))
            throw std::runtime_error("min_steiner_tree: unreachable terminal");

        // Attach the path tree -> cheapest; tree-direction parent links run
        // back along the path toward the root.
        NodeId v = cheapest;
        while (!in_tree[v]) {
            in_tree[v] = 1;
            parent[v] = pred[v];
            members.push_back(v);
            if (pending[v]) {
                pending[v] = 0;
                --remaining;
            }
            v = pred[v];
        }
    }

    SteinerBaseline out;
    out.tree = make_tree(n, root, members, parent);
    std::vector<char> is_terminal(n, 0);
    for (NodeId x : terminals)
        is_terminal[x] = 1;
    for (NodeId u = 0; u < n; ++u)
        if (!is_terminal[u])
            out.nodes.emplace_back(u, in_tree[u] ? 1.0 : 0.0);
    return out;
}

} // namespace casrec
