#include "casrec/contraction.hpp"

#include <algorithm>

namespace casrec {

std::vector<GraphEdge> ContractedGraph::weighted_edges() const {
    std::vector<GraphEdge> out;
    out.reserve(edges_.size());
    for (const ContractedEdge& e : edges_)
        out.push_back({e.from, e.to, e.weight});
    return out;
}

std::vector<GraphEdge> ContractedGraph::multiplicity_edges() const {
    std::vector<GraphEdge> out;
    out.reserve(edges_.size());
    for (const ContractedEdge& e : edges_)
        out.push_back({e.from, e.to, static_cast<double>(e.multiplicity)});
    return out;
}

ContractedGraph contract(const MarkovChain& chain, const Tree& t) {
    const NodeId n = chain.num_nodes();
    std::vector<char> in_tree(n, 0);
    for (NodeId u : t.nodes)
        in_tree[u] = 1;

    // Supernode is contracted id 0; outside nodes follow in id order.
    std::vector<NodeId> dense(n, -1);
    std::vector<NodeId> original_ids{ContractedGraph::kNoOriginal};
    for (NodeId u = 0; u < n; ++u) {
        if (!in_tree[u]) {
            dense[u] = static_cast<NodeId>(original_ids.size());
            original_ids.push_back(u);
        }
    }
    const NodeId nc = static_cast<NodeId>(original_ids.size());

    std::vector<ContractedEdge> edges;
    std::vector<double> to_super_w(nc, 0.0), from_super_w(nc, 0.0);
    std::vector<int> to_super_m(nc, 0), from_super_m(nc, 0);

    for (NodeId u = 0; u < n; ++u) {
        const auto succ = chain.successors(u);
        const auto w = chain.weights(u);
        for (std::size_t i = 0; i < succ.size(); ++i) {
            const NodeId v = succ[i];
            if (in_tree[u] && in_tree[v])
                continue; // internal to the merged supernode
            if (in_tree[u]) {
                from_super_w[dense[v]] += w[i];
                from_super_m[dense[v]] += 1;
            } else if (in_tree[v]) {
                to_super_w[dense[u]] += w[i];
                to_super_m[dense[u]] += 1;
            } else {
                edges.push_back({dense[u], dense[v], w[i], 1});
            }
        }
    }
    for (NodeId c = 1; c < nc; ++c) {
        if (to_super_m[c] > 0)
            edges.push_back({c, 0, to_super_w[c], to_super_m[c]});
        if (from_super_m[c] > 0)
            edges.push_back({0, c, from_super_w[c], from_super_m[c]});
    }
    std::sort(edges.begin(), edges.end(), [](const ContractedEdge& a, const ContractedEdge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });

    return ContractedGraph(nc, 0, std::move(edges), std::move(original_ids));
}

} // namespace casrec
