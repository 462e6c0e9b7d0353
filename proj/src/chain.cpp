#include "casrec/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace casrec {

bool MarkovChain::has_edge(NodeId u, NodeId v) const {
    const auto succ = successors(u);
    return std::binary_search(succ.begin(), succ.end(), v);
}

double MarkovChain::edge_weight(NodeId u, NodeId v) const {
    const auto succ = successors(u);
    const auto it = std::lower_bound(succ.begin(), succ.end(), v);
    if (it == succ.end() || *it != v)
        throw std::out_of_range("chain: no edge " + std::to_string(u) + " -> " +
                                std::to_string(v));
    return w_[off_[u] + static_cast<std::size_t>(it - succ.begin())];
}

void MarkovChain::finalize(bool normalize, bool check_stochastic) {
    cum_.resize(w_.size());
    for (NodeId u = 0; u < n_; ++u) {
        const std::size_t begin = off_[u], end = off_[u + 1];
        if (begin == end)
            continue;
        double sum = 0.0, comp = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const double y = w_[i] - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        if (normalize) {
            if (!(sum > 0.0))
                throw std::invalid_argument("chain: node " + std::to_string(u) +
                                            " has non-positive weight sum");
            for (std::size_t i = begin; i < end; ++i)
                w_[i] /= sum;
            sum = 1.0;
        }
        if (check_stochastic && std::abs(sum - 1.0) > kStochasticTol)
            throw std::logic_error("chain: out-weights of node " + std::to_string(u) +
                                   " sum to " + std::to_string(sum));
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            acc += w_[i];
            cum_[i] = acc;
        }
        if (check_stochastic || normalize)
            cum_[end - 1] = 1.0;
    }
}

MarkovChain build_chain(const ProbGraph& g) {
    MarkovChain c;
    c.n_ = g.num_nodes();
    c.off_.assign(static_cast<std::size_t>(c.n_) + 1, 0);

    for (NodeId u = 0; u < c.n_; ++u) {
        if (g.in_neighbors(u).empty())
            throw std::invalid_argument(
                "build_chain: node " + g.label(u) +
                " has zero weighted in-degree, cannot normalize");
        c.off_[static_cast<std::size_t>(u) + 1] =
            c.off_[u] + g.in_neighbors(u).size();
    }

    // Chain edge (u,v) mirrors graph edge (v,u); in_neighbors are sorted by
    // source id, so successor lists come out sorted.
    c.to_.resize(g.num_edges());
    c.w_.resize(g.num_edges());
    for (NodeId u = 0; u < c.n_; ++u) {
        const auto in_nbrs = g.in_neighbors(u);
        const auto in_probs = g.in_probs(u);
        const double total = g.weighted_in_degree(u);
        for (std::size_t i = 0; i < in_nbrs.size(); ++i) {
            c.to_[c.off_[u] + i] = in_nbrs[i];
            c.w_[c.off_[u] + i] = in_probs[i] / total;
        }
    }
    c.finalize(false, true);
    return c;
}

MarkovChain MarkovChain::from_edges(NodeId n, const std::vector<GraphEdge>& edges,
                                    bool normalize) {
    MarkovChain c;
    c.n_ = n;
    c.off_.assign(static_cast<std::size_t>(n) + 1, 0);
    std::vector<GraphEdge> sorted = edges;
    std::sort(sorted.begin(), sorted.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    for (const GraphEdge& e : sorted) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
            throw std::invalid_argument("chain: edge endpoint out of range");
        ++c.off_[static_cast<std::size_t>(e.from) + 1];
    }
    for (NodeId u = 0; u < n; ++u)
        c.off_[static_cast<std::size_t>(u) + 1] += c.off_[u];
    c.to_.resize(sorted.size());
    c.w_.resize(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        c.to_[i] = sorted[i].to;
        c.w_[i] = sorted[i].prob;
    }
    c.finalize(normalize, normalize);
    return c;
}

double tree_log_weight(const MarkovChain& chain, const Tree& t) {
    double sum = 0.0;
    for (NodeId u : t.nodes)
        if (u != t.root)
            sum += std::log(chain.edge_weight(u, t.parent[u]));
    return sum;
}

double target_log_probability(const ProbGraph& g, const Tree& t) {
    double sum = 0.0;
    for (NodeId u : t.nodes)
        if (u != t.root)
            sum += std::log(g.edge_prob(t.parent[u], u));
    return sum;
}

} // namespace casrec
