// chain.hpp -- row-stochastic Markov chain on the transposed contact graph.

#ifndef CASREC_CHAIN_HPP
#define CASREC_CHAIN_HPP

#include <span>
#include <vector>

#include "casrec/graph.hpp"
#include "casrec/tree.hpp"

namespace casrec {

// The random-walk chain: edges are the transpose of the source graph's,
// weighted w(u,v) = p_vu / p(u) where p(u) is u's weighted in-degree in the
// source graph. Out-weights of every node sum to 1 (checked to 1e-12).
// Immutable after construction; safe to share across sampler threads.
class MarkovChain {
public:
    static constexpr double kStochasticTol = 1e-12;

    MarkovChain() = default;

    NodeId num_nodes() const { return n_; }
    std::size_t num_edges() const { return to_.size(); }

    std::size_t out_degree(NodeId u) const { return off_[u + 1] - off_[u]; }
    std::span<const NodeId> successors(NodeId u) const {
        return {to_.data() + off_[u], to_.data() + off_[u + 1]};
    }
    std::span<const double> weights(NodeId u) const {
        return {w_.data() + off_[u], w_.data() + off_[u + 1]};
    }
    // Prefix sums of weights(u); last entry pinned to 1 for sampling.
    std::span<const double> cumulative(NodeId u) const {
        return {cum_.data() + off_[u], cum_.data() + off_[u + 1]};
    }

    bool has_edge(NodeId u, NodeId v) const;
    double edge_weight(NodeId u, NodeId v) const; // throws if absent

    friend MarkovChain build_chain(const ProbGraph& g);

    // Chain with the given explicit adjacency; weights need not normalize.
    // Used for unweighted (simple random walk) chains and tests.
    static MarkovChain from_edges(NodeId n,
                                  const std::vector<GraphEdge>& edges,
                                  bool normalize);

private:
    NodeId n_ = 0;
    std::vector<std::size_t> off_;
    std::vector<NodeId> to_;
    std::vector<double> w_;
    std::vector<double> cum_;

    void finalize(bool normalize, bool check_stochastic);
};

// Transpose + in-degree normalization of the source graph. Throws if some
// node has zero weighted in-degree (nothing to normalize by).
MarkovChain build_chain(const ProbGraph& g);

// Sum of log w over the tree's chain-direction edges; root-only tree -> 0.
// Throws if a tree edge is absent from the chain.
double tree_log_weight(const MarkovChain& chain, const Tree& t);

// Sum of log p over the tree's root-outward graph edges (parent -> child in
// the source graph); root-only tree -> 0. Throws on a missing graph edge.
double target_log_probability(const ProbGraph& g, const Tree& t);

} // namespace casrec

#endif
