// oracle.hpp -- brute-force enumeration ground truth for tiny instances.
//
// Everything here is exponential-time by design and guarded by a hard node
// cap. The enumerations are kept independent of the samplers and of the
// Laplacian determinant code so they can serve as their cross-check.

#ifndef CASREC_ORACLE_HPP
#define CASREC_ORACLE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "casrec/chain.hpp"
#include "casrec/graph.hpp"
#include "casrec/tree.hpp"

namespace casrec::oracle {

inline constexpr NodeId kDefaultNodeCap = 8;

// Exhaustive distribution over a finite tree family. Support trees are
// pairwise distinct under the canonical edge-sorted encoding and sorted by
// that key; mass is normalized to 1 (+-1e-12).
struct ExactDistribution {
    std::vector<Tree> support;
    std::vector<double> mass;
    std::vector<double> weight; // unnormalized, aligned with support
    double total_weight = 0.0;
    std::unordered_map<std::string, std::size_t> index; // canonical key -> pos

    std::size_t size() const { return support.size(); }
    // Mass of a tree by canonical key; trees outside the support have 0.
    double mass_of(const std::string& key) const;
};

// All spanning in-trees of the chain rooted at r, mass proportional to the
// product of chain edge weights. Throws if the chain exceeds `node_cap`.
ExactDistribution enumerate_in_trees(const MarkovChain& chain, NodeId r,
                                     NodeId node_cap = kDefaultNodeCap);

// All Steiner trees rooted at r spanning `terminals` (every leaf a
// terminal), mass proportional to the product of chain edge weights.
// Throws on cap violation or empty support.
ExactDistribution enumerate_steiner_trees(const MarkovChain& chain, NodeId r,
                                          std::span<const NodeId> terminals,
                                          NodeId node_cap = kDefaultNodeCap);

// Same support re-weighted by the root-outward graph probabilities
// (the reconstruction target distribution).
ExactDistribution reweight_to_target(const ExactDistribution& dist,
                                     const ProbGraph& g);

// Same support re-weighted by w(T) * in-tree weight sum of the contracted
// graph (the distribution the trim sampler draws from).
ExactDistribution reweight_by_contraction(const ExactDistribution& dist,
                                          const MarkovChain& chain);

// Total variation distance between empirical counts (keyed by canonical
// tree encoding) and an exact distribution. Unseen support entries and
// out-of-support counts both contribute fully.
double tv_distance(const std::unordered_map<std::string, std::int64_t>& counts,
                   const ExactDistribution& exact);

// Total variation distance between two empirical count maps.
double tv_distance(const std::unordered_map<std::string, std::int64_t>& a,
                   const std::unordered_map<std::string, std::int64_t>& b);

// Weighted count of spanning in-trees of an explicit directed graph,
// computed by exhaustive enumeration. Parallel edges are allowed and
// contribute their weight sum. Returns 0 if no in-tree exists.
double in_tree_weight_sum(NodeId n, const std::vector<GraphEdge>& edges,
                          NodeId root, NodeId node_cap = kDefaultNodeCap);

// Sum of w(T) over spanning in-trees of the chain (rooted at t.root) that
// contain every edge of t. Brute-force reference for the trim bias.
double spanning_weight_sum_containing(const MarkovChain& chain, const Tree& t,
                                      NodeId node_cap = kDefaultNodeCap);

} // namespace casrec::oracle

#endif
