// inference.hpp -- the reconstruction pipeline: restriction, root
// selection, sampling, importance correction, and marginal estimation.

#ifndef CASREC_INFERENCE_HPP
#define CASREC_INFERENCE_HPP

#include <cstdint>
#include <map>
#include <span>
#include <utility>

#include "casrec/cascade.hpp"
#include "casrec/chain.hpp"
#include "casrec/graph.hpp"
#include "casrec/sir.hpp"
#include "casrec/tree.hpp"

namespace casrec {

enum class SamplerKind { kLerw, kTrim };
enum class RootStrategy { kMinDist, kPageRank, kGiven, kTrueRoot };

struct ReconConfig {
    SamplerKind sampler = SamplerKind::kLerw;
    int n_samples = 1000;
    bool resample = true; // importance-resample to the target distribution
    ResampleScheme scheme = ResampleScheme::kMultinomial;
    RootStrategy root_strategy = RootStrategy::kMinDist;
    NodeId given_root = -1; // for kGiven
    NodeId true_root = -1;  // for kTrueRoot, supplied by the harness
    std::uint64_t seed = 0;
    int workers = 1;
    // Weight-average marginals over the unique proposal samples instead of
    // counting over the resampled multiset.
    bool weighted_average = false;
};

// Monte-Carlo marginals. Node probabilities cover unobserved nodes only;
// edge probabilities are on root-outward (graph direction) edges and
// stored sparsely, absent edges having probability zero.
struct MarginalEstimate {
    NodeId root = -1;
    std::map<NodeId, double> node_prob;
    std::map<std::pair<NodeId, NodeId>, double> edge_prob;
};

// Node minimizing the sum over terminals of shortest-path distance from
// the node to the terminal, edges weighted -log p. Ties break to the
// smallest id. Throws if no node reaches every terminal.
NodeId root_min_dist(const ProbGraph& g, std::span<const NodeId> terminals);

// Node with the highest personalized PageRank score, personalization
// 1/|O| on the observed nodes; observed-uninfected nodes are excluded
// from the argmax. Ties break to the smallest id.
NodeId root_pagerank(const ProbGraph& g, const Observation& o,
                     double damping = 0.85);

// Fraction of trees containing each unobserved node / each root-outward
// edge. All trees must share one root.
MarginalEstimate estimate_marginals(std::span<const Tree> trees,
                                    const ProbGraph& g, const Observation& o);

// Full pipeline on the observation: restrict away reported-uninfected
// nodes, pick the root, sample cfg.n_samples Steiner trees, correct with
// importance resampling, and estimate marginals. Returned ids refer to
// the input graph g. Deterministic for a fixed (config, worker count).
MarginalEstimate reconstruct(const ProbGraph& g, const Observation& o,
                             const ReconConfig& cfg);

} // namespace casrec

#endif
