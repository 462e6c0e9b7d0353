// sir.hpp -- importance weights and resampling from proposal to target.

#ifndef CASREC_SIR_HPP
#define CASREC_SIR_HPP

#include <span>
#include <vector>

#include "casrec/chain.hpp"
#include "casrec/graph.hpp"
#include "casrec/rng.hpp"
#include "casrec/tree.hpp"

namespace casrec {

// A sampled tree with the log-domain quantities needed to correct the
// sampler's distribution to the reconstruction target. log_sir_weight is
// log_target - log_proposal up to a constant shared by all samples.
struct WeightedSample {
    Tree tree;
    double log_proposal = 0.0;
    double log_target = 0.0;
    double log_sir_weight = 0.0;
};

// Log of the weighted spanning in-tree sum of the contracted graph of t on
// the chain, rooted at the supernode: the factor by which the trim sampler
// over-selects t. Zero when t spans the whole chain.
double trim_bias(const MarkovChain& chain, const Tree& t);

// Weights for trees drawn proportionally to their chain weight (the walk
// samplers): resampling by these reaches the target proportional to the
// product of graph probabilities.
std::vector<WeightedSample> attach_target_weights(const ProbGraph& g,
                                                  const MarkovChain& chain,
                                                  std::vector<Tree> trees);

// Weights for trim-sampler output: the proposal carries the extra
// contraction determinant, so its log is subtracted from the weight.
// biases[i] must be trim_bias of trees[i].
std::vector<WeightedSample> attach_trim_weights(const ProbGraph& g,
                                                const MarkovChain& chain,
                                                std::vector<Tree> trees,
                                                std::span<const double> biases);

enum class ResampleScheme {
    kMultinomial, // classical SIR, with replacement
    kSystematic   // lower-variance stratified variant
};

// Draws m trees with replacement, probability proportional to
// exp(log_sir_weight), normalized through log-sum-exp.
// Throws if samples is empty or every weight is -infinity.
std::vector<Tree> sir_resample(std::span<const WeightedSample> samples,
                               std::size_t m, Rng& rng,
                               ResampleScheme scheme = ResampleScheme::kMultinomial);

} // namespace casrec

#endif
