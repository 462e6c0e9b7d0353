#include "casrec/sir.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "casrec/contraction.hpp"
#include "casrec/laplacian.hpp"

namespace casrec {

namespace {

// Sum of log p(u) over tree members except the root, p(u) being the
// weighted in-degree in the source graph. By the weight-normalization
// identity this equals log_target - log_proposal for walk samples.
double log_indegree_product(const ProbGraph& g, const Tree& t) {
    double sum = 0.0;
    for (NodeId u : t.nodes)
        if (u != t.root)
            sum += std::log(g.weighted_in_degree(u));
    return sum;
}

} // namespace

double trim_bias(const MarkovChain& chain, const Tree& t) {
    const ContractedGraph gc = contract(chain, t);
    const auto edges = gc.weighted_edges();
    return laplacian_minor_logdet(gc.num_nodes(), edges, gc.supernode());
}

std::vector<WeightedSample> attach_target_weights(const ProbGraph& g,
                                                  const MarkovChain& chain,
                                                  std::vector<Tree> trees) {
    std::vector<WeightedSample> out;
    out.reserve(trees.size());
    for (Tree& t : trees) {
        WeightedSample s;
        s.log_proposal = tree_log_weight(chain, t);
        s.log_target = target_log_probability(g, t);
        s.log_sir_weight = log_indegree_product(g, t);
        s.tree = std::move(t);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<WeightedSample> attach_trim_weights(const ProbGraph& g,
                                                const MarkovChain& chain,
                                                std::vector<Tree> trees,
                                                std::span<const double> biases) {
    if (biases.size() != trees.size())
        throw std::invalid_argument("attach_trim_weights: bias count mismatch");
    std::vector<WeightedSample> out;
    out.reserve(trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i) {
        WeightedSample s;
        s.log_proposal = tree_log_weight(chain, trees[i]) + biases[i];
        s.log_target = target_log_probability(g, trees[i]);
        s.log_sir_weight = log_indegree_product(g, trees[i]) - biases[i];
        s.tree = std::move(trees[i]);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Tree> sir_resample(std::span<const WeightedSample> samples,
                               std::size_t m, Rng& rng, ResampleScheme scheme) {
    if (samples.empty())
        throw std::invalid_argument("sir_resample: no samples");

    double max_log = -std::numeric_limits<double>::infinity();
    for (const WeightedSample& s : samples)
        max_log = std::max(max_log, s.log_sir_weight);
    if (!std::isfinite(max_log))
        throw std::domain_error("sir_resample: all weights are zero");

    std::vector<double> cum(samples.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        acc += std::exp(samples[i].log_sir_weight - max_log);
        cum[i] = acc;
    }
    const double total = acc;

    std::vector<Tree> out;
    out.reserve(m);
    const auto pick = [&](double point) {
        const auto it = std::upper_bound(cum.begin(), cum.end(), point);
        const std::size_t idx =
            std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()),
                                  samples.size() - 1);
        out.push_back(samples[idx].tree);
    };

    if (scheme == ResampleScheme::kMultinomial) {
        for (std::size_t k = 0; k < m; ++k)
            pick(rng.next_double() * total);
    } else {
        const double stride = total / static_cast<double>(m);
        const double offset = rng.next_double() * stride;
        for (std::size_t k = 0; k < m; ++k)
            pick(offset + stride * static_cast<double>(k));
    }
    return out;
}

} // namespace casrec
