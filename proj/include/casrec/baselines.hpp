// baselines.hpp -- comparison methods and the average-precision metric.

#ifndef CASREC_BASELINES_HPP
#define CASREC_BASELINES_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "casrec/cascade.hpp"
#include "casrec/graph.hpp"
#include "casrec/tree.hpp"

namespace casrec {

// Scored candidates, higher score = more likely infected. Observed nodes
// are excluded from the candidate set before scoring.
template <typename Key>
using Ranked = std::vector<std::pair<Key, double>>;

using EdgeKey = std::pair<NodeId, NodeId>;
using NodeScores = Ranked<NodeId>;
using EdgeScores = Ranked<EdgeKey>;

struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& e) const noexcept {
        return std::hash<std::uint64_t>{}(
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.first)) << 32) ^
            static_cast<std::uint32_t>(e.second));
    }
};

using NodeSet = std::unordered_set<NodeId>;
using EdgeSet = std::unordered_set<EdgeKey, EdgeKeyHash>;

// Personalized PageRank scores over the unobserved nodes, personalization
// 1/|O| on the observed ones.
NodeScores pagerank_baseline(const ProbGraph& g, const Observation& o,
                             double damping = 0.85);

struct SteinerBaseline {
    Tree tree;        // rooted at the min-dist centroid
    NodeScores nodes; // 1 on tree members, 0 elsewhere (observed excluded)
};

// Approximate minimum-weight Steiner tree under -log p edge weights:
// starting from the min-dist root, repeatedly attach the terminal with the
// cheapest shortest path to the current tree. Throws when some terminal is
// unreachable.
SteinerBaseline min_steiner_tree(const ProbGraph& g,
                                 std::span<const NodeId> terminals);

// AP over the score-descending ranking, ties expanded in ascending key
// order. Throws when no candidate is a positive.
template <typename Key, typename TruthSet>
double average_precision(const Ranked<Key>& pred, const TruthSet& truth) {
    std::vector<std::pair<Key, double>> ranked(pred.begin(), pred.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    std::size_t positives = 0;
    for (const auto& [key, score] : ranked)
        if (truth.count(key))
            ++positives;
    if (positives == 0)
        throw std::domain_error("average_precision: no positive candidates");

    double ap = 0.0;
    std::size_t hits = 0;
    for (std::size_t rank = 0; rank < ranked.size(); ++rank) {
        if (!truth.count(ranked[rank].first))
            continue;
        ++hits;
        const double precision =
            static_cast<double>(hits) / static_cast<double>(rank + 1);
        ap += precision / static_cast<double>(positives);
    }
    return ap;
}

} // namespace casrec

#endif
