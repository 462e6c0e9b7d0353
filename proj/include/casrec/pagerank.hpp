// pagerank.hpp -- personalized PageRank by power iteration.

#ifndef CASREC_PAGERANK_HPP
#define CASREC_PAGERANK_HPP

#include <vector>

#include "casrec/graph.hpp"

namespace casrec {

inline constexpr double kPageRankDamping = 0.85;
inline constexpr double kPageRankTol = 1e-10;

// Personalized PageRank on the graph's natural random-walk transition
// (edge probabilities normalized out of each node). `personalization`
// must be non-negative and sum to 1. Mass that lands on nodes without
// out-edges teleports back through the personalization vector. Iterates
// until the L1 residual falls below tol.
std::vector<double> personalized_pagerank(const ProbGraph& g,
                                          const std::vector<double>& personalization,
                                          double damping = kPageRankDamping,
                                          double tol = kPageRankTol,
                                          int max_iters = 100000);

} // namespace casrec

#endif
