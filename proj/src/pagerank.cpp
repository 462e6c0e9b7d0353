#include "casrec/pagerank.hpp"

#include <cmath>
#include <stdexcept>

namespace casrec {

std::vector<double> personalized_pagerank(const ProbGraph& g,
                                          const std::vector<double>& personalization,
                                          double damping, double tol, int max_iters) {
    const NodeId n = g.num_nodes();
    if (personalization.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("pagerank: personalization size mismatch");
    if (damping < 0.0 || damping >= 1.0)
        throw std::invalid_argument("pagerank: damping outside [0,1)");

    std::vector<double> out_weight(n, 0.0);
    for (NodeId u = 0; u < n; ++u)
        for (double p : g.out_probs(u))
            out_weight[u] += p;

    std::vector<double> x = personalization;
    std::vector<double> next(n, 0.0);
    for (int iter = 0; iter < max_iters; ++iter) {
        double dangling = 0.0;
        for (NodeId u = 0; u < n; ++u)
            if (out_weight[u] == 0.0)
                dangling += x[u];

        std::fill(next.begin(), next.end(), 0.0);
        for (NodeId u = 0; u < n; ++u) {
            if (out_weight[u] == 0.0)
                continue;
            const double share = x[u] / out_weight[u];
            const auto nbrs = g.out_neighbors(u);
            const auto probs = g.out_probs(u);
            for (std::size_t i = 0; i < nbrs.size(); ++i)
                next[nbrs[i]] += share * probs[i];
        }
        double residual = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            next[v] = (1.0 - damping) * personalization[v] +
                      damping * (next[v] + dangling * personalization[v]);
            residual += std::abs(next[v] - x[v]);
        }
        x.swap(next);
        if (residual < tol)
            return x;
    }
    throw std::runtime_error("pagerank: power iteration did not converge");
}

} // namespace casrec
