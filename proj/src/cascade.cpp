#include "casrec/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace casrec {

namespace {

constexpr double kUniformProbFloor = 1e-9;

struct RoundAttempt {
    NodeId target;
    NodeId attacker;
};

Cascade finish_cascade(const ProbGraph& g, NodeId source,
                       const std::vector<NodeId>& members,
                       const std::vector<NodeId>& parent) {
    Cascade c;
    c.source = source;
    c.tree = make_tree(g.num_nodes(), source, members, parent);
    return c;
}

// Shared round loop for both models. `attempt` draws the success of one
// (attacker, target) trial; `once` limits each attacker to a single round
// of trials (independent-cascade semantics).
Cascade spread(const ProbGraph& g, NodeId source, double target_fraction,
               Rng& rng, int retry_cap, bool once,
               const std::function<bool(NodeId, NodeId, Rng&)>& attempt);

} // namespace

ProbGraph assign_uniform_probs(const ProbGraph& g, Rng& rng) {
    std::vector<double> probs(g.num_edges());
    for (double& p : probs)
        p = kUniformProbFloor + (1.0 - kUniformProbFloor) * rng.next_double();
    return g.with_probs(probs);
}

namespace {

Cascade spread(const ProbGraph& g, NodeId source, double target_fraction,
               Rng& rng, int retry_cap, bool once,
               const std::function<bool(NodeId, NodeId, Rng&)>& attempt) {
    const NodeId n = g.num_nodes();
    if (source < 0 || source >= n)
        throw std::invalid_argument("simulate: source out of range");
    if (!(target_fraction > 0.0) || target_fraction > 1.0)
        throw std::invalid_argument("simulate: target fraction outside (0,1]");
    const double target = target_fraction * static_cast<double>(n) - 1e-9;

    for (int attempt_no = 0; attempt_no < retry_cap; ++attempt_no) {
        std::vector<char> infected(n, 0);
        std::vector<NodeId> parent(n, Tree::kNoParent);
        std::vector<NodeId> members{source};
        infected[source] = 1;
        // Nodes whose out-edges still get trials: everyone infected under
        // SI, only the newest round under IC.
        std::vector<NodeId> active{source};

        std::vector<RoundAttempt> successes;
        std::vector<NodeId> attackers;

        while (static_cast<double>(members.size()) < target) {
            successes.clear();
            bool any_candidate = false;
            for (NodeId u : active) {
                const auto nbrs = g.out_neighbors(u);
                for (NodeId v : nbrs) {
                    if (infected[v])
                        continue;
                    any_candidate = true;
                    if (attempt(u, v, rng))
                        successes.push_back({v, u});
                }
            }
            if (!any_candidate && !once)
                break; // nothing left to try, epidemic covered its reach
            if (successes.empty()) {
                if (once)
                    break; // IC frontier exhausted its chances
                continue;  // SI keeps trying next round
            }

            // Group by target (already sorted by attacker iteration order
            // within each target; sort by target for determinism).
            std::stable_sort(successes.begin(), successes.end(),
                             [](const RoundAttempt& a, const RoundAttempt& b) {
                                 return a.target < b.target;
                             });
            std::vector<NodeId> newly;
            for (std::size_t i = 0; i < successes.size();) {
                const NodeId v = successes[i].target;
                attackers.clear();
                while (i < successes.size() && successes[i].target == v)
                    attackers.push_back(successes[i++].attacker);
                const std::size_t pick =
                    attackers.size() == 1
                        ? 0
                        : static_cast<std::size_t>(rng.next_below(attackers.size()));
                infected[v] = 1;
                parent[v] = attackers[pick];
                members.push_back(v);
                newly.push_back(v);
            }
            if (once)
                active = std::move(newly);
            else
                active.insert(active.end(), newly.begin(), newly.end());
        }

        if (static_cast<double>(members.size()) >= target)
            return finish_cascade(g, source, members, parent);
    }
    throw std::runtime_error(
        "simulate: cascade died out before reaching the target fraction in " +
        std::to_string(retry_cap) + " attempts");
}

std::vector<NodeId> sample_subset(const std::vector<NodeId>& pool,
                                  std::size_t k, Rng& rng) {
    std::vector<NodeId> shuffled = pool;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(rng.next_below(shuffled.size() - i));
        std::swap(shuffled[i], shuffled[j]);
    }
    shuffled.resize(k);
    std::sort(shuffled.begin(), shuffled.end());
    return shuffled;
}

} // namespace

Cascade simulate_si(const ProbGraph& g, double beta, NodeId source,
                    double target_fraction, Rng& rng, int retry_cap) {
    if (beta < 0.0 || beta > 1.0)
        throw std::invalid_argument("simulate_si: beta outside [0,1]");
    if (beta == 0.0) {
        // Can never grow; valid only when the source alone meets the target.
        if (target_fraction * static_cast<double>(g.num_nodes()) <= 1.0 + 1e-9) {
            Cascade c;
            c.source = source;
            c.tree = make_tree(g.num_nodes(), source, {source},
                               std::vector<NodeId>(g.num_nodes(), Tree::kNoParent));
            return c;
        }
        throw std::runtime_error("simulate_si: beta is zero, cascade cannot grow");
    }
    return spread(g, source, target_fraction, rng, retry_cap, false,
                  [beta](NodeId, NodeId, Rng& r) { return r.next_double() < beta; });
}

Cascade simulate_ic(const ProbGraph& g, NodeId source, double target_fraction,
                    Rng& rng, int retry_cap) {
    return spread(g, source, target_fraction, rng, retry_cap, true,
                  [&g](NodeId u, NodeId v, Rng& r) {
                      return r.next_double() < g.edge_prob(u, v);
                  });
}

Observation observe(const Cascade& c, const ProbGraph& g, double obs_fraction,
                    double uninfected_fraction, Rng& rng) {
    const auto& infected = c.infected();
    if (infected.empty())
        throw std::invalid_argument("observe: empty infected set");
    if (!(obs_fraction > 0.0) || obs_fraction > 1.0)
        throw std::invalid_argument("observe: observation fraction outside (0,1]");

    const std::size_t k = std::min<std::size_t>(
        infected.size(),
        std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(
                                     obs_fraction * static_cast<double>(infected.size())))));

    Observation o;
    o.observed_infected = sample_subset(infected, k, rng);

    if (uninfected_fraction > 0.0) {
        std::vector<char> is_infected(g.num_nodes(), 0);
        for (NodeId u : infected)
            is_infected[u] = 1;
        std::vector<NodeId> uninfected;
        for (NodeId u = 0; u < g.num_nodes(); ++u)
            if (!is_infected[u])
                uninfected.push_back(u);
        const std::size_t ku = std::min<std::size_t>(
            uninfected.size(),
            static_cast<std::size_t>(std::lround(
                uninfected_fraction * static_cast<double>(uninfected.size()))));
        if (ku > 0)
            o.observed_uninfected = sample_subset(uninfected, ku, rng);
    }
    return o;
}

} // namespace casrec
