// cascade.hpp -- ground-truth cascade generation and partial observation.

#ifndef CASREC_CASCADE_HPP
#define CASREC_CASCADE_HPP

#include <vector>

#include "casrec/graph.hpp"
#include "casrec/rng.hpp"
#include "casrec/tree.hpp"

namespace casrec {

// The realized infection tree: root is the source, each infected node's
// parent link points to its unique infector.
struct Cascade {
    NodeId source = 0;
    Tree tree;

    const std::vector<NodeId>& infected() const { return tree.nodes; }
};

// Partial observation of a cascade: X reported infected, U reported
// uninfected, disjoint. Both sorted ascending.
struct Observation {
    std::vector<NodeId> observed_infected;
    std::vector<NodeId> observed_uninfected;
};

// Independent p ~ U(eps, 1] per directed edge, eps = 1e-9 so probabilities
// stay strictly positive and the chain stays well defined.
ProbGraph assign_uniform_probs(const ProbGraph& g, Rng& rng);

// Discrete-time susceptible-infected process: every infected node tries to
// infect each uninfected out-neighbor with probability beta each round;
// simultaneous infections pick one parent uniformly. Stops at the first
// round where the infected count reaches target_fraction * |V|, keeping
// the overshoot. Died-out attempts are retried with fresh randomness up to
// retry_cap times, then an error is thrown.
Cascade simulate_si(const ProbGraph& g, double beta, NodeId source,
                    double target_fraction, Rng& rng, int retry_cap = 100);

// Independent-cascade process: each node, in the round after it is
// infected, gets one chance to infect each uninfected out-neighbor with
// the edge's probability. Stop and retry semantics as simulate_si.
Cascade simulate_ic(const ProbGraph& g, NodeId source, double target_fraction,
                    Rng& rng, int retry_cap = 100);

// Uniform random observation of a cascade: X is round(obs_fraction *
// |infected|) infected nodes (at least one); U is round(uninfected_fraction
// * |uninfected|) uninfected nodes, empty when the fraction is zero.
Observation observe(const Cascade& c, const ProbGraph& g, double obs_fraction,
                    double uninfected_fraction, Rng& rng);

} // namespace casrec

#endif
