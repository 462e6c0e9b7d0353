// sampling.hpp -- random-walk tree samplers on the Markov chain.

#ifndef CASREC_SAMPLING_HPP
#define CASREC_SAMPLING_HPP

#include <cstdint>
#include <span>

#include "casrec/chain.hpp"
#include "casrec/rng.hpp"
#include "casrec/tree.hpp"

namespace casrec {

struct SamplerLimits {
    // Abort a single tree draw after this many chain steps. Unreachable on
    // irreducible chains; guards against disconnected or malformed input.
    std::uint64_t step_budget = 1'000'000'000;
};

// One step of the walk: successor v of u with probability w(u,v), by
// inverse CDF on the node's weight prefix sums.
NodeId random_successor(const MarkovChain& chain, NodeId u, Rng& rng);

// Wilson's spanning-tree sampler: a spanning in-tree toward r, drawn with
// probability proportional to its chain weight. Requires a strongly
// connected chain.
Tree random_tree_with_root(const MarkovChain& chain, NodeId r, Rng& rng,
                           const SamplerLimits& limits = {});

// Loop-erased-walk Steiner sampler: grows the tree from r by walking from
// each terminal not yet attached, erasing cycles as they form. Equivalent
// to trimming a full spanning-tree draw to the terminal paths, so the
// output distribution carries the same contraction-determinant factor as
// the trim sampler: proportional to w(T_X) * exp(trim_bias). Correct the
// bias downstream when the plain w(T_X)-proportional law is needed.
Tree lerw_steiner(const MarkovChain& chain, NodeId r,
                  std::span<const NodeId> terminals, Rng& rng,
                  const SamplerLimits& limits = {});

// Prunes a spanning in-tree to the union of terminal-to-root paths.
// Throws if `spanning` is not rooted at r or misses a terminal.
Tree trim_tree(const Tree& spanning, NodeId r, std::span<const NodeId> terminals);

struct TrimSample {
    Tree tree;
    double log_bias; // log in-tree weight sum of the contracted graph
};

// Spanning-then-prune Steiner sampler. The returned tree is distributed
// proportionally to w(T) * exp(log_bias); the bias term is returned so the
// caller can importance-correct.
TrimSample trim_steiner(const MarkovChain& chain, NodeId r,
                        std::span<const NodeId> terminals, Rng& rng,
                        const SamplerLimits& limits = {});

} // namespace casrec

#endif
