// cycle_popping.hpp -- stack-based reference sampler, equivalent in
// distribution to the loop-erased walk. Kept deliberately independent of
// the walk implementation; used for equivalence testing and verification.

#ifndef CASREC_CYCLE_POPPING_HPP
#define CASREC_CYCLE_POPPING_HPP

#include <span>
#include <vector>

#include "casrec/chain.hpp"
#include "casrec/rng.hpp"
#include "casrec/sampling.hpp"
#include "casrec/tree.hpp"

namespace casrec {

// Per-node infinite successor stacks, materialized on demand. Entry (u, i)
// is drawn from the chain's successor distribution at u, independently of
// every other entry, and is fixed once materialized.
class StackOracle {
public:
    StackOracle(const MarkovChain& chain, Rng rng);

    NodeId entry(NodeId u, std::size_t i);

private:
    const MarkovChain* chain_;
    Rng rng_;
    std::vector<std::vector<NodeId>> stacks_;
};

// Repeatedly finds a cycle in the stack-top graph on a walk from some
// terminal and pops it, until every terminal's top-pointer path reaches
// the root; the traversed edges then form the Steiner tree.
Tree cycle_popping_steiner(const MarkovChain& chain, NodeId r,
                           std::span<const NodeId> terminals, Rng& rng,
                           const SamplerLimits& limits = {});

} // namespace casrec

#endif
