#include "casrec/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "casrec/sir.hpp"

namespace casrec {

namespace {

constexpr std::size_t kLinearScanMaxDegree = 8;

[[noreturn]] void budget_exceeded(NodeId at) {
    throw std::runtime_error(
        "sampler: step budget exceeded at node " + std::to_string(at) +
        "; the chain is likely not strongly connected");
}

// Core of Wilson's method: attach each target in turn by a loop-erased
// walk. Overwriting next[] on revisits is the loop erasure.
Tree wilson(const MarkovChain& chain, NodeId r, std::span<const NodeId> targets,
            Rng& rng, const SamplerLimits& limits) {
    const NodeId n = chain.num_nodes();
    if (r < 0 || r >= n)
        throw std::invalid_argument("sampler: root out of range");

    std::vector<NodeId> next(n, Tree::kNoParent);
    std::vector<char> in_tree(n, 0);
    in_tree[r] = 1;

    std::uint64_t steps = 0;
    for (NodeId start : targets) {
        if (start < 0 || start >= n)
            throw std::invalid_argument("sampler: terminal out of range");
        NodeId u = start;
        while (!in_tree[u]) {
            next[u] = random_successor(chain, u, rng);
            u = next[u];
            if (++steps > limits.step_budget)
                budget_exceeded(u);
        }
        u = start;
        while (!in_tree[u]) {
            in_tree[u] = 1;
            u = next[u];
        }
    }

    Tree t;
    t.root = r;
    t.parent.assign(n, Tree::kNoParent);
    for (NodeId u = 0; u < n; ++u) {
        if (!in_tree[u])
            continue;
        t.nodes.push_back(u);
        if (u != r)
            t.parent[u] = next[u];
    }
    return t;
}

} // namespace

NodeId random_successor(const MarkovChain& chain, NodeId u, Rng& rng) {
    const auto cum = chain.cumulative(u);
    if (cum.empty())
        throw std::logic_error("random_successor: node " + std::to_string(u) +
                               " has no out-edges");
    const double point = rng.next_double();
    std::size_t idx;
    if (cum.size() <= kLinearScanMaxDegree) {
        idx = 0;
        while (idx + 1 < cum.size() && cum[idx] <= point)
            ++idx;
    } else {
        idx = static_cast<std::size_t>(
            std::upper_bound(cum.begin(), cum.end(), point) - cum.begin());
        if (idx >= cum.size())
            idx = cum.size() - 1;
    }
    return chain.successors(u)[idx];
}

Tree random_tree_with_root(const MarkovChain& chain, NodeId r, Rng& rng,
                           const SamplerLimits& limits) {
    std::vector<NodeId> all(chain.num_nodes());
    std::iota(all.begin(), all.end(), 0);
    return wilson(chain, r, all, rng, limits);
}

Tree lerw_steiner(const MarkovChain& chain, NodeId r,
                  std::span<const NodeId> terminals, Rng& rng,
                  const SamplerLimits& limits) {
    if (terminals.empty())
        throw std::invalid_argument("lerw_steiner: empty terminal set");
    return wilson(chain, r, terminals, rng, limits);
}

Tree trim_tree(const Tree& spanning, NodeId r, std::span<const NodeId> terminals) {
    if (spanning.root != r)
        throw std::invalid_argument("trim_tree: tree not rooted at r");
    const NodeId n = static_cast<NodeId>(spanning.parent.size());
    std::vector<char> in_spanning(n, 0);
    for (NodeId u : spanning.nodes)
        in_spanning[u] = 1;

    std::vector<char> keep(n, 0);
    keep[r] = 1;
    for (NodeId x : terminals) {
        if (x < 0 || x >= n || !in_spanning[x])
            throw std::invalid_argument("trim_tree: terminal not in spanning tree");
        NodeId u = x;
        while (!keep[u]) {
            keep[u] = 1;
            u = spanning.parent[u];
        }
    }

    Tree t;
    t.root = r;
    t.parent.assign(n, Tree::kNoParent);
    for (NodeId u = 0; u < n; ++u) {
        if (!keep[u])
            continue;
        t.nodes.push_back(u);
        if (u != r)
            t.parent[u] = spanning.parent[u];
    }
    return t;
}

TrimSample trim_steiner(const MarkovChain& chain, NodeId r,
                        std::span<const NodeId> terminals, Rng& rng,
                        const SamplerLimits& limits) {
    if (terminals.empty())
        throw std::invalid_argument("trim_steiner: empty terminal set");
    const Tree spanning = random_tree_with_root(chain, r, rng, limits);
    TrimSample s;
    s.tree = trim_tree(spanning, r, terminals);
    s.log_bias = trim_bias(chain, s.tree);
    return s;
}

} // namespace casrec
