#include "casrec/cycle_popping.hpp"

#include <stdexcept>

namespace casrec {

StackOracle::StackOracle(const MarkovChain& chain, Rng rng)
    : chain_(&chain), rng_(rng), stacks_(chain.num_nodes()) {}

NodeId StackOracle::entry(NodeId u, std::size_t i) {
    auto& stack = stacks_[u];
    while (stack.size() <= i)
        stack.push_back(random_successor(*chain_, u, rng_));
    return stack[i];
}

Tree cycle_popping_steiner(const MarkovChain& chain, NodeId r,
                           std::span<const NodeId> terminals, Rng& rng,
                           const SamplerLimits& limits) {
    const NodeId n = chain.num_nodes();
    if (r < 0 || r >= n)
        throw std::invalid_argument("cycle_popping: root out of range");
    if (terminals.empty())
        throw std::invalid_argument("cycle_popping: empty terminal set");
    for (NodeId x : terminals)
        if (x < 0 || x >= n)
            throw std::invalid_argument("cycle_popping: terminal out of range");

    StackOracle stacks(chain, Rng(rng.next_u64()));
    std::vector<std::size_t> top(n, 0);
    std::vector<char> resolved(n, 0); // top-pointer path known to reach r
    resolved[r] = 1;

    std::vector<char> on_path(n, 0);
    std::vector<NodeId> path;
    std::uint64_t steps = 0;

    for (NodeId x : terminals) {
        // Walk the stack-top graph from x. A revisit of the current path is
        // a cycle in the top graph: pop every node on it and rescan from the
        // meeting point, whose top entry has changed.
        path.clear();
        NodeId u = x;
        while (!resolved[u]) {
            if (on_path[u]) {
                std::size_t first = path.size();
                while (first > 0 && path[first - 1] != u)
                    --first;
                for (std::size_t i = first - 1; i < path.size(); ++i) {
                    ++top[path[i]];
                    on_path[path[i]] = 0;
                }
                path.resize(first - 1);
                continue;
            }
            on_path[u] = 1;
            path.push_back(u);
            u = stacks.entry(u, top[u]);
            if (++steps > limits.step_budget)
                throw std::runtime_error("cycle_popping: step budget exceeded");
        }
        for (NodeId v : path) {
            resolved[v] = 1;
            on_path[v] = 0;
        }
    }

    Tree t;
    t.root = r;
    t.parent.assign(n, Tree::kNoParent);
    for (NodeId u = 0; u < n; ++u) {
        if (!resolved[u])
            continue;
        t.nodes.push_back(u);
        if (u != r)
            t.parent[u] = stacks.entry(u, top[u]);
    }
    return t;
}

} // namespace casrec
