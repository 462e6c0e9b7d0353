#include "casrec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "casrec/contraction.hpp"

namespace casrec::oracle {

namespace {

void check_cap(NodeId n, NodeId cap, const char* what) {
    if (n > cap)
        throw std::invalid_argument(std::string(what) + ": " + std::to_string(n) +
                                    " nodes exceed enumeration cap " +
                                    std::to_string(cap));
}

// Enumerates every acyclic parent assignment over `members` (root included,
// parentless): each other member picks one out-edge leading to another
// member. Calls sink(parent, weight) for each spanning in-tree of the
// induced subgraph.
void for_each_in_tree(const std::vector<std::vector<std::pair<NodeId, double>>>& adj,
                      NodeId root, const std::vector<NodeId>& members,
                      const std::function<void(const std::vector<NodeId>&, double)>& sink) {
    std::vector<NodeId> order;
    for (NodeId u : members)
        if (u != root)
            order.push_back(u);

    const NodeId n = static_cast<NodeId>(adj.size());
    std::vector<char> in_members(n, 0);
    for (NodeId u : members)
        in_members[u] = 1;
    std::vector<NodeId> parent(n, Tree::kNoParent);

    std::function<void(std::size_t, double)> recurse = [&](std::size_t i, double w) {
        if (i == order.size()) {
            sink(parent, w);
            return;
        }
        const NodeId u = order[i];
        for (const auto& [v, wv] : adj[u]) {
            if (!in_members[v])
                continue;
            // Reject choices that close a cycle among already-assigned nodes.
            NodeId probe = v;
            while (probe != Tree::kNoParent && probe != u)
                probe = parent[probe];
            if (probe == u)
                continue;
            parent[u] = v;
            recurse(i + 1, w * wv);
            parent[u] = Tree::kNoParent;
        }
    };
    recurse(0, 1.0);
}

std::vector<std::vector<std::pair<NodeId, double>>> chain_adjacency(const MarkovChain& chain) {
    std::vector<std::vector<std::pair<NodeId, double>>> adj(chain.num_nodes());
    for (NodeId u = 0; u < chain.num_nodes(); ++u) {
        const auto succ = chain.successors(u);
        const auto w = chain.weights(u);
        for (std::size_t i = 0; i < succ.size(); ++i)
            adj[u].emplace_back(succ[i], w[i]);
    }
    return adj;
}

ExactDistribution finalize(std::vector<Tree> trees, std::vector<double> weights) {
    ExactDistribution dist;
    std::vector<std::size_t> perm(trees.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::string> keys(trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i)
        keys[i] = trees[i].canonical_key();
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

    dist.total_weight = 0.0;
    const std::string* prev_key = nullptr;
    for (std::size_t i : perm) {
        if (prev_key && *prev_key == keys[i])
            throw std::logic_error("oracle: duplicate tree in enumeration");
        prev_key = &keys[i];
        dist.support.push_back(std::move(trees[i]));
        dist.weight.push_back(weights[i]);
        dist.total_weight += weights[i];
    }
    if (!(dist.total_weight > 0.0))
        throw std::domain_error("oracle: tree family has zero total weight");
    dist.mass.resize(dist.weight.size());
    for (std::size_t i = 0; i < dist.weight.size(); ++i)
        dist.mass[i] = dist.weight[i] / dist.total_weight;
    for (std::size_t i = 0; i < dist.support.size(); ++i)
        dist.index.emplace(dist.support[i].canonical_key(), i);
    return dist;
}

} // namespace

double ExactDistribution::mass_of(const std::string& key) const {
    const auto it = index.find(key);
    return it == index.end() ? 0.0 : mass[it->second];
}

ExactDistribution enumerate_in_trees(const MarkovChain& chain, NodeId r,
                                     NodeId node_cap) {
    check_cap(chain.num_nodes(), node_cap, "enumerate_in_trees");
    std::vector<NodeId> members(chain.num_nodes());
    std::iota(members.begin(), members.end(), 0);
    const auto adj = chain_adjacency(chain);

    std::vector<Tree> trees;
    std::vector<double> weights;
    for_each_in_tree(adj, r, members, [&](const std::vector<NodeId>& parent, double w) {
        trees.push_back(make_tree(chain.num_nodes(), r, members, parent));
        weights.push_back(w);
    });
    if (trees.empty())
        throw std::domain_error("enumerate_in_trees: no spanning in-tree exists");
    return finalize(std::move(trees), std::move(weights));
}

ExactDistribution enumerate_steiner_trees(const MarkovChain& chain, NodeId r,
                                          std::span<const NodeId> terminals,
                                          NodeId node_cap) {
    const NodeId n = chain.num_nodes();
    check_cap(n, node_cap, "enumerate_steiner_trees");
    if (terminals.empty())
        throw std::invalid_argument("enumerate_steiner_trees: empty terminal set");

    std::vector<char> required(n, 0);
    required[r] = 1;
    for (NodeId x : terminals) {
        if (x < 0 || x >= n)
            throw std::invalid_argument("enumerate_steiner_trees: terminal out of range");
        required[x] = 1;
    }
    std::vector<NodeId> optional_nodes;
    for (NodeId u = 0; u < n; ++u)
        if (!required[u])
            optional_nodes.push_back(u);

    const auto adj = chain_adjacency(chain);
    std::vector<char> is_terminal(n, 0);
    for (NodeId x : terminals)
        is_terminal[x] = 1;

    std::vector<Tree> trees;
    std::vector<double> weights;
    std::vector<NodeId> members;
    std::vector<int> child_count(n, 0);

    const std::uint64_t subsets = std::uint64_t{1} << optional_nodes.size();
    for (std::uint64_t bits = 0; bits < subsets; ++bits) {
        members.clear();
        for (NodeId u = 0; u < n; ++u)
            if (required[u])
                members.push_back(u);
        for (std::size_t i = 0; i < optional_nodes.size(); ++i)
            if (bits & (std::uint64_t{1} << i))
                members.push_back(optional_nodes[i]);
        std::sort(members.begin(), members.end());

        for_each_in_tree(adj, r, members, [&](const std::vector<NodeId>& parent, double w) {
            // Keep only trees whose every leaf is a terminal.
            std::fill(child_count.begin(), child_count.end(), 0);
            for (NodeId u : members)
                if (u != r)
                    ++child_count[parent[u]];
            for (NodeId u : members)
                if (u != r && child_count[u] == 0 && !is_terminal[u])
                    return;
            trees.push_back(make_tree(n, r, members, parent));
            weights.push_back(w);
        });
    }
    if (trees.empty())
        throw std::domain_error("enumerate_steiner_trees: empty support");
    return finalize(std::move(trees), std::move(weights));
}

ExactDistribution reweight_to_target(const ExactDistribution& dist,
                                     const ProbGraph& g) {
    std::vector<Tree> trees = dist.support;
    std::vector<double> weights(trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i)
        weights[i] = std::exp(target_log_probability(g, trees[i]));
    return finalize(std::move(trees), std::move(weights));
}

ExactDistribution reweight_by_contraction(const ExactDistribution& dist,
                                          const MarkovChain& chain) {
    std::vector<Tree> trees = dist.support;
    std::vector<double> weights(trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i) {
        const ContractedGraph gc = contract(chain, trees[i]);
        weights[i] = dist.weight[i] *
                     in_tree_weight_sum(gc.num_nodes(), gc.weighted_edges(), gc.supernode());
    }
    return finalize(std::move(trees), std::move(weights));
}

double tv_distance(const std::unordered_map<std::string, std::int64_t>& counts,
                   const ExactDistribution& exact) {
    std::int64_t total = 0;
    for (const auto& [key, c] : counts)
        total += c;
    if (total <= 0)
        throw std::invalid_argument("tv_distance: no observations");

    double sum = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        const auto it = counts.find(exact.support[i].canonical_key());
        const double emp = it == counts.end()
                               ? 0.0
                               : static_cast<double>(it->second) / static_cast<double>(total);
        sum += std::abs(emp - exact.mass[i]);
    }
    for (const auto& [key, c] : counts)
        if (!exact.index.count(key))
            sum += static_cast<double>(c) / static_cast<double>(total);
    return 0.5 * sum;
}

double tv_distance(const std::unordered_map<std::string, std::int64_t>& a,
                   const std::unordered_map<std::string, std::int64_t>& b) {
    std::int64_t ta = 0, tb = 0;
    for (const auto& [k, c] : a)
        ta += c;
    for (const auto& [k, c] : b)
        tb += c;
    if (ta <= 0 || tb <= 0)
        throw std::invalid_argument("tv_distance: no observations");

    double sum = 0.0;
    for (const auto& [k, c] : a) {
        const auto it = b.find(k);
        const double pb = it == b.end()
                              ? 0.0
                              : static_cast<double>(it->second) / static_cast<double>(tb);
        sum += std::abs(static_cast<double>(c) / static_cast<double>(ta) - pb);
    }
    for (const auto& [k, c] : b)
        if (!a.count(k))
            sum += static_cast<double>(c) / static_cast<double>(tb);
    return 0.5 * sum;
}

double in_tree_weight_sum(NodeId n, const std::vector<GraphEdge>& edges,
                          NodeId root, NodeId node_cap) {
    check_cap(n, node_cap, "in_tree_weight_sum");
    std::vector<std::vector<std::pair<NodeId, double>>> adj(n);
    for (const GraphEdge& e : edges) {
        if (e.from == e.to)
            continue; // self-loops never appear in a tree
        adj[e.from].emplace_back(e.to, e.prob);
    }
    // Merge parallel edges; a tree uses one of them, so weights add.
    for (auto& out : adj) {
        std::sort(out.begin(), out.end());
        std::vector<std::pair<NodeId, double>> merged;
        for (const auto& [v, w] : out) {
            if (!merged.empty() && merged.back().first == v)
                merged.back().second += w;
            else
                merged.emplace_back(v, w);
        }
        out = std::move(merged);
    }

    std::vector<NodeId> members(n);
    std::iota(members.begin(), members.end(), 0);
    double sum = 0.0;
    for_each_in_tree(adj, root, members,
                     [&](const std::vector<NodeId>&, double w) { sum += w; });
    return sum;
}

double spanning_weight_sum_containing(const MarkovChain& chain, const Tree& t,
                                      NodeId node_cap) {
    const ExactDistribution all = enumerate_in_trees(chain, t.root, node_cap);
    double sum = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const Tree& big = all.support[i];
        bool contains = true;
        for (NodeId u : t.nodes) {
            if (u == t.root)
                continue;
            if (big.parent[u] != t.parent[u]) {
                contains = false;
                break;
            }
        }
        if (contains)
            sum += all.weight[i];
    }
    return sum;
}

} // namespace casrec::oracle
