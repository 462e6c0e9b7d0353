#include "casrec/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace casrec {

std::vector<std::pair<NodeId, NodeId>> Tree::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(nodes.size() > 0 ? nodes.size() - 1 : 0);
    for (NodeId u : nodes)
        if (u != root)
            out.emplace_back(u, parent[u]);
    return out;
}

std::string Tree::canonical_key() const {
    std::string key;
    for (NodeId u : nodes) {
        if (u == root)
            continue;
        key += std::to_string(u);
        key += '>';
        key += std::to_string(parent[u]);
        key += ';';
    }
    return key;
}

Tree make_tree(NodeId n, NodeId root, const std::vector<NodeId>& members,
               const std::vector<NodeId>& parent) {
    Tree t;
    t.root = root;
    t.parent.assign(n, Tree::kNoParent);
    t.nodes = members;
    std::sort(t.nodes.begin(), t.nodes.end());
    if (!std::binary_search(t.nodes.begin(), t.nodes.end(), root))
        throw std::invalid_argument("make_tree: root not among members");

    std::vector<char> in_set(n, 0);
    for (NodeId u : t.nodes)
        in_set[u] = 1;
    for (NodeId u : t.nodes) {
        if (u == root)
            continue;
        const NodeId p = parent[u];
        if (p < 0 || p >= n || !in_set[p])
            throw std::invalid_argument("make_tree: parent outside member set");
        t.parent[u] = p;
    }

    // Every member must reach the root; equivalently no cycles.
    std::vector<char> state(n, 0); // 0 unseen, 1 on path, 2 done
    state[root] = 2;
    std::vector<NodeId> path;
    for (NodeId u : t.nodes) {
        NodeId v = u;
        path.clear();
        while (state[v] == 0) {
            state[v] = 1;
            path.push_back(v);
            v = t.parent[v];
        }
        if (state[v] == 1)
            throw std::invalid_argument("make_tree: cycle in parent links");
        for (NodeId w : path)
            state[w] = 2;
    }
    return t;
}

} // namespace casrec
