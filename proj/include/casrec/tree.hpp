// tree.hpp -- rooted directed tree stored as parent links toward the root.

#ifndef CASREC_TREE_HPP
#define CASREC_TREE_HPP

#include <string>
#include <utility>
#include <vector>

#include "casrec/graph.hpp"

namespace casrec {

// A tree on chain nodes: every member except the root carries exactly one
// parent link (u -> parent[u]) pointing toward the root. `nodes` holds the
// member set in ascending order; `parent` is dense over all n chain ids and
// is meaningful only for members.
struct Tree {
    static constexpr NodeId kNoParent = -1;

    NodeId root = 0;
    std::vector<NodeId> parent; // size n; kNoParent for root and non-members
    std::vector<NodeId> nodes;  // members, ascending

    std::size_t size() const { return nodes.size(); }

    // Chain-direction edges (child, parent), in ascending child order.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    // Canonical encoding: "child>parent;..." over ascending children.
    // Stable key for distribution comparisons.
    std::string canonical_key() const;
};

// Builds a tree from parent links over `members`; validates that parents
// stay inside the member set and that every member reaches the root.
// Throws std::invalid_argument otherwise.
Tree make_tree(NodeId n, NodeId root, const std::vector<NodeId>& members,
               const std::vector<NodeId>& parent);

} // namespace casrec

#endif
