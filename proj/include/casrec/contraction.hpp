// contraction.hpp -- merging a sampled tree into a supernode of the chain.

#ifndef CASREC_CONTRACTION_HPP
#define CASREC_CONTRACTION_HPP

#include <vector>

#include "casrec/chain.hpp"
#include "casrec/graph.hpp"
#include "casrec/tree.hpp"

namespace casrec {

struct ContractedEdge {
    NodeId from;
    NodeId to;
    double weight;         // summed chain weight of the merged parallel edges
    int multiplicity;      // how many original edges were merged (1 elsewhere)
};

// The chain with all tree nodes merged into one supernode. Edges incident
// to the tree are rerouted through the supernode with summed weights and a
// multiplicity label; edges between outside nodes keep weight and label 1.
// Edges internal to the tree disappear.
class ContractedGraph {
public:
    ContractedGraph(NodeId n, NodeId supernode, std::vector<ContractedEdge> edges,
                    std::vector<NodeId> original_ids)
        : n_(n), supernode_(supernode), edges_(std::move(edges)),
          original_ids_(std::move(original_ids)) {}

    NodeId num_nodes() const { return n_; }
    NodeId supernode() const { return supernode_; }
    const std::vector<ContractedEdge>& edges() const { return edges_; }

    // Original chain id of a contracted node; kNoOriginal for the supernode.
    static constexpr NodeId kNoOriginal = -1;
    NodeId original_id(NodeId v) const { return original_ids_[v]; }

    // Edge list with multiplicities dropped, for weight-based tree counting.
    std::vector<GraphEdge> weighted_edges() const;

    // Edge list carrying the multiplicity labels as weights, for the
    // unweighted counting identity.
    std::vector<GraphEdge> multiplicity_edges() const;

private:
    NodeId n_;
    NodeId supernode_;
    std::vector<ContractedEdge> edges_;
    std::vector<NodeId> original_ids_;
};

// Contracts tree t on the chain. Contracted node 0 is the supernode; the
// remaining chain nodes keep their relative order. A tree spanning the
// whole chain contracts to a single node with no edges.
ContractedGraph contract(const MarkovChain& chain, const Tree& t);

} // namespace casrec

#endif
