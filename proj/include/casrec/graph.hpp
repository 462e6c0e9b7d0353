// graph.hpp -- probabilistic contact graph: loading, validation, restriction.

#ifndef CASREC_GRAPH_HPP
#define CASREC_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace casrec {

using NodeId = std::int32_t;

struct GraphEdge {
    NodeId from;
    NodeId to;
    double prob; // transmission probability, in (0, 1]
};

// Reciprocal directed graph with per-edge transmission probabilities.
// Node ids are dense 0..n-1; external names live in the label map.
// Invariants (validated on construction):
//   - edge (u,v) present  =>  edge (v,u) present (probabilities may differ)
//   - 0 < prob <= 1, no self loops, no duplicate directed edges
class ProbGraph {
public:
    ProbGraph() = default;

    // Takes ownership of the edge list; labels[i] names node i.
    // Throws std::invalid_argument on any invariant violation.
    ProbGraph(NodeId n, std::vector<GraphEdge> edges,
              std::vector<std::string> labels);

    NodeId num_nodes() const { return n_; }
    std::size_t num_edges() const { return to_.size(); }

    std::span<const NodeId> out_neighbors(NodeId u) const {
        return {to_.data() + out_off_[u], to_.data() + out_off_[u + 1]};
    }
    std::span<const double> out_probs(NodeId u) const {
        return {p_.data() + out_off_[u], p_.data() + out_off_[u + 1]};
    }
    std::span<const NodeId> in_neighbors(NodeId u) const {
        return {from_.data() + in_off_[u], from_.data() + in_off_[u + 1]};
    }
    std::span<const double> in_probs(NodeId u) const {
        return {in_p_.data() + in_off_[u], in_p_.data() + in_off_[u + 1]};
    }

    bool has_edge(NodeId u, NodeId v) const;

    // Probability on a directed edge; throws if the edge is absent.
    double edge_prob(NodeId u, NodeId v) const;

    // Sum of probabilities on in-edges of u (zero for isolated nodes).
    double weighted_in_degree(NodeId u) const { return in_weight_[u]; }

    const std::string& label(NodeId u) const { return labels_[u]; }
    const std::vector<std::string>& labels() const { return labels_; }

    // Dense id of an external label; throws if unknown.
    NodeId node_by_label(const std::string& label) const;

    // Edges in (from, to) ascending order.
    std::vector<GraphEdge> edge_list() const;

    // Replaces all edge probabilities; order must match edge_list().
    ProbGraph with_probs(const std::vector<double>& probs) const;

private:
    NodeId n_ = 0;
    std::vector<std::size_t> out_off_;
    std::vector<NodeId> to_;
    std::vector<double> p_;
    std::vector<std::size_t> in_off_;
    std::vector<NodeId> from_;
    std::vector<double> in_p_;
    std::vector<double> in_weight_;
    std::vector<std::string> labels_;
};

// Parses a tab/space separated edge list "u v p", one edge per line.
// Lines starting with '#' and blank lines are skipped. Labels are assigned
// dense ids in order of first appearance. Reciprocity violations are
// reported as errors, never repaired.
ProbGraph load_graph(std::istream& in);

// Writes edges sorted by (u, v) as "label_u<TAB>label_v<TAB>p" so that
// load_graph(serialize_graph(g)) round-trips.
void serialize_graph(const ProbGraph& g, std::ostream& out);

// Induced subgraph on V minus `uninfected`, with ids re-densified and
// labels preserved. Throws if the result is empty.
ProbGraph restrict_graph(const ProbGraph& g,
                         const std::unordered_set<NodeId>& uninfected);

// Connected components of the (reciprocal, hence symmetric) graph.
// Returns component id per node.
std::vector<int> connected_components(const ProbGraph& g, int& count);

} // namespace casrec

#endif
