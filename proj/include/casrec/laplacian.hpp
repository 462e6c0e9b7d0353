// laplacian.hpp -- matrix-tree determinants for weighted directed graphs.

#ifndef CASREC_LAPLACIAN_HPP
#define CASREC_LAPLACIAN_HPP

#include <span>

#include "casrec/graph.hpp"

namespace casrec {

// Log of the weighted spanning in-tree sum rooted at `root`: the
// determinant of (out-degree diagonal minus weight matrix) with the root
// row and column removed, which counts arborescences converging to the
// root. Parallel edges may appear in `edges`; their weights add.
//
// The determinant is evaluated by dense LU with partial pivoting, in log
// magnitude. A 0-by-0 minor has determinant 1, so the result is 0.
//
// Throws std::domain_error when the minor is singular or has negative
// sign (no spanning in-tree, "zero tree weight"), std::length_error when
// the minor exceeds `max_minor_dim`.
double laplacian_minor_logdet(NodeId n, std::span<const GraphEdge> edges,
                              NodeId root, NodeId max_minor_dim = 4096);

} // namespace casrec

#endif
