// generators.hpp -- synthetic graph construction and undirected import.

#ifndef CASREC_GENERATORS_HPP
#define CASREC_GENERATORS_HPP

#include <iosfwd>

#include "casrec/graph.hpp"

namespace casrec {

// All generators label nodes "0".."n-1" and put `p` on every directed
// edge; probabilities are usually reassigned afterwards.

// 4-neighbor lattice, node (x, y) has id y * width + x.
ProbGraph gen_grid(int width, int height, double p = 1.0);
ProbGraph gen_path(int n, double p = 1.0);
ProbGraph gen_cycle(int n, double p = 1.0);
ProbGraph gen_complete(int n, double p = 1.0);

// Reads an undirected edge list "u v [p]" and emits a directed copy of
// each edge in both directions (same p both ways, default 1).
ProbGraph import_undirected(std::istream& in);

} // namespace casrec

#endif
