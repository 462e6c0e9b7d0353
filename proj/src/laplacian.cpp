#include "casrec/laplacian.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace casrec {

double laplacian_minor_logdet(NodeId n, std::span<const GraphEdge> edges,
                              NodeId root, NodeId max_minor_dim) {
    if (root < 0 || root >= n)
        throw std::invalid_argument("laplacian_minor_logdet: root out of range");
    const NodeId dim = n - 1;
    if (dim > max_minor_dim)
        throw std::length_error("laplacian_minor_logdet: minor dimension " +
                                std::to_string(dim) + " exceeds limit " +
                                std::to_string(max_minor_dim));
    if (dim == 0)
        return 0.0; // empty determinant is 1

    // Dense minor with root row/column dropped; index skips the root.
    const auto minor_index = [root](NodeId v) { return v < root ? v : v - 1; };
    Eigen::MatrixXd minor = Eigen::MatrixXd::Zero(dim, dim);
    for (const GraphEdge& e : edges) {
        if (e.from == e.to)
            continue; // self-loops cancel in the Laplacian
        if (e.from != root)
            minor(minor_index(e.from), minor_index(e.from)) += e.prob;
        if (e.from != root && e.to != root)
            minor(minor_index(e.from), minor_index(e.to)) -= e.prob;
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(minor);
    int sign = static_cast<int>(lu.permutationP().determinant());
    double log_abs = 0.0;
    for (NodeId i = 0; i < dim; ++i) {
        const double d = lu.matrixLU()(i, i);
        if (d == 0.0 || !std::isfinite(d))
            throw std::domain_error("laplacian_minor_logdet: zero tree weight");
        if (d < 0.0)
            sign = -sign;
        log_abs += std::log(std::abs(d));
    }
    if (sign <= 0)
        throw std::domain_error("laplacian_minor_logdet: zero tree weight");
    return log_abs;
}

} // namespace casrec
