#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "logsum/scalar.hpp"

namespace logsum {

/// Thin SVD: x = u * diag(singular_values) * v^T with k = min(m, n),
/// u m-by-k and v n-by-k with orthonormal columns, values descending.
struct SvdFactorization {
    Eigen::MatrixXd u;
    Eigen::VectorXd singular_values;
    Eigen::MatrixXd v;
    int sweeps = 0;

    Eigen::MatrixXd reconstruct() const;
};

inline constexpr double default_svd_tol = 1e-12;
inline constexpr int default_svd_max_sweeps = 100;

/// One-sided (Hestenes) Jacobi SVD. A column pair is rotated until
/// |a_i . a_j| <= tol * ||a_i|| ||a_j||. Throws ConvergenceError if that is
/// not reached within max_sweeps, DomainError on non-finite entries.
SvdFactorization svd(const Eigen::MatrixXd &x, double tol = default_svd_tol,
                     int max_sweeps = default_svd_max_sweeps);

struct MatrixProxResult {
    Eigen::MatrixXd x_star;
    Eigen::VectorXd d; ///< shrunk singular values, descending
    std::vector<std::size_t> ambiguous_indices;
    std::vector<double> alternatives; ///< nonzero branch at each ambiguous index
    double objective_value = 0.0;
};

/// ||x - z||_F^2 / (2 lambda) + sum_i log(1 + sigma_i(x) / epsilon)
double matrix_prox_objective(const ProxParams &p, const Eigen::MatrixXd &z, const Eigen::MatrixXd &x);

/// Prox of the log-sum penalty of the singular values:
/// x_star = U diag(prox_vector(sigma(z))) V^T.
MatrixProxResult prox_matrix(const ProxParams &p, const Eigen::MatrixXd &z);

/// sum_i log(1 + sigma_i(x) / epsilon), which equals
/// log det(I + (x x^T)^{1/2} / epsilon) for m <= n (x^T x otherwise).
double logdet_penalty(const ProxParams &p, const Eigen::MatrixXd &x);

/// Number of singular values above rel_tol * sigma_max.
Eigen::Index numerical_rank(const Eigen::VectorXd &singular_values, double rel_tol = 1e-12);

} // namespace logsum
