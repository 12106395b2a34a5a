#include "logsum/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <span>

#include "logsum/errors.hpp"
#include "logsum/vector.hpp"

namespace logsum {

namespace {

// Fill columns of q whose index is flagged with unit vectors orthogonal to
// all other columns (modified Gram-Schmidt against the standard basis).
void complete_orthonormal(Eigen::MatrixXd &q, const std::vector<bool> &missing) {
    const Eigen::Index m = q.rows();
    Eigen::Index next_basis = 0;
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        if (!missing[static_cast<std::size_t>(j)])
            continue;
        bool placed = false;
        while (!placed && next_basis < m) {
            Eigen::VectorXd c = Eigen::VectorXd::Unit(m, next_basis++);
            for (int pass = 0; pass < 2; ++pass)
                for (Eigen::Index k = 0; k < q.cols(); ++k)
                    if (k != j && (!missing[static_cast<std::size_t>(k)] || k < j))
                        c -= q.col(k).dot(c) * q.col(k);
            const double nrm = c.norm();
            if (nrm > 1e-6) {
                q.col(j) = c / nrm;
                placed = true;
            }
        }
        if (!placed)
            throw ConvergenceError("svd: could not complete orthonormal basis");
    }
}

// Requires rows >= cols.
SvdFactorization jacobi_tall(const Eigen::MatrixXd &x, double tol, int max_sweeps) {
    const Eigen::Index m = x.rows();
    const Eigen::Index n = x.cols();
    Eigen::MatrixXd a = x;
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

    int sweep = 0;
    bool converged = n < 2;
    while (!converged && sweep < max_sweeps) {
        ++sweep;
        converged = true;
        for (Eigen::Index i = 0; i < n - 1; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double alpha = a.col(i).squaredNorm();
                const double beta = a.col(j).squaredNorm();
                const double gamma = a.col(i).dot(a.col(j));
                if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha * beta))
                    continue;
                converged = false;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (Eigen::Index r = 0; r < m; ++r) {
                    const double ai = a(r, i);
                    const double aj = a(r, j);
                    a(r, i) = c * ai - s * aj;
                    a(r, j) = s * ai + c * aj;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const double vi = v(r, i);
                    const double vj = v(r, j);
                    v(r, i) = c * vi - s * vj;
                    v(r, j) = s * vi + c * vj;
                }
            }
        }
    }
    if (!converged)
        throw ConvergenceError("svd: Jacobi sweeps did not converge in " + std::to_string(max_sweeps));

    Eigen::VectorXd sigma(n);
    for (Eigen::Index j = 0; j < n; ++j)
        sigma(j) = a.col(j).norm();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index l, Eigen::Index r) { return sigma(l) > sigma(r); });

    SvdFactorization out;
    out.sweeps = sweep;
    out.u.resize(m, n);
    out.v.resize(n, n);
    out.singular_values.resize(n);
    const double smax = n > 0 ? sigma(order[0]) : 0.0;
    const double floor = static_cast<double>(std::max(m, n)) * std::numeric_limits<double>::epsilon() * smax;
    std::vector<bool> missing(static_cast<std::size_t>(n), false);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index j = order[static_cast<std::size_t>(k)];
        out.v.col(k) = v.col(j);
        if (sigma(j) > floor && sigma(j) > 0) {
            out.singular_values(k) = sigma(j);
            out.u.col(k) = a.col(j) / sigma(j);
        } else {
            out.singular_values(k) = 0.0;
            out.u.col(k).setZero();
            missing[static_cast<std::size_t>(k)] = true;
        }
    }
    complete_orthonormal(out.u, missing);
    return out;
}

} // namespace

Eigen::MatrixXd SvdFactorization::reconstruct() const {
    return u * singular_values.asDiagonal() * v.transpose();
}

SvdFactorization svd(const Eigen::MatrixXd &x, double tol, int max_sweeps) {
    if (!x.allFinite())
        throw DomainError("svd: matrix has non-finite entries");
    if (!(tol > 0))
        throw DomainError("svd: tolerance must be > 0");
    if (x.rows() >= x.cols())
        return jacobi_tall(x, tol, max_sweeps);
    SvdFactorization t = jacobi_tall(x.transpose(), tol, max_sweeps);
    std::swap(t.u, t.v);
    return t;
}

double matrix_prox_objective(const ProxParams &p, const Eigen::MatrixXd &z, const Eigen::MatrixXd &x) {
    if (z.rows() != x.rows() || z.cols() != x.cols())
        throw PreconditionError("matrix_prox_objective: shape mismatch");
    return (x - z).squaredNorm() / (2.0 * p.lambda()) + logdet_penalty(p, x);
}

MatrixProxResult prox_matrix(const ProxParams &p, const Eigen::MatrixXd &z) {
    const SvdFactorization f = svd(z);
    MatrixProxResult out;
    const Eigen::Index k = f.singular_values.size();
    out.d = Eigen::VectorXd::Zero(k);
    if (k > 0) {
        const auto sigma = std::span<const double>(f.singular_values.data(), static_cast<std::size_t>(k));
        const VectorProxResult vp = prox_vector(p, sigma);
        out.d = Eigen::Map<const Eigen::VectorXd>(vp.canonical.data(), k);
        out.ambiguous_indices = vp.ambiguous_indices;
        out.alternatives = vp.alternatives;
    }
    out.x_star = f.u * out.d.asDiagonal() * f.v.transpose();
    double penalty = 0.0;
    for (Eigen::Index i = 0; i < k; ++i)
        penalty += std::log1p(out.d(i) / p.epsilon());
    out.objective_value = (out.x_star - z).squaredNorm() / (2.0 * p.lambda()) + penalty;
    return out;
}

double logdet_penalty(const ProxParams &p, const Eigen::MatrixXd &x) {
    if (x.size() == 0)
        return 0.0;
    const SvdFactorization f = svd(x);
    double s = 0.0;
    for (Eigen::Index i = 0; i < f.singular_values.size(); ++i)
        s += std::log1p(f.singular_values(i) / p.epsilon());
    return s;
}

Eigen::Index numerical_rank(const Eigen::VectorXd &singular_values, double rel_tol) {
    if (singular_values.size() == 0)
        return 0;
    const double smax = singular_values.maxCoeff();
    if (smax <= 0)
        return 0;
    return (singular_values.array() > rel_tol * smax).count();
}

} // namespace logsum
