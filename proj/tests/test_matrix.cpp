#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "logsum/errors.hpp"
#include "logsum/matrix.hpp"
#include "logsum/vector.hpp"
#include "support.hpp"

using namespace logsum;
using doctest::Approx;

namespace {

Eigen::MatrixXd random_matrix(testing::Gen &g, Eigen::Index m, Eigen::Index n, double scale) {
    Eigen::MatrixXd x(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            x(i, j) = scale * g.normal();
    return x;
}

double orthogonality_error(const Eigen::MatrixXd &q) {
    return (q.transpose() * q - Eigen::MatrixXd::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
}

} // namespace

TEST_SUITE("matrix") {

TEST_CASE("svd of random shapes") {
    testing::Gen g(7);
    for (auto [m, n] : {std::pair{1, 1}, {3, 3}, {6, 8}, {8, 6}, {1, 5}, {5, 1}, {4, 7}}) {
        CAPTURE(m);
        CAPTURE(n);
        Eigen::MatrixXd x = random_matrix(g, m, n, 2.0);
        SvdFactorization f = svd(x);
        const Eigen::Index k = std::min(m, n);
        REQUIRE(f.u.rows() == m);
        REQUIRE(f.u.cols() == k);
        REQUIRE(f.v.rows() == n);
        REQUIRE(f.v.cols() == k);
        CHECK((f.reconstruct() - x).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(orthogonality_error(f.u) < 1e-12);
        CHECK(orthogonality_error(f.v) < 1e-12);
        for (Eigen::Index i = 1; i < k; ++i)
            CHECK(f.singular_values(i - 1) >= f.singular_values(i));
        Eigen::VectorXd ref = Eigen::JacobiSVD<Eigen::MatrixXd>(x).singularValues();
        CHECK((ref - f.singular_values).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("svd of rank deficient and zero matrices") {
    Eigen::MatrixXd x(3, 4);
    x << 1, 2, 3, 4, 2, 4, 6, 8, 0, 0, 0, 0;
    SvdFactorization f = svd(x);
    CHECK(numerical_rank(f.singular_values) == 1);
    CHECK((f.reconstruct() - x).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(orthogonality_error(f.u) < 1e-12);

    SvdFactorization z = svd(Eigen::MatrixXd::Zero(3, 2));
    CHECK(z.singular_values.isZero());
    CHECK(orthogonality_error(z.u) < 1e-12);
    CHECK(numerical_rank(z.singular_values) == 0);
}

TEST_CASE("svd errors") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(2, 2);
    x(0, 1) = std::nan("");
    CHECK_THROWS_AS(svd(x), DomainError);
    CHECK_THROWS_AS(svd(Eigen::MatrixXd::Identity(2, 2), 0.0), DomainError);
    testing::Gen g(3);
    CHECK_THROWS_AS(svd(random_matrix(g, 6, 6, 1.0), 1e-12, 1), ConvergenceError);
}

TEST_CASE("diagonal input") {
    ProxParams p(2, 3);
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 2);
    z(0, 0) = 5.0;
    z(1, 1) = 0.1;
    MatrixProxResult r = prox_matrix(p, z);
    CHECK(r.d(0) == Approx(1.0 + std::sqrt(14.0)).epsilon(1e-14));
    CHECK(r.d(1) == 0.0);
    CHECK(r.x_star(0, 0) == Approx(1.0 + std::sqrt(14.0)).epsilon(1e-14));
    CHECK(std::abs(r.x_star(1, 1)) < 1e-15);
    CHECK(std::abs(r.x_star(0, 1)) < 1e-15);
    CHECK(numerical_rank(svd(r.x_star).singular_values) == 1);
}

TEST_CASE("rotated diagonal input") {
    ProxParams p(3, 1);
    const double c = std::cos(0.3), s = std::sin(0.3);
    Eigen::Matrix2d q;
    q << c, -s, s, c;
    Eigen::MatrixXd z = q * Eigen::Vector2d(2.9, 2.5).asDiagonal() * q.transpose();
    MatrixProxResult r = prox_matrix(p, z);
    CHECK(r.d(0) == Approx(1.845823643358446).epsilon(1e-12));
    CHECK(r.d(1) == 0.0);
    CHECK(r.ambiguous_indices.empty());
}

TEST_CASE("zero matrix") {
    MatrixProxResult r = prox_matrix(ProxParams(3, 1), Eigen::MatrixXd::Zero(3, 4));
    CHECK(r.x_star.isZero());
    CHECK(r.objective_value == 0.0);
}

TEST_CASE("ambiguity at the jump point") {
    ProxParams p(3, 1);
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 3);
    z(0, 0) = 4.0;
    z(1, 1) = *p.jump_point();
    MatrixProxResult r = prox_matrix(p, z);
    REQUIRE(r.ambiguous_indices.size() == 1);
    CHECK(r.ambiguous_indices[0] == 1);
    CHECK(r.alternatives[0] == Approx(r2(p, *p.jump_point())));
    CHECK(r.d(1) == 0.0);
}

TEST_CASE("logdet penalty") {
    ProxParams p(1, 2);
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2, 3);
    x(0, 0) = 2.0;
    x(1, 2) = -6.0;
    CHECK(logdet_penalty(p, x) == Approx(std::log(2.0) + std::log(4.0)).epsilon(1e-14));
    CHECK(matrix_prox_objective(p, x, x) == Approx(logdet_penalty(p, x)));
    CHECK_THROWS_AS(matrix_prox_objective(p, x, Eigen::MatrixXd::Zero(3, 2)), PreconditionError);
}

}
