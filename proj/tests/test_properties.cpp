#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "logsum/curves.hpp"
#include "logsum/irl1.hpp"
#include "logsum/matrix.hpp"
#include "logsum/oracle.hpp"
#include "logsum/vector.hpp"
#include "support.hpp"

using namespace logsum;
using logsum::testing::Gen;

// Randomized checks of structural facts. Each case draws from its own seed.

namespace {

bool same_set(const ProxResult &a, const ProxResult &b) {
    return a.kind() == b.kind() && a.nonzero() == b.nonzero();
}

ProxResult negate(const ProxResult &r) {
    switch (r.kind()) {
    case ProxResult::Kind::Zero: return r;
    case ProxResult::Kind::Point: return ProxResult::point(-r.nonzero());
    case ProxResult::Kind::Pair: return ProxResult::pair(-r.nonzero());
    }
    return r;
}

Eigen::MatrixXd random_orthogonal(Gen &g, Eigen::Index n) {
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = g.normal();
    return Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
}

Eigen::MatrixXd random_matrix(Gen &g, Eigen::Index m, Eigen::Index n, double scale) {
    Eigen::MatrixXd x(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            x(i, j) = scale * g.normal();
    return x;
}

} // namespace

TEST_SUITE("properties") {

TEST_CASE("odd symmetry") {
    Gen g(101);
    for (int i = 0; i < 2000; ++i) {
        ProxParams p = g.any_params();
        double z = g.banded_z(p);
        CHECK(same_set(prox_scalar(p, -z), negate(prox_scalar(p, z))));
    }
    ProxParams p(3, 1);
    CHECK(same_set(prox_scalar(p, -*p.jump_point()), negate(prox_scalar(p, *p.jump_point()))));
}

TEST_CASE("shrinkage") {
    Gen g(102);
    for (int i = 0; i < 2000; ++i) {
        ProxParams p = g.any_params();
        double z = g.signed_banded_z(p);
        if (z == 0.0)
            continue;
        for (double v : prox_scalar(p, z).elements()) {
            if (z > 0)
                CHECK((v >= 0.0 && v < z));
            else
                CHECK((v <= 0.0 && v > z));
        }
    }
}

TEST_CASE("monotonicity in z") {
    Gen g(103);
    for (int i = 0; i < 300; ++i) {
        ProxParams p = g.any_params();
        std::vector<double> zs(40);
        for (double &z : zs)
            z = g.banded_z(p);
        if (p.jump_point())
            zs.push_back(*p.jump_point());
        std::sort(zs.begin(), zs.end());
        for (std::size_t k = 1; k < zs.size(); ++k) {
            if (zs[k] == zs[k - 1])
                continue;
            CHECK(prox_scalar(p, zs[k - 1]).max() <= prox_scalar(p, zs[k]).min());
        }
    }
}

TEST_CASE("global optimality against a grid") {
    Gen g(104);
    oracle::OracleConfig cfg;
    cfg.grid_points = 20001;
    for (int i = 0; i < 200; ++i) {
        ProxParams p = g.any_params();
        double z = g.signed_banded_z(p);
        double grid_min = oracle::oracle_minimize(p, z, cfg).objective;
        for (double v : prox_scalar(p, z).elements())
            CHECK(q_objective(p, z, v) <= grid_min + 1e-9);
    }
}

TEST_CASE("two-point sets only at the jump") {
    Gen g(105);
    for (int i = 0; i < 2000; ++i) {
        ProxParams p = g.any_params();
        double z = g.signed_banded_z(p);
        ProxResult r = prox_scalar(p, z);
        if (!r.is_singleton()) {
            REQUIRE(p.jump_point());
            CHECK(std::abs(std::abs(z) - *p.jump_point()) <= p.jump_tolerance());
        }
    }
}

TEST_CASE("fixed-point identity") {
    Gen g(106);
    for (int i = 0; i < 2000; ++i) {
        ProxParams p = g.any_params();
        double z = g.signed_banded_z(p);
        double v = prox_scalar(p, z).nonzero();
        if (v == 0.0)
            continue;
        double rhs = z - std::copysign(1.0, z) * p.lambda() / (std::abs(v) + p.epsilon());
        CHECK(std::abs(v - rhs) <= 1e-10 * std::max(1.0, std::abs(z)));
    }
}

TEST_CASE("convex regime prox is continuous") {
    Gen g(107);
    for (int i = 0; i < 100; ++i) {
        ProxParams p = g.convex_params();
        const double curvature = p.lambda() / (p.epsilon() * p.epsilon());
        if (curvature > 0.99)
            continue;
        // slope of r2 is 1 / (1 - lambda / (eps + x)^2), largest at x = 0
        const double lipschitz = 1.0 / (1.0 - curvature);
        std::vector<SweepRow> rows = prox_sweep(p, -3.0 * p.critical_upper() - 1.0, 3.0 * p.critical_upper() + 1.0, 2001);
        double h = rows[1].z - rows[0].z;
        for (std::size_t k = 1; k < rows.size(); ++k) {
            CHECK(rows[k].branch == SweepRow::Branch::Single);
            CHECK(std::abs(rows[k].value - rows[k - 1].value) <= h * lipschitz * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("vector separability") {
    Gen g(108);
    for (int i = 0; i < 200; ++i) {
        ProxParams p = g.any_params();
        std::vector<double> z(g.integer(1, 30));
        for (double &v : z)
            v = g.signed_banded_z(p);
        std::vector<std::size_t> perm(z.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), g.engine());
        std::vector<double> zp(z.size());
        for (std::size_t k = 0; k < z.size(); ++k)
            zp[k] = z[perm[k]];
        VectorProxResult a = prox_vector(p, z);
        VectorProxResult b = prox_vector(p, zp);
        for (std::size_t k = 0; k < z.size(); ++k)
            CHECK(b.canonical[k] == a.canonical[perm[k]]);
    }
}

TEST_CASE("vector order preservation and objective dominance") {
    Gen g(109);
    for (int i = 0; i < 300; ++i) {
        ProxParams p = g.any_params();
        std::vector<double> z(g.integer(1, 20));
        for (double &v : z)
            v = g.banded_z(p);
        std::sort(z.rbegin(), z.rend());
        CHECK(prox_vector_sorted_check(p, z));

        for (double &v : z)
            v *= g.coin() ? 1.0 : -1.0;
        VectorProxResult r = prox_vector(p, z);
        std::vector<double> zero(z.size(), 0.0);
        CHECK(r.objective_value <= prox_objective(p, z, z) + 1e-12);
        CHECK(r.objective_value <= prox_objective(p, z, zero) + 1e-12);
    }
}

TEST_CASE("irl1 simulation agrees with prediction") {
    Gen g(110);
    int compared = 0;
    for (int i = 0; i < 400; ++i) {
        ProxParams p = g.any_params();
        double z = g.signed_banded_z(p);
        double x0 = g.coin() ? g.uniform(0.0, 2.0 * std::abs(z) + 1.0) : g.uniform(0.0, 0.1);
        double a = std::abs(z);
        if (a >= std::max(p.critical_lower(), 0.0) && std::abs(x0 - r1(p, a)) < 1e-6)
            continue;
        IrlTrace t = irl1_simulate(p, z, x0);
        LimitPrediction pred = irl1_predict_limit(p, z, x0);
        CAPTURE(p.lambda());
        CAPTURE(p.epsilon());
        CAPTURE(z);
        CAPTURE(x0);
        CHECK(std::abs(t.limit_estimate - pred.limit) <= 1e-8 * std::max(1.0, std::abs(pred.limit)));
        ++compared;
    }
    CHECK(compared > 350);
}

TEST_CASE("irl1 trajectories are monotone while positive") {
    Gen g(111);
    for (int i = 0; i < 300; ++i) {
        ProxParams p = g.any_params();
        double z = g.banded_z(p);
        IrlTrace t = irl1_simulate(p, z, g.uniform(0.0, 2.0 * z + 1.0), 1e-12, 2000);
        const auto &x = t.iterates;
        int direction = 0;
        for (std::size_t k = 1; k < x.size() && x[k] > 0 && x[k - 1] > 0; ++k) {
            int d = (x[k] > x[k - 1]) - (x[k] < x[k - 1]);
            if (d == 0)
                continue;
            if (direction == 0)
                direction = d;
            CHECK(d == direction);
        }
    }
}

TEST_CASE("irl1 sign identity") {
    Gen g(112);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        ProxParams p = g.any_params();
        double z = g.banded_z(p);
        if (z < p.critical_lower())
            continue;
        double x0 = g.uniform(0.0, 2.0 * z + 1.0);
        double x1 = irl1_step(p, z, x0);
        if (x1 <= 0)
            continue;
        double lhs = (x1 - x0) * (p.epsilon() + x0);
        double rhs = -(x0 - r1(p, z)) * (x0 - r2(p, z));
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, (p.epsilon() + x0) * (p.epsilon() + x0)));
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("failure reports are sound") {
    Gen g(113);
    for (int i = 0; i < 40; ++i) {
        ProxParams p = g.nonconvex_params();
        double top = std::sqrt(p.lambda()) - p.epsilon();
        double x0 = g.coin() ? g.uniform(0.0, top) : g.uniform(top, 3.0 * top + 1.0);
        FailureReport rep = failure_intervals(p, x0);
        for (const Interval &iv : rep.intervals) {
            if (iv.hi - iv.lo < 1e-6)
                continue;
            for (int k = 0; k < 100; ++k) {
                double z = g.uniform(iv.lo, iv.hi);
                if (std::min(z - iv.lo, iv.hi - z) < 1e-9 * std::max(1.0, std::abs(z)))
                    continue;
                CHECK_FALSE(irl1_agrees(prox_scalar(p, z), irl1_predict_limit(p, z, x0).limit));
            }
        }
        double span = 2.0 * p.critical_upper();
        for (int k = 0; k < 100; ++k) {
            double z = g.uniform(-span, span);
            bool near_end = false;
            for (const Interval &iv : rep.intervals)
                near_end |= std::min(std::abs(z - iv.lo), std::abs(z - iv.hi)) < 1e-9 * std::max(1.0, std::abs(z));
            if (rep.contains(z) || near_end)
                continue;
            CHECK(irl1_agrees(prox_scalar(p, z), irl1_predict_limit(p, z, x0).limit));
        }
    }
}

TEST_CASE("r1 lower bound in the critical band") {
    Gen g(114);
    for (int i = 0; i < 100; ++i) {
        ProxParams p = g.nonconvex_params();
        double lo = p.critical_lower(), hi = p.critical_upper();
        for (int k = 0; k < 200; ++k) {
            double z = lo + (hi - lo) * k / 200.0;
            CHECK(p.lambda() / z - p.epsilon() < r1(p, z) + 1e-12 * std::max(1.0, p.lambda() / z));
        }
    }
}

TEST_CASE("irl1 is exact outside the critical band") {
    Gen g(115);
    for (int i = 0; i < 500; ++i) {
        ProxParams p = g.any_params();
        double lo = std::max(p.critical_lower(), 0.0);
        double hi = p.critical_upper();
        double a = g.coin() ? g.uniform(hi * (1 + 1e-6), 3.0 * hi + 1.0) : g.uniform(0.0, lo);
        double z = g.coin() ? a : -a;
        double x0 = g.uniform(0.0, 10.0);
        CHECK(irl1_agrees(prox_scalar(p, z), irl1_predict_limit(p, z, x0).limit));
        CHECK(irl1_agrees(prox_scalar(p, z), irl1_simulate(p, z, x0).limit_estimate, 1e-8));
    }
}

TEST_CASE("matrix prox orthogonal invariance") {
    Gen g(116);
    for (int i = 0; i < 50; ++i) {
        ProxParams p = g.any_params();
        Eigen::Index m = g.integer(1, 6), n = g.integer(1, 6);
        Eigen::MatrixXd z = random_matrix(g, m, n, p.critical_upper());
        Eigen::MatrixXd q1 = random_orthogonal(g, m), q2 = random_orthogonal(g, n);
        Eigen::VectorXd a = svd(prox_matrix(p, z).x_star).singular_values;
        Eigen::VectorXd b = svd(prox_matrix(p, q1 * z * q2.transpose()).x_star).singular_values;
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, a.maxCoeff()));
    }
}

TEST_CASE("matrix prox is optimal at small scale") {
    Gen g(117);
    for (int i = 0; i < 20; ++i) {
        ProxParams p = g.any_params();
        Eigen::Index m = g.coin() ? 2 : 3;
        Eigen::MatrixXd z = random_matrix(g, m, 2, p.critical_upper());
        MatrixProxResult r = prox_matrix(p, z);
        CHECK(r.objective_value == doctest::Approx(matrix_prox_objective(p, z, r.x_star)).epsilon(1e-12));

        SvdFactorization f = svd(z);
        std::vector<Eigen::MatrixXd> candidates{z, Eigen::MatrixXd::Zero(m, 2), 0.5 * z,
                                                f.u.col(0) * f.singular_values(0) * f.v.col(0).transpose()};
        while (candidates.size() < 10'000)
            candidates.push_back(r.x_star + g.log_uniform(1e-4, 1.0) * random_matrix(g, m, 2, 1.0));
        for (const auto &x : candidates)
            CHECK(r.objective_value <= matrix_prox_objective(p, z, x) + 1e-9);
    }
}

TEST_CASE("matrix prox of a diagonal") {
    Gen g(118);
    for (int i = 0; i < 100; ++i) {
        ProxParams p = g.any_params();
        std::vector<double> w(g.integer(1, 6));
        for (double &v : w)
            v = g.banded_z(p);
        std::sort(w.rbegin(), w.rend());
        Eigen::MatrixXd z = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(w.size()), static_cast<Eigen::Index>(w.size()) + 1);
        for (std::size_t k = 0; k < w.size(); ++k)
            z(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = w[k];
        Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(z.rows(), z.cols());
        std::vector<double> d = prox_vector(p, w).canonical;
        for (std::size_t k = 0; k < d.size(); ++k)
            expect(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = d[k];
        CHECK((prox_matrix(p, z).x_star - expect).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, w.front()));
    }
}

TEST_CASE("matrix prox rank reduction and ordering") {
    Gen g(119);
    for (int i = 0; i < 100; ++i) {
        ProxParams p = g.any_params();
        Eigen::Index m = g.integer(1, 6), n = g.integer(1, 8), k = g.integer(1, std::min<int>(m, n));
        Eigen::MatrixXd z = random_matrix(g, m, k, 1.0) * random_matrix(g, k, n, p.critical_upper());
        MatrixProxResult r = prox_matrix(p, z);
        Eigen::VectorXd sz = svd(z).singular_values;
        CHECK(numerical_rank(svd(r.x_star).singular_values, 1e-10) <= numerical_rank(sz, 1e-10));
        for (Eigen::Index j = 0; j < r.d.size(); ++j) {
            if (j > 0)
                CHECK(r.d(j - 1) >= r.d(j));
            if (prox_scalar(p, sz(j)).canonical() == 0.0)
                CHECK(r.d(j) == 0.0);
        }
    }
}

TEST_CASE("oracle agreement across bands") {
    Gen g(120);
    oracle::OracleConfig cfg;
    cfg.grid_points = 100'001;
    for (int i = 0; i < 200; ++i) {
        ProxParams p = g.any_params();
        double z = g.signed_banded_z(p);
        if (p.jump_point() && std::abs(std::abs(z) - *p.jump_point()) < 1e-6)
            continue;
        oracle::OracleResult o = oracle::oracle_minimize(p, z, cfg);
        CHECK(std::abs(o.argmin - prox_scalar(p, z).canonical()) <= 10.0 * o.final_spacing);
    }
}

}
