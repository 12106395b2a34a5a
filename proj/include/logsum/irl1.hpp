#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "logsum/scalar.hpp"

namespace logsum {

// Iteratively reweighted l1 for the scalar prox subproblem:
//   x_{k+1} = soft_threshold(z, lambda / (epsilon + |x_k|)).
// The analysis is carried out for z >= 0; negative z is simulated at |z| and
// the limit negated.

enum class StopReason { FixedPointHit, ToleranceMet, MaxIters };
const char *to_string(StopReason r);

struct IrlTrace {
    double z = 0.0;
    double x0 = 0.0;
    std::vector<double> iterates; ///< iterates[0] == x0, all computed at |z|
    StopReason stop_reason = StopReason::MaxIters;
    double limit_estimate = 0.0; ///< last iterate, carrying sgn(z)
};

enum class LimitClass { Zero, R1FixedPoint, R2 };
const char *to_string(LimitClass c);

/// Which step of the convergence case analysis decided the limit:
///  conv1  monotone trajectory (not a limit rule by itself; unused)
///  conv2  some iterate is 0: limit 0 if z <= lambda/eps, else r2(z)
///  conv3  z >= lambda/eps and x0 > 0: limit r2(z)
///  conv4  z < 2 sqrt(lambda) - eps: limit 0
///  conv5  convex regime, z < lambda/eps: limit 0
///  conv6  nonconvex, z in [2 sqrt(lambda) - eps, lambda/eps): compare x0 with r1(z)
struct LimitPrediction {
    double limit = 0.0;
    LimitClass classification = LimitClass::Zero;
    std::string justification;
};

inline constexpr double default_irl1_stop_tol = 1e-12;
inline constexpr std::size_t default_irl1_max_iters = 1'000'000;

/// One reweighted soft-threshold step; requires z >= 0 and x_k >= 0.
double irl1_step(const ProxParams &p, double z, double x_k);

IrlTrace irl1_simulate(const ProxParams &p, double z, double x0,
                       double stop_tol = default_irl1_stop_tol,
                       std::size_t max_iters = default_irl1_max_iters);

/// Analytic limit of irl1_simulate, without iterating.
LimitPrediction irl1_predict_limit(const ProxParams &p, double z, double x0);

/// Inverse of r1 on [2 sqrt(lambda) - eps, inf): x0 + lambda / (eps + x0).
/// Nonconvex regime only; DomainError unless -eps < x0 <= sqrt(lambda) - eps.
double r1_inverse(const ProxParams &p, double x0);

/// An interval of z on which the IRL1 limit is not in prox_scalar(z).
/// A degenerate interval (lo == hi, both closed) is a single point.
struct Interval {
    double lo;
    double hi;
    bool lo_closed;
    bool hi_closed;

    bool contains(double z) const;
};

enum class FailureCase {
    ConvexExact,   ///< no failures
    LargeInit,     ///< x0 >= sqrt(lambda) - eps
    MidInit,       ///< r1(z*) < x0 < sqrt(lambda) - eps
    KnifeEdgeInit, ///< x0 == r1(z*)
    SmallInit,     ///< 0 <= x0 < r1(z*)
};
const char *to_string(FailureCase c);

struct FailureReport {
    double x0 = 0.0;
    double z_star = 0.0; ///< 0 in the convex regime
    std::vector<Interval> intervals; ///< symmetric about 0, negative side first
    FailureCase failure_case = FailureCase::ConvexExact;

    bool contains(double z) const;
};

/// Exact set of z on which IRL1 started at x0 misses the true prox.
/// Endpoint membership follows the closed/open flags as derived; it is not
/// resolvable in floating point and should not be relied on at the ends.
FailureReport failure_intervals(const ProxParams &p, double x0);

} // namespace logsum
