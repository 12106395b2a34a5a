#include "logsum/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "logsum/closed_form.hpp"
#include "logsum/errors.hpp"

namespace logsum {

namespace {

ZStarResult bisect_jump(double lambda, double epsilon, double tol, int max_iter) {
    const double lo0 = 2.0 * std::sqrt(lambda) - epsilon;
    const double hi0 = lambda / epsilon;
    if (!(tol > 0))
        throw DomainError("z_star: tolerance must be positive");
    if (max_iter < 1)
        throw DomainError("z_star: max_iter must be at least 1");

    auto gap = [&](double z) { return closed_form::gap(lambda, epsilon, z); };

    // gap(lo0) > 0 > gap(hi0) whenever sqrt(lambda) > epsilon
    double lo = lo0;
    double hi = hi0;
    int iter = 0;
    bool converged = false;
    while (iter < max_iter) {
        if (hi - lo <= tol) {
            converged = true;
            break;
        }
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) {
            // bracket is two adjacent doubles
            converged = true;
            break;
        }
        ++iter;
        const double g = gap(mid);
        if (g == 0.0) {
            lo = hi = mid;
            converged = true;
            break;
        }
        if (g > 0)
            lo = mid;
        else
            hi = mid;
    }
    if (!converged && hi - lo <= tol)
        converged = true;
    if (!converged)
        throw ConvergenceError("z_star: bisection did not reach tolerance in " +
                               std::to_string(max_iter) + " iterations");

    ZStarResult out;
    out.z_star = lo + 0.5 * (hi - lo);
    out.bracket = {lo0, hi0};
    out.iterations = iter;
    out.residual = std::abs(gap(out.z_star));
    out.final_width = hi - lo;
    return out;
}

void require_nonconvex(const ProxParams &p, const char *what) {
    if (p.regime() != Regime::Nonconvex)
        throw RegimeError(std::string(what) + ": convex regime (sqrt(lambda) <= epsilon) has no jump point");
}

} // namespace

const char *to_string(Regime r) {
    return r == Regime::Convex ? "convex" : "nonconvex";
}

ProxParams::ProxParams(double lambda, double epsilon) : lambda_(lambda), epsilon_(epsilon) {
    if (!(std::isfinite(lambda) && lambda > 0))
        throw DomainError("lambda must be finite and > 0, got " + std::to_string(lambda));
    if (!(std::isfinite(epsilon) && epsilon > 0))
        throw DomainError("epsilon must be finite and > 0, got " + std::to_string(epsilon));
    // sqrt(lambda) == epsilon is classified convex
    regime_ = std::sqrt(lambda) <= epsilon ? Regime::Convex : Regime::Nonconvex;
    if (regime_ == Regime::Nonconvex) {
        const double width = lambda / epsilon - (2.0 * std::sqrt(lambda) - epsilon);
        z_star_ = bisect_jump(lambda, epsilon, 1e-13 * width, default_z_star_max_iter).z_star;
    }
}

double ProxParams::critical_lower() const {
    return 2.0 * std::sqrt(lambda_) - epsilon_;
}

std::optional<double> ProxParams::jump_point() const {
    if (regime_ == Regime::Convex)
        return std::nullopt;
    return z_star_;
}

double ProxParams::jump_tolerance() const {
    return 1e-12 * std::max(1.0, z_star_);
}

std::vector<double> ProxResult::elements() const {
    switch (kind_) {
    case Kind::Zero:
        return {0.0};
    case Kind::Point:
        return {value_};
    case Kind::Pair:
        return {0.0, value_};
    }
    return {};
}

double ProxResult::min() const {
    return kind_ == Kind::Point ? value_ : std::min(0.0, value_);
}

double ProxResult::max() const {
    return kind_ == Kind::Point ? value_ : std::max(0.0, value_);
}

bool ProxResult::contains(double x, double tol) const {
    for (double v : elements())
        if (std::abs(v - x) <= tol)
            return true;
    return false;
}

const char *to_string(ProxResult::Kind k) {
    switch (k) {
    case ProxResult::Kind::Zero:
        return "zero";
    case ProxResult::Kind::Point:
        return "point";
    case ProxResult::Kind::Pair:
        return "pair";
    }
    return "?";
}

double q_objective(const ProxParams &p, double z, double x) {
    return closed_form::objective(p.lambda(), p.epsilon(), z, x);
}

double r1(const ProxParams &p, double z) {
    return closed_form::stationary_roots(p.lambda(), p.epsilon(), z).smaller;
}

double r2(const ProxParams &p, double z) {
    return closed_form::stationary_roots(p.lambda(), p.epsilon(), z).larger;
}

double gap_r(const ProxParams &p, double z) {
    require_nonconvex(p, "gap_r");
    if (!(z >= p.critical_lower() && z <= p.critical_upper()))
        throw DomainError("gap_r: z outside [2 sqrt(lambda) - epsilon, lambda / epsilon]");
    return closed_form::gap(p.lambda(), p.epsilon(), z);
}

double default_z_star_tolerance(const ProxParams &p) {
    return 1e-13 * (p.critical_upper() - p.critical_lower());
}

ZStarResult z_star(const ProxParams &p, double tol, int max_iter) {
    require_nonconvex(p, "z_star");
    return bisect_jump(p.lambda(), p.epsilon(), tol, max_iter);
}

ZStarResult z_star(const ProxParams &p) {
    return z_star(p, default_z_star_tolerance(p), default_z_star_max_iter);
}

ProxResult prox_scalar(const ProxParams &p, double z) {
    if (std::isnan(z))
        throw DomainError("prox_scalar: z is NaN");
    const double a = std::abs(z);
    if (a == 0.0)
        return ProxResult::zero();
    const double sign = z < 0 ? -1.0 : 1.0;

    if (p.regime() == Regime::Convex) {
        if (a <= p.critical_upper())
            return ProxResult::zero();
        return ProxResult::point(sign * r2(p, a));
    }

    const double zs = *p.jump_point();
    const double tol = p.jump_tolerance();
    if (a < zs - tol)
        return ProxResult::zero();
    if (a <= zs + tol)
        return ProxResult::pair(sign * r2(p, zs));
    return ProxResult::point(sign * r2(p, a));
}

} // namespace logsum
