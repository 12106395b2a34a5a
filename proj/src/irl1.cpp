#include "logsum/irl1.hpp"

#include <algorithm>
#include <cmath>

#include "logsum/errors.hpp"

namespace logsum {

namespace {

double knife_edge_tol(double v) {
    return 1e-12 * std::max(1.0, std::abs(v));
}

void require_nonnegative(double x, const char *what) {
    if (!(std::isfinite(x) && x >= 0))
        throw DomainError(std::string(what) + " must be finite and >= 0");
}

LimitPrediction make(double limit, LimitClass c, const char *lemma) {
    return LimitPrediction{limit, c, lemma};
}

} // namespace

const char *to_string(StopReason r) {
    switch (r) {
    case StopReason::FixedPointHit:
        return "fixed_point_hit";
    case StopReason::ToleranceMet:
        return "tolerance_met";
    case StopReason::MaxIters:
        return "max_iters";
    }
    return "?";
}

const char *to_string(LimitClass c) {
    switch (c) {
    case LimitClass::Zero:
        return "zero";
    case LimitClass::R1FixedPoint:
        return "r1_fixed_point";
    case LimitClass::R2:
        return "r2";
    }
    return "?";
}

const char *to_string(FailureCase c) {
    switch (c) {
    case FailureCase::ConvexExact:
        return "convex_exact";
    case FailureCase::LargeInit:
        return "large_init";
    case FailureCase::MidInit:
        return "mid_init";
    case FailureCase::KnifeEdgeInit:
        return "knife_edge_init";
    case FailureCase::SmallInit:
        return "small_init";
    }
    return "?";
}

double irl1_step(const ProxParams &p, double z, double x_k) {
    require_nonnegative(z, "irl1_step: z");
    require_nonnegative(x_k, "irl1_step: x_k");
    const double threshold = p.lambda() / (p.epsilon() + x_k);
    return z <= threshold ? 0.0 : z - threshold;
}

IrlTrace irl1_simulate(const ProxParams &p, double z, double x0, double stop_tol,
                       std::size_t max_iters) {
    if (!std::isfinite(z))
        throw DomainError("irl1_simulate: z must be finite");
    require_nonnegative(x0, "irl1_simulate: x0");
    if (!(stop_tol > 0))
        throw DomainError("irl1_simulate: stop_tol must be > 0");

    const double a = std::abs(z);
    IrlTrace trace;
    trace.z = z;
    trace.x0 = x0;
    trace.iterates.push_back(x0);
    trace.stop_reason = StopReason::MaxIters;

    double x = x0;
    for (std::size_t k = 0; k < max_iters; ++k) {
        const double next = irl1_step(p, a, x);
        trace.iterates.push_back(next);
        if (next == x) {
            trace.stop_reason = StopReason::FixedPointHit;
            break;
        }
        const double step = std::abs(next - x);
        x = next;
        if (step <= stop_tol) {
            trace.stop_reason = StopReason::ToleranceMet;
            break;
        }
    }
    const double last = trace.iterates.back();
    trace.limit_estimate = z < 0 ? -last : last;
    return trace;
}

LimitPrediction irl1_predict_limit(const ProxParams &p, double z, double x0) {
    if (!std::isfinite(z))
        throw DomainError("irl1_predict_limit: z must be finite");
    require_nonnegative(x0, "irl1_predict_limit: x0");

    const double a = std::abs(z);
    const double sign = z < 0 ? -1.0 : 1.0;
    const double upper = p.critical_upper();
    const double lower = p.critical_lower();

    auto r2_limit = [&](const char *lemma) {
        const double v = r2(p, a);
        return make(sign * v, v > 0 ? LimitClass::R2 : LimitClass::Zero, lemma);
    };

    // an iterate hits 0: from x0 directly, or x1 = 0 after one step
    if (x0 == 0.0)
        return a <= upper ? make(0.0, LimitClass::Zero, "conv2") : r2_limit("conv2");
    if (a <= p.lambda() / (p.epsilon() + x0))
        return make(0.0, LimitClass::Zero, "conv2");

    if (a >= upper)
        return r2_limit("conv3");
    if (a < lower)
        return make(0.0, LimitClass::Zero, "conv4");
    if (p.regime() == Regime::Convex)
        return make(0.0, LimitClass::Zero, "conv5");

    // nonconvex, a in [2 sqrt(lambda) - eps, lambda / eps)
    const double r = r1(p, a);
    if (std::abs(x0 - r) <= knife_edge_tol(r))
        return make(sign * r, LimitClass::R1FixedPoint, "conv6");
    if (x0 < r)
        return make(0.0, LimitClass::Zero, "conv6");
    return r2_limit("conv6");
}

double r1_inverse(const ProxParams &p, double x0) {
    if (p.regime() != Regime::Nonconvex)
        throw RegimeError("r1_inverse: r1 is a bijection only in the nonconvex regime");
    const double top = std::sqrt(p.lambda()) - p.epsilon();
    if (!(x0 > -p.epsilon()) || x0 > top + knife_edge_tol(top))
        throw DomainError("r1_inverse: x0 must lie in (-epsilon, sqrt(lambda) - epsilon]");
    return x0 + p.lambda() / (p.epsilon() + x0);
}

bool Interval::contains(double z) const {
    const bool above = lo_closed ? z >= lo : z > lo;
    const bool below = hi_closed ? z <= hi : z < hi;
    return above && below;
}

bool FailureReport::contains(double z) const {
    return std::any_of(intervals.begin(), intervals.end(),
                       [z](const Interval &iv) { return iv.contains(z); });
}

FailureReport failure_intervals(const ProxParams &p, double x0) {
    require_nonnegative(x0, "failure_intervals: x0");
    FailureReport rep;
    rep.x0 = x0;
    if (p.regime() == Regime::Convex) {
        rep.failure_case = FailureCase::ConvexExact;
        return rep;
    }

    const double zs = *p.jump_point();
    rep.z_star = zs;
    const double lower = p.critical_lower();
    const double top = std::sqrt(p.lambda()) - p.epsilon();
    const double r1_star = r1(p, zs);

    // positive-side interval; the negative side is its mirror image
    auto add_mirrored = [&](Interval pos) {
        rep.intervals.push_back({-pos.hi, -pos.lo, pos.hi_closed, pos.lo_closed});
        rep.intervals.push_back(pos);
    };

    if (x0 >= top) {
        rep.failure_case = FailureCase::LargeInit;
        add_mirrored({lower, zs, true, false});
    } else if (std::abs(x0 - r1_star) <= knife_edge_tol(r1_star)) {
        rep.failure_case = FailureCase::KnifeEdgeInit;
        add_mirrored({zs, zs, true, true});
    } else if (x0 > r1_star) {
        rep.failure_case = FailureCase::MidInit;
        add_mirrored({r1_inverse(p, x0), zs, true, false});
    } else {
        rep.failure_case = FailureCase::SmallInit;
        add_mirrored({zs, r1_inverse(p, x0), false, true});
    }
    return rep;
}

} // namespace logsum
