#include "logsum/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "logsum/errors.hpp"

namespace logsum::oracle {

namespace {

struct Objective {
    double lambda;
    double epsilon;
    double z;

    double operator()(double x) const {
        const double d = x - z;
        return d * d / (2.0 * lambda) + std::log1p(std::abs(x) / epsilon);
    }

    // q(x) - q(ref) without forming either value; stays accurate when the two
    // points are close, which the refinement rounds depend on.
    double delta(double x, double ref) const {
        const double quad = (x - ref) * (x + ref - 2.0 * z) / (2.0 * lambda);
        const double log_term = std::log1p((std::abs(x) - std::abs(ref)) / (epsilon + std::abs(ref)));
        return quad + log_term;
    }
};

bool better(double dq, double x, double best_dq, double best_x) {
    return dq < best_dq || (dq == best_dq && std::abs(x) < std::abs(best_x));
}

struct Refined {
    double x;
    double spacing;
};

Refined refine(const Objective &q, double centre, double spacing, int rounds) {
    constexpr long half_window = 400; // +-4 coarse cells at 100x finer spacing
    for (int r = 0; r < rounds; ++r) {
        const double fine = spacing / 100.0;
        double best_x = centre;
        double best_dq = 0.0;
        for (long j = -half_window; j <= half_window; ++j) {
            if (j == 0)
                continue;
            const double x = centre + static_cast<double>(j) * fine;
            const double dq = q.delta(x, centre);
            if (better(dq, x, best_dq, best_x)) {
                best_dq = dq;
                best_x = x;
            }
        }
        centre = best_x;
        spacing = fine;
    }
    return {centre, spacing};
}

} // namespace

void OracleConfig::validate() const {
    if (grid_points < 1000)
        throw DomainError("OracleConfig: grid_points must be >= 1000");
    if (refine_rounds < 1)
        throw DomainError("OracleConfig: refine_rounds must be >= 1");
    if (!(search_radius_factor > 0))
        throw DomainError("OracleConfig: search_radius_factor must be > 0");
}

OracleResult oracle_minimize(const ProxParams &p, double z, const OracleConfig &cfg) {
    cfg.validate();
    const Objective q{p.lambda(), p.epsilon(), z};

    // odd point count so that x = 0 is a grid point
    const std::size_t n = cfg.grid_points | 1u;
    const long half = static_cast<long>(n / 2);
    const double radius = std::abs(z) + cfg.search_radius_factor;
    const double h = radius / static_cast<double>(half);

    struct LocalMin {
        long i;
        double x;
        double value;
    };
    std::vector<LocalMin> minima;
    double prev = INFINITY;
    double cur = q(static_cast<double>(-half) * h);
    for (long i = -half; i <= half; ++i) {
        const double next = i < half ? q(static_cast<double>(i + 1) * h) : INFINITY;
        if (cur <= prev && cur <= next)
            minima.push_back({i, static_cast<double>(i) * h, cur});
        prev = cur;
        cur = next;
    }

    std::sort(minima.begin(), minima.end(), [](const LocalMin &a, const LocalMin &b) {
        return a.value < b.value || (a.value == b.value && std::abs(a.x) < std::abs(b.x));
    });
    const LocalMin first = minima.front();
    const LocalMin *second = nullptr;
    for (const auto &m : minima)
        if (std::abs(m.i - first.i) > 8) {
            second = &m;
            break;
        }

    Refined best = refine(q, first.x, h, cfg.refine_rounds);
    OracleResult out;
    out.final_spacing = best.spacing;
    if (second) {
        Refined alt = refine(q, second->x, h, cfg.refine_rounds);
        const double dq = q.delta(alt.x, best.x);
        if (std::abs(alt.x - best.x) > 10.0 * best.spacing) {
            out.near_tie = std::abs(dq) < 1e-12;
            if (better(dq, alt.x, 0.0, best.x))
                std::swap(best, alt);
            out.runner_up = alt.x;
        }
    }
    out.argmin = best.x;
    out.objective = q(best.x);
    return out;
}

double oracle_prox(const ProxParams &p, double z, const OracleConfig &cfg) {
    return oracle_minimize(p, z, cfg).argmin;
}

double oracle_z_star(const ProxParams &p, const OracleConfig &cfg) {
    if (p.regime() != Regime::Nonconvex)
        throw RegimeError("oracle_z_star: convex regime has no jump point");
    const double lo0 = 2.0 * std::sqrt(p.lambda()) - p.epsilon();
    const double hi0 = p.lambda() / p.epsilon();

    auto jumped = [&](double z) {
        const OracleResult r = oracle_minimize(p, z, cfg);
        return std::abs(r.argmin) > 100.0 * r.final_spacing;
    };

    constexpr int sweep_points = 32;
    double lo = lo0;
    double hi = hi0;
    for (int k = 1; k <= sweep_points; ++k) {
        const double z = lo0 + (hi0 - lo0) * k / sweep_points;
        if (jumped(z)) {
            hi = z;
            break;
        }
        lo = z;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi)
            break;
        (jumped(mid) ? hi : lo) = mid;
    }
    return lo + 0.5 * (hi - lo);
}

} // namespace logsum::oracle
