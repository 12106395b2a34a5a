#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "logsum/scalar.hpp"

namespace logsum::testing {

// Seeded generators for property tests. Every draw goes through one engine so
// a failing case is reproducible from the seed alone.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
    bool coin() { return integer(0, 1) == 1; }
    std::mt19937_64 &engine() { return rng_; }

    /// (lambda, eps) with sqrt(lambda) <= eps.
    ProxParams convex_params() {
        double eps = log_uniform(0.05, 20.0);
        double lambda = eps * eps * uniform(0.01, 1.0);
        return {lambda, eps};
    }

    /// (lambda, eps) with sqrt(lambda) / eps in [1.05, 10].
    ProxParams nonconvex_params() {
        double eps = log_uniform(0.05, 5.0);
        double ratio = uniform(1.05, 10.0);
        return {(ratio * eps) * (ratio * eps), eps};
    }

    ProxParams any_params() { return coin() ? convex_params() : nonconvex_params(); }

    /// z >= 0 drawn from one of the bands (0, lo), (lo, z*), (z*, hi), (hi, 3 hi)
    /// with lo = max(2 sqrt(lambda) - eps, 0) and hi = lambda / eps.
    double banded_z(const ProxParams &p) {
        double lo = std::max(p.critical_lower(), 0.0);
        double hi = p.critical_upper();
        double mid = p.jump_point().value_or(0.5 * (lo + hi));
        switch (integer(0, 3)) {
        case 0: return uniform(0.0, lo > 0 ? lo : hi);
        case 1: return uniform(lo, mid);
        case 2: return uniform(mid, hi);
        default: return uniform(hi, 3.0 * hi + 1.0);
        }
    }

    double signed_banded_z(const ProxParams &p) { return coin() ? banded_z(p) : -banded_z(p); }

private:
    std::mt19937_64 rng_;
};

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

} // namespace logsum::testing
