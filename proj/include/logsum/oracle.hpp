#pragma once

#include <cstddef>

#include "logsum/scalar.hpp"

namespace logsum::oracle {

// Brute-force reference for the scalar prox. Only evaluates the objective
// (x - z)^2 / (2 lambda) + log(1 + |x| / eps) on grids; never touches the
// stationary-point formulas, so agreement with prox_scalar is evidence.

struct OracleConfig {
    std::size_t grid_points = 2'000'000;
    /// The coarse grid spans [-|z| - f, |z| + f].
    double search_radius_factor = 1.0;
    /// Each round shrinks the spacing 100x around the incumbent.
    int refine_rounds = 3;

    /// Throws DomainError unless grid_points >= 1000, refine_rounds >= 1 and
    /// search_radius_factor > 0.
    void validate() const;
};

struct OracleResult {
    double argmin = 0.0;
    double objective = 0.0;
    double final_spacing = 0.0;
    /// Runner-up basin within 1e-12 in objective (expected only near +-z*).
    bool near_tie = false;
    double runner_up = 0.0;
};

OracleResult oracle_minimize(const ProxParams &p, double z, const OracleConfig &cfg = {});

/// The refined grid minimizer of q_z; ties go to the smaller |x|.
double oracle_prox(const ProxParams &p, double z, const OracleConfig &cfg = {});

/// Locates the z where the oracle minimizer jumps from 0 to a positive value
/// by a sweep over [2 sqrt(lambda) - eps, lambda / eps] and bisection on the
/// sweep's bracketing pair. RegimeError in the convex regime.
double oracle_z_star(const ProxParams &p, const OracleConfig &cfg = {});

} // namespace logsum::oracle
