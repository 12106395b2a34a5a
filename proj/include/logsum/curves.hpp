#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "logsum/irl1.hpp"
#include "logsum/scalar.hpp"

namespace logsum {

/// One sample of the prox graph. At +-z* the two branch values are emitted
/// as consecutive rows with the same z.
struct SweepRow {
    enum class Branch { Single, PairZero, PairNonzero };
    double z;
    double value;
    Branch branch;
};
const char *to_string(SweepRow::Branch b);

/// Samples prox_scalar on `points` equally spaced z in [from, to]; +-z* are
/// inserted when they fall inside the range. Requires from < to, points >= 2.
std::vector<SweepRow> prox_sweep(const ProxParams &p, double from, double to, std::size_t points);

/// IRL1 limit against the true prox at one z.
struct FailureSweepRow {
    double z;
    double simulated_limit;
    double predicted_limit;
    ProxResult true_prox = ProxResult::zero();
    bool agree; ///< predicted limit is an element of the true prox
    bool in_reported_interval;
};

std::vector<FailureSweepRow> failure_sweep(const ProxParams &p, double x0, double from, double to,
                                           std::size_t points);

/// True if limit is an element of prox up to tol * max(1, |limit|).
bool irl1_agrees(const ProxResult &prox, double limit, double tol = 1e-9);

} // namespace logsum
