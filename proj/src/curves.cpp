#include "logsum/curves.hpp"

#include <algorithm>
#include <cmath>

#include "logsum/errors.hpp"
#include "logsum/parallel.hpp"

namespace logsum {

namespace {

std::vector<double> linspace(double from, double to, std::size_t points) {
    if (!(std::isfinite(from) && std::isfinite(to) && from < to))
        throw DomainError("sweep: need finite from < to");
    if (points < 2)
        throw DomainError("sweep: need at least 2 points");
    std::vector<double> z(points);
    const double step = (to - from) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        z[i] = from + step * static_cast<double>(i);
    z.back() = to;
    return z;
}

} // namespace

const char *to_string(SweepRow::Branch b) {
    switch (b) {
    case SweepRow::Branch::Single:
        return "single";
    case SweepRow::Branch::PairZero:
        return "pair_zero";
    case SweepRow::Branch::PairNonzero:
        return "pair_nonzero";
    }
    return "?";
}

std::vector<SweepRow> prox_sweep(const ProxParams &p, double from, double to, std::size_t points) {
    std::vector<double> zs = linspace(from, to, points);
    if (auto jump = p.jump_point()) {
        for (double j : {-*jump, *jump})
            if (j >= from && j <= to)
                zs.push_back(j);
        std::sort(zs.begin(), zs.end());
    }

    std::vector<ProxResult> vals(zs.size(), ProxResult::zero());
    parallel_for(zs.size(), 4096, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            vals[i] = prox_scalar(p, zs[i]);
    });

    std::vector<SweepRow> rows;
    rows.reserve(zs.size() + 2);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (vals[i].is_singleton()) {
            rows.push_back({zs[i], vals[i].canonical(), SweepRow::Branch::Single});
        } else {
            // order the pair so that the curve is traced left to right
            const SweepRow zero{zs[i], 0.0, SweepRow::Branch::PairZero};
            const SweepRow nonzero{zs[i], vals[i].nonzero(), SweepRow::Branch::PairNonzero};
            if (zs[i] < 0) {
                rows.push_back(nonzero);
                rows.push_back(zero);
            } else {
                rows.push_back(zero);
                rows.push_back(nonzero);
            }
        }
    }
    return rows;
}

bool irl1_agrees(const ProxResult &prox, double limit, double tol) {
    return prox.contains(limit, tol * std::max(1.0, std::abs(limit)));
}

std::vector<FailureSweepRow> failure_sweep(const ProxParams &p, double x0, double from, double to,
                                           std::size_t points) {
    const std::vector<double> zs = linspace(from, to, points);
    const FailureReport report = failure_intervals(p, x0);
    std::vector<FailureSweepRow> rows(zs.size());
    parallel_for(zs.size(), 64, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            FailureSweepRow &row = rows[i];
            row.z = zs[i];
            row.simulated_limit = irl1_simulate(p, zs[i], x0).limit_estimate;
            row.predicted_limit = irl1_predict_limit(p, zs[i], x0).limit;
            row.true_prox = prox_scalar(p, zs[i]);
            row.agree = irl1_agrees(row.true_prox, row.predicted_limit);
            row.in_reported_interval = report.contains(zs[i]);
        }
    });
    return rows;
}

} // namespace logsum
