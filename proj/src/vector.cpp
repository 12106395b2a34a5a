#include "logsum/vector.hpp"

#include <cmath>
#include <string>

#include "logsum/errors.hpp"
#include "logsum/parallel.hpp"

namespace logsum {

std::vector<double> VectorProxResult::select(std::uint64_t mask) const {
    if (ambiguous_indices.size() >= 64)
        throw PreconditionError("select: more than 63 ambiguous indices, enumerate manually");
    std::vector<double> x = canonical;
    for (std::size_t k = 0; k < ambiguous_indices.size(); ++k)
        if (mask & (std::uint64_t{1} << k))
            x[ambiguous_indices[k]] = alternatives[k];
    return x;
}

double log_sum_penalty(const ProxParams &p, std::span<const double> x) {
    double s = 0.0;
    for (double v : x)
        s += std::log1p(std::abs(v) / p.epsilon());
    return s;
}

double prox_objective(const ProxParams &p, std::span<const double> z, std::span<const double> x) {
    if (z.size() != x.size())
        throw PreconditionError("prox_objective: length mismatch");
    double sq = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double d = x[i] - z[i];
        sq += d * d;
    }
    return sq / (2.0 * p.lambda()) + log_sum_penalty(p, x);
}

VectorProxResult prox_vector(const ProxParams &p, std::span<const double> z) {
    if (z.empty())
        throw DomainError("prox_vector: empty input");
    for (std::size_t i = 0; i < z.size(); ++i)
        if (!std::isfinite(z[i]))
            throw DomainError("prox_vector: non-finite entry at index " + std::to_string(i));

    std::vector<ProxResult> scalar(z.size(), ProxResult::zero());
    parallel_for(z.size(), 1 << 14, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            scalar[i] = prox_scalar(p, z[i]);
    });

    VectorProxResult out;
    out.canonical.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        out.canonical[i] = scalar[i].canonical();
        if (!scalar[i].is_singleton()) {
            out.ambiguous_indices.push_back(i);
            out.alternatives.push_back(scalar[i].nonzero());
        }
    }
    out.objective_value = prox_objective(p, z, out.canonical);
    return out;
}

bool is_descending_nonnegative(std::span<const double> x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= 0))
            return false;
        if (i > 0 && x[i] > x[i - 1])
            return false;
    }
    return true;
}

bool prox_vector_sorted_check(const ProxParams &p, std::span<const double> z) {
    if (!is_descending_nonnegative(z))
        throw PreconditionError("prox_vector_sorted_check: input must be sorted descending and nonnegative");
    return is_descending_nonnegative(prox_vector(p, z).canonical);
}

} // namespace logsum
