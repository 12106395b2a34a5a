#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "logsum/scalar.hpp"

namespace logsum {

/// Componentwise prox of f(x) = sum_i log(1 + |x_i| / epsilon).
///
/// The full minimizer set is the Cartesian product of the scalar sets. It is
/// stored as one canonical selection (0 wherever the scalar prox is a Pair)
/// plus the alternative nonzero values at the ambiguous indices.
struct VectorProxResult {
    std::vector<double> canonical;
    std::vector<std::size_t> ambiguous_indices;
    std::vector<double> alternatives; ///< nonzero branch, parallel to ambiguous_indices
    double objective_value = 0.0;

    /// Number of minimizers is 2^ambiguity().
    std::size_t ambiguity() const { return ambiguous_indices.size(); }

    /// The minimizer that takes the nonzero branch at ambiguous_indices[k]
    /// for every bit k set in mask. Requires ambiguity() < 64.
    std::vector<double> select(std::uint64_t mask) const;
};

/// sum_i log(1 + |x_i| / epsilon)
double log_sum_penalty(const ProxParams &p, std::span<const double> x);

/// ||x - z||^2 / (2 lambda) + sum_i log(1 + |x_i| / epsilon)
double prox_objective(const ProxParams &p, std::span<const double> z, std::span<const double> x);

/// Throws DomainError on empty or non-finite input.
VectorProxResult prox_vector(const ProxParams &p, std::span<const double> z);

bool is_descending_nonnegative(std::span<const double> x);

/// For z sorted descending and nonnegative, reports whether the canonical prox
/// stays sorted descending and nonnegative. PreconditionError otherwise.
bool prox_vector_sorted_check(const ProxParams &p, std::span<const double> z);

} // namespace logsum
