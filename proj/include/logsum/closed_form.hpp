#pragma once

// Closed-form kernels of the scalar log-sum prox, written once for any real
// type so that tests can re-evaluate the exact same expressions in extended
// precision. The double-precision API in scalar.hpp forwards here.

#include <algorithm>
#include <cmath>

#include "logsum/errors.hpp"

namespace logsum::closed_form {

/// Discriminant values in [-disc_clamp * max(1, lambda), 0) are treated as 0.
inline constexpr double disc_clamp = 1e-12;

template <class Real>
struct StationaryRoots {
    Real smaller; // r1
    Real larger;  // r2
};

/// q(x) = (x - z)^2 / (2 lambda) + log(1 + |x| / epsilon)
template <class Real>
Real objective(const Real &lambda, const Real &epsilon, const Real &z, const Real &x) {
    using std::abs;
    using std::log1p;
    const Real d = x - z;
    return d * d / (2 * lambda) + log1p(abs(x) / epsilon);
}

/// Roots of x^2 - (z - epsilon) x + (lambda - z epsilon) = 0, i.e. the
/// solutions of x = z - lambda / (epsilon + x). Requires z >= 0.
///
/// The root of larger magnitude comes from the sum formula and the other from
/// the product of roots, so r1(lambda/epsilon) = 0 and r2(lambda/epsilon) = 0
/// (in their respective regimes) come out exactly.
template <class Real>
StationaryRoots<Real> stationary_roots(const Real &lambda, const Real &epsilon, const Real &z) {
    using std::sqrt;
    if (!(z >= 0))
        throw DomainError("stationary roots require z >= 0");
    const Real s = z + epsilon;
    Real disc = s * s / 4 - lambda;
    if (disc < 0) {
        const Real floor = -Real(disc_clamp) * (lambda > 1 ? lambda : Real(1));
        if (disc < floor)
            throw DomainError("negative discriminant: z < 2*sqrt(lambda) - epsilon");
        disc = 0;
    }
    const Real half = (z - epsilon) / 2;
    const Real root = sqrt(disc);
    const Real product = lambda - z * epsilon;
    StationaryRoots<Real> out;
    if (half >= 0) {
        out.larger = half + root;
        out.smaller = out.larger > 0 ? product / out.larger : half - root;
    } else {
        out.smaller = half - root;
        out.larger = product / out.smaller;
    }
    // drop negative zeros produced by 0 / negative
    out.larger += Real(0);
    out.smaller += Real(0);
    return out;
}

/// r(z) = q_z(r2(z)) - q_z(0), expanded so that the z^2 terms cancel exactly.
template <class Real>
Real gap(const Real &lambda, const Real &epsilon, const Real &z) {
    using std::log1p;
    const Real r2 = stationary_roots(lambda, epsilon, z).larger;
    return r2 * (r2 - 2 * z) / (2 * lambda) + log1p(r2 / epsilon);
}

} // namespace logsum::closed_form
