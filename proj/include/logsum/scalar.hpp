#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace logsum {

enum class Regime {
    Convex,    ///< sqrt(lambda) <= epsilon: prox is continuous and single valued
    Nonconvex, ///< sqrt(lambda) > epsilon: prox jumps at +-z*
};

const char *to_string(Regime r);

/// Prox index lambda and penalty scale epsilon of
///   prox(z) = argmin_x (x - z)^2 / (2 lambda) + log(1 + |x| / epsilon).
///
/// Immutable. In the nonconvex regime the jump point z* is located once at
/// construction, so copies can be shared freely across threads.
class ProxParams {
public:
    /// Throws DomainError unless both values are finite and positive.
    ProxParams(double lambda, double epsilon);

    double lambda() const { return lambda_; }
    double epsilon() const { return epsilon_; }
    Regime regime() const { return regime_; }

    /// 2 sqrt(lambda) - epsilon, below which q has no interior stationary point.
    double critical_lower() const;
    /// lambda / epsilon, the soft-threshold level of the first IRL1 step.
    double critical_upper() const { return lambda_ / epsilon_; }

    /// The jump point z*; empty in the convex regime.
    std::optional<double> jump_point() const;

    /// Half-width of the band around z* that prox_scalar reports as a Pair.
    double jump_tolerance() const;

private:
    double lambda_;
    double epsilon_;
    Regime regime_;
    double z_star_ = 0.0;
};

/// Value of prox_scalar: {0}, {v}, or the two-point set {0, v} at |z| = z*.
/// Nonzero values carry the sign of the input.
class ProxResult {
public:
    enum class Kind { Zero, Point, Pair };

    static ProxResult zero() { return ProxResult(Kind::Zero, 0.0); }
    static ProxResult point(double v) { return ProxResult(Kind::Point, v); }
    static ProxResult pair(double nonzero) { return ProxResult(Kind::Pair, nonzero); }

    Kind kind() const { return kind_; }
    bool is_singleton() const { return kind_ != Kind::Pair; }

    /// The selected minimizer: 0 for Zero and Pair, the value for Point.
    double canonical() const { return kind_ == Kind::Point ? value_ : 0.0; }
    /// The nonzero element, or 0 for Zero.
    double nonzero() const { return value_; }

    std::vector<double> elements() const;
    double min() const;
    double max() const;

    /// True if some element lies within tol of x.
    bool contains(double x, double tol = 0.0) const;

    friend bool operator==(const ProxResult &, const ProxResult &) = default;

private:
    ProxResult(Kind k, double v) : kind_(k), value_(v) {}
    Kind kind_;
    double value_;
};

const char *to_string(ProxResult::Kind k);

struct ZStarResult {
    double z_star;
    std::pair<double, double> bracket; ///< initial bracket [2 sqrt(lambda) - eps, lambda / eps]
    int iterations;
    double residual; ///< |gap_r(z_star)|
    double final_width;
};

/// (x - z)^2 / (2 lambda) + log(1 + |x| / epsilon)
double q_objective(const ProxParams &p, double z, double x);

/// Smaller root of x = z - lambda / (epsilon + x); defined for
/// z >= max(2 sqrt(lambda) - epsilon, 0). Throws DomainError below that.
double r1(const ProxParams &p, double z);

/// Larger root of x = z - lambda / (epsilon + x); same domain as r1.
double r2(const ProxParams &p, double z);

/// q_z(r2(z)) - q_z(0) on [2 sqrt(lambda) - epsilon, lambda / epsilon].
/// RegimeError in the convex regime, DomainError outside the bracket.
double gap_r(const ProxParams &p, double z);

/// Default bisection tolerance: 1e-13 times the bracket width.
double default_z_star_tolerance(const ProxParams &p);
inline constexpr int default_z_star_max_iter = 200;

/// Bisection for the unique root of gap_r on (2 sqrt(lambda) - eps, lambda / eps).
ZStarResult z_star(const ProxParams &p, double tol, int max_iter = default_z_star_max_iter);
ZStarResult z_star(const ProxParams &p);

/// Exact proximity operator of log(1 + |w| / epsilon) with index lambda.
ProxResult prox_scalar(const ProxParams &p, double z);

} // namespace logsum
