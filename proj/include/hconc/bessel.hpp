#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hconc/core.hpp"

/// Normalized Bessel function j_alpha(x) = 2^alpha Gamma(alpha+1) J_alpha(x) / x^alpha,
/// its derivative, a certified decay constant, and the zeros of j'_alpha.
namespace hconc::bessel {

/// j_alpha(x), even in x, j_alpha(0) = 1. Absolute error <= 1e-12 on [0, 1e4] for
/// orders up to a few dozen. Throws std::invalid_argument for non-finite x.
double eval_j(const Order& order, double x);

/// j'_alpha(x) = -x / (2(alpha+1)) j_{alpha+1}(x).
double eval_j_derivative(const Order& order, double x);

/// Empirical constant c with |j_alpha(t)| <= c (1+t)^(-alpha-1/2) on [0, grid_max].
struct BesselBound {
    double c_alpha;
    double grid_max;
};

/// Maximizes |j_alpha(t)| (1+t)^(alpha+1/2) on a dense grid over [0, t_max] and
/// inflates the maximum by 5%. The constant is empirical, not analytic.
BesselBound certify_bound(const Order& order, double t_max);

/// Positive zeros s'_1 < s'_2 < ... of j'_alpha (the zeros of j_{alpha+1}),
/// with the convention s'_0 = 0.
class ZeroTable {
public:
    ZeroTable(Order order, std::vector<double> zeros);

    const Order& order() const noexcept { return order_; }
    std::size_t count() const noexcept { return zeros_.size(); }
    /// s'_n for 0 <= n <= count(); s'_0 = 0.
    double at(std::size_t n) const;
    std::span<const double> zeros() const noexcept { return zeros_; }

    /// Name of the first violated invariant (ordering, root residual, spacing),
    /// or an empty string when the table is consistent.
    std::string check_invariants(double tolerance = 1e-12) const;

private:
    Order order_;
    std::vector<double> zeros_;
};

/// First `count` positive roots of j_{alpha+1}. Each root is bracketed around an
/// asymptotic guess and refined by safeguarded Newton until
/// |j_{alpha+1}(s'_n)| <= 1e-12 max(1, n). count must lie in [1, 1e6].
ZeroTable zeros_of_j_prime(const Order& order, std::size_t count);

namespace detail {
// Individual evaluation routes, exposed so tests can certify their overlap bands.
double series(double nu, double x);
double miller(double nu, double x);
double asymptotic_upward(double nu, double x);

inline constexpr double series_limit = 2.0;
inline constexpr double asymptotic_limit = 25.0;
} // namespace detail

} // namespace hconc::bessel
