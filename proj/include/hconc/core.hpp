#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace hconc {

inline constexpr double pi = std::numbers::pi;

/// Raised when an input lies outside a theorem's hypotheses (e.g. alpha < 0 for
/// the concentration bound, or an operator norm >= 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative numerical method did not reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Transform order alpha >= -1/2.
class Order {
public:
    explicit Order(double alpha);

    double alpha() const noexcept { return alpha_; }
    Order shifted(int k) const { return Order(alpha_ + k); }

    /// 2 pi^(alpha+1) / Gamma(alpha+1): the density constant of mu_alpha.
    double mu_constant() const noexcept { return mu_const_; }
    /// Density of mu_alpha at x.
    double mu_density(double x) const;

    friend bool operator==(const Order& a, const Order& b) { return a.alpha_ == b.alpha_; }

private:
    double alpha_;
    double mu_const_;
};

} // namespace hconc
