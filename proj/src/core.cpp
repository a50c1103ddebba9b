#include "hconc/core.hpp"

#include <cmath>

namespace hconc {

Order::Order(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || alpha < -0.5)
        throw std::invalid_argument("order alpha must be finite and >= -1/2, got " +
                                    std::to_string(alpha));
    mu_const_ = 2.0 * std::pow(pi, alpha + 1.0) / std::tgamma(alpha + 1.0);
}

double Order::mu_density(double x) const {
    // x^(2 alpha + 1) with 0^0 = 1 at alpha = -1/2
    return mu_const_ * std::pow(x, 2.0 * alpha_ + 1.0);
}

} // namespace hconc
