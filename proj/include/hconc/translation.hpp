#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hconc/core.hpp"
#include "hconc/quadrature.hpp"

namespace hconc::translation {

using Function = std::function<double(double)>;

/// Generalized translation
///   T_x f(y) = Gamma(a+1) / (sqrt(pi) Gamma(a+1/2)) int_0^pi f(sqrt(x^2+y^2-2xy cos t)) sin^{2a} t dt,
/// evaluated in c = cos t against the weight (1-c^2)^(a-1/2) with Gauss-Gegenbauer
/// rules. The node count starts at `initial_nodes` and doubles until two
/// successive values agree to `tolerance` (relative to max(1, |value|)).
/// a = -1/2 uses the two-point limit (f(x+y) + f(|x-y|)) / 2.
class TranslationPlan {
public:
    explicit TranslationPlan(Order order, int initial_nodes = 256, double tolerance = 1e-10, int max_nodes = 16384);

    const Order& order() const noexcept { return order_; }
    /// Rule on (-1, 1) in c = cos(theta) with the weight folded in and the
    /// normalizing constant applied; empty for alpha = -1/2.
    const quad::QuadratureRule& theta_rule() const noexcept { return base_; }

    /// Throws NumericalError when max_nodes is reached without agreement.
    double translate(double x, const Function& f, double y) const;

private:
    double apply(const quad::QuadratureRule& rule, double x, const Function& f, double y) const;

    Order order_;
    int initial_nodes_;
    double tolerance_;
    int max_nodes_;
    quad::QuadratureRule base_;
};

/// Kernel W(x, y, t) of T_x with respect to mu_alpha(t); zero outside (|x-y|, x+y).
double kernel_W(const Order& order, double x, double y, double t);

/// T_x f(y) as int f(t) W(x, y, t) dmu_alpha(t), by an n-point Gauss-Jacobi rule on
/// (|x-y|, x+y). An independent route to the same operator; needs alpha > -1/2.
double translate_by_kernel(const Order& order, double x, const Function& f, double y, int n = 128);

/// (f *_alpha g)(x) = int f(t) T_x g(t) dmu_alpha(t) at each out node.
std::vector<double> convolve(const TranslationPlan& plan, const quad::SampledFunction& f, const Function& g,
                             std::span<const double> out_nodes);

} // namespace hconc::translation
