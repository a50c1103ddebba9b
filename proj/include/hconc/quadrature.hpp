#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hconc/core.hpp"

namespace hconc::quad {

/// Nodes and Lebesgue weights on (lo, hi). Rules produced here are positive and
/// integrate polynomials of degree 2n-1 exactly (Gauss-Legendre) or are exact
/// for polynomial times a documented endpoint weight (see mu_adapted_rule).
struct QuadratureRule {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }

    template <class F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

/// n-point Gauss-Legendre rule mapped to (lo, hi), 1 <= n <= 1e5.
QuadratureRule build_rule(double lo, double hi, int n);

/// Gauss-Jacobi rule on (lo, hi) for the weight (hi-x)^a (x-lo)^b; the returned
/// weights already include that weight function. a, b > -1.
QuadratureRule gauss_jacobi(double lo, double hi, int n, double a, double b);

/// A Lebesgue rule on (lo, hi) whose mu_alpha-folded weights form a Gauss rule
/// for mu_alpha: Gauss-Jacobi with exponent 2 alpha + 1 at the origin when
/// lo == 0, Gauss-Legendre otherwise.
QuadratureRule mu_adapted_rule(const Order& order, double lo, double hi, int n);

/// Concatenation of rules on disjoint intervals; lo/hi become the hull.
QuadratureRule concatenate(std::span<const QuadratureRule> parts);

/// Weights w_i * dmu_alpha/dx (x_i).
std::vector<double> mu_weights(const Order& order, const QuadratureRule& rule);

/// A real function sampled at the nodes of a rule, supported in the rule's interval.
struct SampledFunction {
    QuadratureRule rule;
    std::vector<double> values;
};

template <class F>
SampledFunction sample(QuadratureRule rule, F&& f) {
    SampledFunction s{std::move(rule), {}};
    s.values.reserve(s.rule.size());
    for (double x : s.rule.nodes) s.values.push_back(f(x));
    return s;
}

/// ||f||_{L^2_alpha} by the rule.
double l2_norm(const Order& order, const SampledFunction& f);

/// Fourier-Bessel transform F(y) = int f(x) j_alpha(2 pi x y) dmu_alpha(x) at each y.
std::vector<double> forward(const Order& order, const SampledFunction& f, std::span<const double> out_nodes);

/// Inverse transform; the kernel is self-reciprocal so this equals forward.
std::vector<double> inverse(const Order& order, const SampledFunction& F, std::span<const double> out_nodes);

/// delta_lambda f(x) = lambda^{-(alpha+1)} f(x / lambda), carried on the dilated rule.
SampledFunction dilate(const Order& order, double lambda, const SampledFunction& f);

/// Default node count ceil(4 x_max y_max) + 32 for kernels j_alpha(2 pi x y).
int default_nodes(double x_max, double y_max);

} // namespace hconc::quad
