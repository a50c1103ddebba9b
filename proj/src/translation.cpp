#include "hconc/translation.hpp"

#include <cmath>
#include <stdexcept>

namespace hconc::translation {

namespace {

bool is_two_point(const Order& o) { return o.alpha() == -0.5; }

quad::QuadratureRule gegenbauer(const Order& o, int n) {
    const double e = o.alpha() - 0.5;
    quad::QuadratureRule r = quad::gauss_jacobi(-1.0, 1.0, n, e, e);
    const double c = std::exp(std::lgamma(o.alpha() + 1.0) - std::lgamma(o.alpha() + 0.5)) / std::sqrt(pi);
    for (double& w : r.weights) w *= c;
    return r;
}

} // namespace

TranslationPlan::TranslationPlan(Order order, int initial_nodes, double tolerance, int max_nodes)
    : order_(order), initial_nodes_(initial_nodes), tolerance_(tolerance), max_nodes_(max_nodes) {
    if (initial_nodes < 1 || max_nodes < initial_nodes) throw std::invalid_argument("TranslationPlan: bad node counts");
    if (!(tolerance > 0.0)) throw std::invalid_argument("TranslationPlan: tolerance must be positive");
    if (!is_two_point(order_)) base_ = gegenbauer(order_, initial_nodes_);
}

double TranslationPlan::apply(const quad::QuadratureRule& rule, double x, const Function& f, double y) const {
    const double s = x * x + y * y;
    const double p = 2.0 * x * y;
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(std::sqrt(std::max(0.0, s - p * rule.nodes[i])));
    return sum;
}

double TranslationPlan::translate(double x, const Function& f, double y) const {
    if (!(x >= 0.0) || !(y >= 0.0) || !std::isfinite(x) || !std::isfinite(y))
        throw std::invalid_argument("translate: x and y must be finite and nonnegative");
    if (is_two_point(order_)) return 0.5 * (f(x + y) + f(std::fabs(x - y)));
    if (x == 0.0) return f(y);
    if (y == 0.0) return f(x);
    double prev = apply(base_, x, f, y);
    for (int n = 2 * initial_nodes_; n <= max_nodes_; n *= 2) {
        const double cur = apply(gegenbauer(order_, n), x, f, y);
        if (std::fabs(cur - prev) <= tolerance_ * std::max(1.0, std::fabs(cur))) return cur;
        prev = cur;
    }
    throw NumericalError("translate: theta quadrature did not settle", 0.0);
}

double kernel_W(const Order& order, double x, double y, double t) {
    const double lo = std::fabs(x - y), hi = x + y;
    if (!(t > lo && t < hi)) return 0.0;
    const double a = order.alpha();
    // area of the triangle with sides x, y, t (Heron: 16 area^2 = product below)
    const double delta = 0.25 * std::sqrt((hi * hi - t * t) * (t * t - lo * lo));
    const double log_c = (2.0 * a - 2.0) * std::log(2.0) + 2.0 * std::lgamma(a + 1.0) -
                         (a + 1.5) * std::log(pi) - std::lgamma(a + 0.5);
    return std::exp(log_c + (2.0 * a - 1.0) * std::log(delta) - 2.0 * a * std::log(x * y * t));
}

double translate_by_kernel(const Order& order, double x, const Function& f, double y, int n) {
    const double a = order.alpha();
    if (!(a > -0.5)) throw std::invalid_argument("translate_by_kernel: needs alpha > -1/2");
    const double lo = std::fabs(x - y), hi = x + y;
    if (!(hi > lo)) return f(x + y);
    // (4 Delta)^(2a-1) = (hi-t)^e (t-lo)^e (hi+t)^e (t+lo)^e with e = a - 1/2; the
    // first two factors are the Jacobi weight.
    const double e = a - 0.5;
    const auto rule = quad::gauss_jacobi(lo, hi, n, e, e);
    const double log_c = (2.0 * a - 2.0) * std::log(2.0) + 2.0 * std::lgamma(a + 1.0) -
                         (a + 1.5) * std::log(pi) - std::lgamma(a + 0.5);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double t = rule.nodes[i];
        const double smooth = std::exp(log_c - 2.0 * e * std::log(4.0) + e * std::log((hi + t) * (t + lo)) -
                                       2.0 * a * std::log(x * y * t));
        sum += rule.weights[i] * smooth * f(t) * order.mu_density(t);
    }
    return sum;
}

std::vector<double> convolve(const TranslationPlan& plan, const quad::SampledFunction& f, const Function& g,
                             std::span<const double> out_nodes) {
    if (f.values.size() != f.rule.size()) throw std::invalid_argument("convolve: sample count mismatch");
    const auto w = quad::mu_weights(plan.order(), f.rule);
    std::vector<double> out(out_nodes.size(), 0.0);
    for (std::size_t j = 0; j < out_nodes.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (f.values[i] != 0.0) s += w[i] * f.values[i] * plan.translate(out_nodes[j], g, f.rule.nodes[i]);
        }
        out[j] = s;
    }
    return out;
}

} // namespace hconc::translation
