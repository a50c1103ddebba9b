#include "hconc/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "hconc/bessel.hpp"

namespace hconc::quad {

namespace {

struct Reference {
    std::vector<double> u;  // nodes on [-1, 1], ascending
    std::vector<double> w;
};

Reference legendre_reference(int n) {
    Reference r{std::vector<double>(n), std::vector<double>(n)};
    const int half = (n + 1) / 2;
    for (int i = 1; i <= half; ++i) {
        double z = std::cos(pi * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        r.u[i - 1] = -z;
        r.u[n - i] = z;
        r.w[i - 1] = w;
        r.w[n - i] = w;
    }
    return r;
}

// Value of P_n^{(a,b)} and its derivative, plus P_{n-1}, at z.
struct JacobiEval {
    double p, dp, prev;
};

JacobiEval jacobi_eval(int n, double a, double b, double z) {
    double p1 = 0.5 * (a - b + (a + b + 2.0) * z);
    double p2 = 1.0;
    double temp = a + b + 2.0;
    for (int j = 2; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        temp = 2.0 * j + a + b;
        const double a1 = 2.0 * j * (j + a + b) * (temp - 2.0);
        const double b1 = (temp - 1.0) * (a * a - b * b);
        const double c1 = (temp - 2.0) * (temp - 1.0) * temp;
        const double d1 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * temp;
        p1 = ((b1 + c1 * z) * p2 - d1 * p3) / a1;
    }
    temp = 2.0 * n + a + b;
    const double dp = (n * (a - b - temp * z) * p1 + 2.0 * (n + a) * (n + b) * p2) / (temp * (1.0 - z * z));
    return {p1, dp, p2};
}

Reference jacobi_reference(int n, double a, double b) {
    if (n == 1) {
        return {{(b - a) / (a + b + 2.0)},
                {std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                          std::lgamma(a + b + 2.0))}};
    }
    // Golub-Welsch eigenvalues as starting points, Newton polish on the recurrence.
    Eigen::VectorXd diag(n), off(n - 1);
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        diag(k) = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        const double beta2 = (k == 1) ? 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b))
                                      : 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
        off(k - 1) = std::sqrt(beta2);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("gauss_jacobi: tridiagonal eigensolver failed", 0.0);

    // Weights from the Christoffel function 1 / sum_k p_k(z)^2 over the orthonormal
    // recurrence; avoids dividing by 1 - z^2 near the endpoints.
    const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                std::lgamma(a + b + 2.0));
    Reference r{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
        double z = solver.eigenvalues()(i);
        for (int it = 0; it < 20; ++it) {
            const JacobiEval e = jacobi_eval(n, a, b, z);
            const double dz = e.p / e.dp;
            const double zn = std::clamp(z - dz, std::nextafter(-1.0, 0.0), std::nextafter(1.0, 0.0));
            const bool done = std::fabs(zn - z) < 1e-16;
            z = zn;
            if (done) break;
        }
        double prev = 0.0;
        double cur = 1.0 / std::sqrt(mu0);
        double sum = cur * cur;
        for (int k = 1; k < n; ++k) {
            const double next = ((z - diag(k - 1)) * cur - (k > 1 ? off(k - 2) : 0.0) * prev) / off(k - 1);
            prev = cur;
            cur = next;
            sum += cur * cur;
        }
        r.u[i] = z;
        r.w[i] = 1.0 / sum;
    }
    return r;
}

std::mutex cache_mutex;

const Reference& cached(int n, double a, double b) {
    static std::map<std::tuple<int, double, double>, Reference> cache;
    const auto key = std::make_tuple(n, a, b);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Reference r = (a == 0.0 && b == 0.0) ? legendre_reference(n) : jacobi_reference(n, a, b);
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(key, std::move(r)).first->second;
}

void check_interval(double lo, double hi, const char* who) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw std::invalid_argument(std::string(who) + ": need finite lo < hi");
}

} // namespace

QuadratureRule build_rule(double lo, double hi, int n) {
    check_interval(lo, hi, "build_rule");
    if (n < 1 || n > 100000) throw std::invalid_argument("build_rule: n must lie in [1, 1e5]");
    const Reference& ref = cached(n, 0.0, 0.0);
    QuadratureRule rule{lo, hi, std::vector<double>(n), std::vector<double>(n)};
    const double h = 0.5 * (hi - lo);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = lo + h * (1.0 + ref.u[i]);
        rule.weights[i] = h * ref.w[i];
    }
    return rule;
}

QuadratureRule gauss_jacobi(double lo, double hi, int n, double a, double b) {
    check_interval(lo, hi, "gauss_jacobi");
    if (n < 1 || n > 100000) throw std::invalid_argument("gauss_jacobi: n must lie in [1, 1e5]");
    if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
    const Reference& ref = cached(n, a, b);
    QuadratureRule rule{lo, hi, std::vector<double>(n), std::vector<double>(n)};
    const double h = 0.5 * (hi - lo);
    const double scale = std::pow(h, a + b + 1.0);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = lo + h * (1.0 + ref.u[i]);
        rule.weights[i] = scale * ref.w[i];
    }
    return rule;
}

QuadratureRule mu_adapted_rule(const Order& order, double lo, double hi, int n) {
    const double p = 2.0 * order.alpha() + 1.0;
    if (lo != 0.0 || p == 0.0) return build_rule(lo, hi, n);
    QuadratureRule rule = gauss_jacobi(lo, hi, n, 0.0, p);
    for (std::size_t i = 0; i < rule.size(); ++i) rule.weights[i] /= std::pow(rule.nodes[i], p);
    return rule;
}

QuadratureRule concatenate(std::span<const QuadratureRule> parts) {
    QuadratureRule out;
    if (parts.empty()) return out;
    out.lo = parts.front().lo;
    out.hi = parts.front().hi;
    for (const auto& r : parts) {
        out.lo = std::min(out.lo, r.lo);
        out.hi = std::max(out.hi, r.hi);
        out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
        out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
    }
    return out;
}

std::vector<double> mu_weights(const Order& order, const QuadratureRule& rule) {
    std::vector<double> w(rule.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = rule.weights[i] * order.mu_density(rule.nodes[i]);
    return w;
}

double l2_norm(const Order& order, const SampledFunction& f) {
    if (f.values.size() != f.rule.size()) throw std::invalid_argument("l2_norm: sample count mismatch");
    const auto w = mu_weights(order, f.rule);
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f.values[i] * f.values[i];
    return std::sqrt(s);
}

std::vector<double> forward(const Order& order, const SampledFunction& f, std::span<const double> out_nodes) {
    if (f.values.size() != f.rule.size()) throw std::invalid_argument("forward: sample count mismatch");
    std::vector<double> wf = mu_weights(order, f.rule);
    for (std::size_t i = 0; i < wf.size(); ++i) wf[i] *= f.values[i];
    std::vector<double> out(out_nodes.size(), 0.0);
    for (std::size_t j = 0; j < out_nodes.size(); ++j) {
        const double k = 2.0 * pi * out_nodes[j];
        double s = 0.0;
        for (std::size_t i = 0; i < wf.size(); ++i) {
            if (wf[i] != 0.0) s += wf[i] * bessel::eval_j(order, k * f.rule.nodes[i]);
        }
        out[j] = s;
    }
    return out;
}

std::vector<double> inverse(const Order& order, const SampledFunction& F, std::span<const double> out_nodes) {
    return forward(order, F, out_nodes);
}

SampledFunction dilate(const Order& order, double lambda, const SampledFunction& f) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("dilate: lambda must be positive");
    SampledFunction g;
    g.rule.lo = lambda * f.rule.lo;
    g.rule.hi = lambda * f.rule.hi;
    g.rule.nodes.reserve(f.rule.size());
    g.rule.weights.reserve(f.rule.size());
    const double scale = std::pow(lambda, -(order.alpha() + 1.0));
    for (std::size_t i = 0; i < f.rule.size(); ++i) {
        g.rule.nodes.push_back(lambda * f.rule.nodes[i]);
        g.rule.weights.push_back(lambda * f.rule.weights[i]);
        g.values.push_back(scale * f.values[i]);
    }
    return g;
}

int default_nodes(double x_max, double y_max) {
    return static_cast<int>(std::ceil(4.0 * x_max * y_max)) + 32;
}

} // namespace hconc::quad
