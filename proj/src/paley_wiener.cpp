#include "hconc/paley_wiener.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hconc::pw {

double theta(const Order& order) {
    const double a = order.alpha();
    return std::exp((a + 1.0) * std::log(4.0 * pi) + std::lgamma(a + 2.0));
}

double nu_constant(const Order& order) {
    const double a = order.alpha();
    return std::exp((a + 1.0) * std::log(pi) - std::lgamma(a + 1.0));
}

namespace {

// Gauss-Jacobi rule in s on (0, b^2) for the weight (1 - s/b^2)^e s^alpha.
quad::QuadratureRule s_rule(const Order& order, double b, int e, int n) {
    const double b2 = b * b;
    auto r = quad::gauss_jacobi(0.0, b2, n, e, order.alpha());
    const double scale = std::pow(b2, -e);
    for (double& w : r.weights) w *= scale;
    return r;
}

// Shift-by-k factor nu_{alpha+k} / nu_alpha = pi^k Gamma(alpha+1) / Gamma(alpha+k+1).
double nu_shift(const Order& order, int k) {
    const double a = order.alpha();
    return std::exp(k * std::log(pi) + std::lgamma(a + 1.0) - std::lgamma(a + k + 1.0));
}

void check_k(int k) {
    if (k < 0 || k > 30) throw std::invalid_argument("D^k: k must lie in [0, 30]");
}

} // namespace

std::vector<double> PWFunction::spectral_nodes(const Order& order, double b, int taper, int n) {
    const auto r = s_rule(order, b, 2 * taper, n);
    std::vector<double> xi(n);
    for (int i = 0; i < n; ++i) xi[i] = std::sqrt(r.nodes[i]);
    return xi;
}

PWFunction::PWFunction(Order order, double b, int taper, std::vector<double> coeffs)
    : order_(order), b_(b), m_(taper), coeffs_(std::move(coeffs)) {
    if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("PWFunction: bandlimit must be positive");
    if (taper < 0) throw std::invalid_argument("PWFunction: taper must be >= 0");
    if (coeffs_.empty()) throw std::invalid_argument("PWFunction: need at least one coefficient");
    const int n = static_cast<int>(coeffs_.size());
    const auto r = s_rule(order_, b_, 2 * m_, n);
    const double nu = nu_constant(order_);
    const double b2 = b_ * b_;
    s_ = r.nodes;
    xi_.resize(n);
    p_.resize(n);
    w_hat_.resize(n);
    w_plain_.resize(n);
    for (int i = 0; i < n; ++i) {
        xi_[i] = std::sqrt(s_[i]);
        const double t = std::pow(1.0 - s_[i] / b2, m_);
        p_[i] = coeffs_[i] / t;
        w_plain_[i] = nu * r.weights[i];
        w_hat_[i] = w_plain_[i] / (t * t);
    }
    // barycentric weights on the nodes mapped to [-1, 1]
    bary_.assign(n, 1.0);
    for (int i = 0; i < n; ++i) {
        const double ti = 2.0 * s_[i] / b2 - 1.0;
        for (int k = 0; k < n; ++k)
            if (k != i) bary_[i] /= (ti - (2.0 * s_[k] / b2 - 1.0));
    }
}

quad::QuadratureRule PWFunction::spectral_rule() const {
    quad::QuadratureRule r{0.0, b_, xi_, {}};
    r.weights.resize(xi_.size());
    for (std::size_t i = 0; i < xi_.size(); ++i) r.weights[i] = w_hat_[i] / order_.mu_density(xi_[i]);
    return r;
}

double PWFunction::norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < p_.size(); ++i) s += w_plain_[i] * p_[i] * p_[i];
    return std::sqrt(s);
}

double PWFunction::polynomial(double s) const {
    const double b2 = b_ * b_;
    const double t = 2.0 * s / b2 - 1.0;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < s_.size(); ++i) {
        const double d = t - (2.0 * s_[i] / b2 - 1.0);
        if (d == 0.0) return p_[i];
        const double c = bary_[i] / d;
        num += c * p_[i];
        den += c;
    }
    return num / den;
}

double PWFunction::spectrum(double xi) const {
    xi = std::fabs(xi);
    if (xi >= b_) return 0.0;
    const double s = xi * xi;
    return std::pow(1.0 - s / (b_ * b_), m_) * polynomial(s);
}

PWFunction PWFunction::scaled(double c) const {
    std::vector<double> v(coeffs_);
    for (double& x : v) x *= c;
    return PWFunction(order_, b_, m_, std::move(v));
}

PWFunction random_pw(const Order& order, double b, int n, int taper, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> p(n);
    for (double& v : p) v = U(rng);
    const auto xi = PWFunction::spectral_nodes(order, b, taper, n);
    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) c[i] = std::pow(1.0 - xi[i] * xi[i] / (b * b), taper) * p[i];
    PWFunction f(order, b, taper, std::move(c));
    return f.scaled(1.0 / f.norm());
}

PWFunction extremal_f0_spectrum(const Order& order) {
    return PWFunction(order, 1.0 / (2.0 * pi), 0, {theta(order)});
}

namespace {

// Shared rule for x in [0, x_max]: nodes sigma_j, weights V_j and P(sigma_j).
struct Synthesis {
    std::vector<double> root;   // sqrt(sigma_j)
    std::vector<double> sigma;
    std::vector<double> vp;     // V_j P(sigma_j)
};

Synthesis make_synthesis(const PWFunction& pw, double x_max, int extra) {
    const double b = pw.bandlimit();
    const int m = static_cast<int>(pw.size()) + static_cast<int>(std::ceil(pi * x_max * b)) + 32 + extra;
    const auto r = s_rule(pw.order(), b, pw.taper(), m);
    const double nu = nu_constant(pw.order());
    Synthesis s;
    s.sigma = r.nodes;
    s.root.resize(m);
    s.vp.resize(m);
    for (int j = 0; j < m; ++j) {
        s.root[j] = std::sqrt(r.nodes[j]);
        s.vp[j] = nu * r.weights[j] * pw.polynomial(r.nodes[j]);
    }
    return s;
}

double max_abs(std::span<const double> xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::fabs(x));
    return m;
}

} // namespace

std::vector<double> apply_Dk(const PWFunction& pw, int k, std::span<const double> xs) {
    check_k(k);
    const auto syn = make_synthesis(pw, max_abs(xs), k);
    const Order ok = pw.order().shifted(k);
    std::vector<double> vk(syn.vp);
    for (std::size_t j = 0; j < vk.size(); ++j) vk[j] *= std::pow(syn.sigma[j], k);
    const double c = std::pow(-pi, k) * nu_shift(pw.order(), k);
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double z = 2.0 * pi * xs[i];
        double s = 0.0;
        for (std::size_t j = 0; j < vk.size(); ++j) s += vk[j] * bessel::eval_j(ok, z * syn.root[j]);
        out[i] = c * s;
    }
    return out;
}

double apply_Dk(const PWFunction& pw, int k, double x) {
    return apply_Dk(pw, k, std::span<const double>(&x, 1))[0];
}

std::vector<double> synthesize(const PWFunction& pw, std::span<const double> xs) { return apply_Dk(pw, 0, xs); }

double synthesize(const PWFunction& pw, double x) { return apply_Dk(pw, 0, x); }

double spectral_Dk_norm(const PWFunction& pw, int k) {
    check_k(k);
    const auto r = s_rule(pw.order(), pw.bandlimit(), 2 * pw.taper(), static_cast<int>(pw.size()) + k + 1);
    const double nu = nu_constant(pw.order());
    double s = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double p = pw.polynomial(r.nodes[j]);
        s += r.weights[j] * std::pow(r.nodes[j], k) * p * p;
    }
    return std::pow(pi, k) * std::sqrt(nu * nu_shift(pw.order(), k) * s);
}

double bernstein_rhs(const PWFunction& pw, int k) {
    const double a = pw.order().alpha();
    return std::sqrt(std::exp(std::lgamma(a + 1.0) - std::lgamma(a + k + 1.0))) *
           std::pow(std::pow(pi, 1.5) * pw.bandlimit(), k) * pw.norm();
}

namespace {

constexpr int kPanelNodes = 20;

// Composite rule on [0, x_max] in x, first panel adapted to the mu_{order} weight.
quad::QuadratureRule x_rule(const Order& order, double b, double x_max) {
    const double width = std::min(1.0, 1.0 / b);
    const int panels = static_cast<int>(std::ceil(x_max / width));
    const double h = x_max / panels;
    std::vector<quad::QuadratureRule> parts;
    parts.push_back(quad::mu_adapted_rule(order, 0.0, h, kPanelNodes));
    for (int p = 1; p < panels; ++p) parts.push_back(quad::build_rule(p * h, (p + 1) * h, kPanelNodes));
    return quad::concatenate(parts);
}

// Composite rule in s on [0, x_max^2] with panel ends at the squares of x panel ends;
// the first panel is Gauss-Jacobi for s^e, returned with Lebesgue weights.
quad::QuadratureRule s_panels(double e, double b, double x_max) {
    const double width = std::min(1.0, 1.0 / b);
    const int panels = static_cast<int>(std::ceil(x_max / width));
    const double h = x_max / panels;
    std::vector<quad::QuadratureRule> parts;
    auto first = quad::gauss_jacobi(0.0, h * h, kPanelNodes, 0.0, e);
    for (std::size_t i = 0; i < first.size(); ++i) first.weights[i] /= std::pow(first.nodes[i], e);
    parts.push_back(std::move(first));
    for (int p = 1; p < panels; ++p) parts.push_back(quad::build_rule(p * h * p * h, (p + 1) * h * (p + 1) * h, kPanelNodes));
    return quad::concatenate(parts);
}

// Mass and estimated tail of a density sampled on a rule over [0, x_max]
// (`pos` maps nodes to x). The tail assumes power decay x^{-q} of the density.
struct Mass {
    double total;
    double tail;
};

Mass mass_and_tail(const quad::QuadratureRule& r, const std::vector<double>& density, double x_max, double q,
                   bool squared_nodes) {
    double total = 0.0, upper = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double v = r.weights[i] * density[i];
        total += v;
        const double x = squared_nodes ? std::sqrt(r.nodes[i]) : r.nodes[i];
        if (x >= 0.5 * x_max) upper += v;
    }
    return {total, upper / (std::pow(2.0, q - 1.0) - 1.0)};
}

double default_x_max(double b) { return 20.0 * (1.0 + 1.0 / b); }

// Decay exponent of |D^k f|^2 dmu_{alpha+k} for a taper of order m: x^{-(2m+2)}.
double decay_power(int m) { return 2.0 * m + 2.0; }

} // namespace

BernsteinSides bernstein_sides(const PWFunction& pw, int k, double x_max) {
    check_k(k);
    const bool automatic = x_max <= 0.0;
    if (automatic) x_max = default_x_max(pw.bandlimit());
    const Order ok = pw.order().shifted(k);
    for (int round = 0;; ++round) {
        const auto r = x_rule(ok, pw.bandlimit(), x_max);
        const auto d = apply_Dk(pw, k, r.nodes);
        std::vector<double> dens(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) dens[i] = d[i] * d[i] * ok.mu_density(r.nodes[i]);
        const Mass m = mass_and_tail(r, dens, x_max, decay_power(pw.taper()), false);
        if (!automatic || m.tail <= 1e-10 * m.total || round == 3)
            return {std::sqrt(m.total + m.tail), bernstein_rhs(pw, k), x_max, m.tail};
        x_max *= 2.0;
    }
}

BernsteinSides squared_bernstein_sides(const PWFunction& pw, int k, double x_max) {
    check_k(k);
    if (x_max <= 0.0) x_max = default_x_max(pw.bandlimit());
    const double a = pw.order().alpha();
    const double b = pw.bandlimit();

    const auto rk = s_panels(a + k, b, x_max);
    std::vector<double> roots(rk.size());
    for (std::size_t i = 0; i < rk.size(); ++i) roots[i] = std::sqrt(rk.nodes[i]);
    const auto dk = apply_Dk(pw, k, roots);
    std::vector<double> dens(rk.size());
    for (std::size_t i = 0; i < rk.size(); ++i) dens[i] = dk[i] * dk[i] * std::pow(rk.nodes[i], a + k);
    const Mass lhs = mass_and_tail(rk, dens, x_max, decay_power(pw.taper()), true);

    const auto r0 = s_panels(a, b, x_max);
    std::vector<double> roots0(r0.size());
    for (std::size_t i = 0; i < r0.size(); ++i) roots0[i] = std::sqrt(r0.nodes[i]);
    const auto g = apply_Dk(pw, 0, roots0);
    std::vector<double> dens0(r0.size());
    for (std::size_t i = 0; i < r0.size(); ++i) dens0[i] = g[i] * g[i] * std::pow(r0.nodes[i], a);
    const Mass base = mass_and_tail(r0, dens0, x_max, decay_power(pw.taper()), true);

    return {lhs.total + lhs.tail, std::pow(pi * b, 2 * k) * (base.total + base.tail), x_max, lhs.tail};
}

quad::SampledFunction sqrt_substitute(const quad::SampledFunction& f) {
    if (f.values.size() != f.rule.size()) throw std::invalid_argument("sqrt_substitute: sample count mismatch");
    quad::SampledFunction g;
    g.rule.lo = f.rule.lo * f.rule.lo;
    g.rule.hi = f.rule.hi * f.rule.hi;
    g.values = f.values;
    g.rule.nodes.resize(f.rule.size());
    g.rule.weights.resize(f.rule.size());
    for (std::size_t i = 0; i < f.rule.size(); ++i) {
        const double x = f.rule.nodes[i];
        if (x < 0.0) throw std::invalid_argument("sqrt_substitute: nodes must be nonnegative");
        g.rule.nodes[i] = x * x;
        g.rule.weights[i] = 2.0 * x * f.rule.weights[i];
    }
    return g;
}

double extremal_family(const bessel::ZeroTable& zeros, std::size_t n, double x) {
    const Order& o = zeros.order();
    const Order o1 = o.shifted(1);
    x = std::fabs(x);
    if (n == 0) return bessel::eval_j(o1, x);
    const double s = zeros.at(n);
    const double ja = bessel::eval_j(o, s);
    const double u = x - s;
    if (std::fabs(u) < 1e-4 * s) {
        // j_{a+1}(x) / (x - s) from derivatives at the root; j'' and j''' from the
        // ODE j'' = -(2nu+1)/x j' - j with nu = alpha + 1 and j(s) = 0.
        const double c = 2.0 * o1.alpha() + 1.0;
        const double d1 = bessel::eval_j_derivative(o1, s);
        const double d2 = -c / s * d1;
        const double d3 = c / (s * s) * d1 - c / s * d2 - d1;
        const double ratio = d1 + u * (d2 / 2.0 + u * d3 / 6.0);
        return ja * x * x / (x + s) * ratio;
    }
    return ja * x * x * bessel::eval_j(o1, x) / ((x - s) * (x + s));
}

double extremal_norm_sq(const bessel::ZeroTable& zeros, std::size_t n) {
    const Order& o = zeros.order();
    if (n == 0) return theta(o);
    const double ja = bessel::eval_j(o, zeros.at(n));
    return theta(o) * (o.alpha() + 1.0) * ja * ja;
}

PWFunction extremal_spectrum(const bessel::ZeroTable& zeros, std::size_t n, int nodes) {
    const Order& o = zeros.order();
    const double s = zeros.at(n);
    if (nodes <= 0) nodes = static_cast<int>(std::ceil(1.5 * s)) + 24;
    const double th = theta(o);
    return PWFunction::from_polynomial(o, 1.0 / (2.0 * pi), 0, nodes,
                                       [&](double t) { return th * bessel::eval_j(o, 2.0 * pi * s * std::sqrt(t)); });
}

double tail_mass(const bessel::ZeroTable& zeros, std::size_t n, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("tail_mass: a must be positive");
    const Order& o = zeros.order();
    const double s = zeros.at(n);
    const double lo = std::max(0.0, s - a), hi = s + a;
    const int panels = static_cast<int>(std::ceil(hi - lo));
    const double h = (hi - lo) / panels;
    double inside = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double l = lo + p * h;
        const auto r = (l == 0.0) ? quad::mu_adapted_rule(o, 0.0, h, kPanelNodes) : quad::build_rule(l, l + h, kPanelNodes);
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double v = extremal_family(zeros, n, r.nodes[i]);
            inside += r.weights[i] * o.mu_density(r.nodes[i]) * v * v;
        }
    }
    return std::max(0.0, 1.0 - inside / extremal_norm_sq(zeros, n));
}

EntireEvenSeries EntireEvenSeries::from_pw(const PWFunction& pw, double radius) {
    const double a = pw.order().alpha();
    const double b = pw.bandlimit();
    const int extra = static_cast<int>(std::ceil(std::exp(1.0) * pi * b * radius)) + 40;
    const auto r = s_rule(pw.order(), b, pw.taper(), static_cast<int>(pw.size()) + extra);
    const double nu = nu_constant(pw.order());
    std::vector<double> pv(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) pv[j] = nu * r.weights[j] * pw.polynomial(r.nodes[j]);

    std::vector<double> coeffs;
    double peak = 0.0;
    for (int n = 0; n < 2 * extra; ++n) {
        // moment int F(xi) (xi/b)^{2n} dmu(xi), then the Taylor factor in logs
        double moment = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j) moment += pv[j] * std::pow(r.nodes[j] / (b * b), n);
        const double log_factor = std::lgamma(a + 1.0) + 2.0 * n * std::log(pi * b) - std::lgamma(n + 1.0) -
                                  std::lgamma(n + a + 1.0);
        const double c = (n % 2 ? -1.0 : 1.0) * std::exp(log_factor) * moment;
        coeffs.push_back(c);
        const double term = std::fabs(c) * std::pow(radius, 2 * n);
        peak = std::max(peak, term);
        if (n > 4 && term < 1e-17 * peak && log_factor + 2.0 * n * std::log(std::max(radius, 1e-300)) < std::log(peak) - 39.0)
            break;
    }
    return EntireEvenSeries(std::move(coeffs));
}

std::complex<double> EntireEvenSeries::in_s(std::complex<double> s) const {
    std::complex<long double> acc = 0.0L;
    const std::complex<long double> sl(s.real(), s.imag());
    for (std::size_t n = a_.size(); n-- > 0;) acc = acc * sl + static_cast<long double>(a_[n]);
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::complex<double> EntireEvenSeries::operator()(std::complex<double> z) const { return in_s(z * z); }

} // namespace hconc::pw
