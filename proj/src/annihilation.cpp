#include "hconc/annihilation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hconc/quadrature.hpp"

namespace hconc::annihilation {

namespace {

constexpr double ln2 = 0.69314718055994530942;

// mu-weighted rule on a set: panels of width <= panel with n nodes each.
struct WeightedNodes {
    std::vector<double> x;
    std::vector<double> w;  // mu weights
};

WeightedNodes mu_nodes(const Order& order, const IntervalSet& set, double panel, int n) {
    WeightedNodes out;
    if (set.empty()) return out;
    const auto r = measure::cover_rule(order, set, panel, n);
    out.x = r.nodes;
    out.w = quad::mu_weights(order, r);
    return out;
}

double top_singular_value(const Order& order, const WeightedNodes& s, const WeightedNodes& sigma) {
    const auto rows = static_cast<Eigen::Index>(sigma.x.size());
    const auto cols = static_cast<Eigen::Index>(s.x.size());
    Eigen::MatrixXd B(rows, cols);
    for (Eigen::Index q = 0; q < rows; ++q)
        for (Eigen::Index i = 0; i < cols; ++i)
            B(q, i) = std::sqrt(sigma.w[q] * s.w[i]) * bessel::eval_j(order, 2.0 * pi * s.x[i] * sigma.x[q]);
    const Eigen::MatrixXd C = rows <= cols ? Eigen::MatrixXd(B * B.transpose()) : Eigen::MatrixXd(B.transpose() * B);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("pair_norm: eigen-solver failed", 0.0);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

} // namespace

void ProjectionPair::validate() const {
    if (x_max < 0.0 || !std::isfinite(x_max)) throw std::invalid_argument("ProjectionPair: x_max must be finite and >= 0");
    if (x_max > 0.0 && S.sup() > x_max) throw std::invalid_argument("ProjectionPair: x_max must cover S");
    if (!(node_scale > 0.0)) throw std::invalid_argument("ProjectionPair: node_scale must be positive");
}

PairNorm pair_norm_report(const ProjectionPair& pair, double tolerance, int max_levels) {
    pair.validate();
    if (pair.S.empty() || pair.Sigma.empty()) return {0.0, 0, 0, 0.0};
    // panel widths keep the phase 2 pi x xi below ~ 2 pi per panel
    const double s_panel = std::min(1.0, 1.0 / std::max(pair.Sigma.sup(), 1e-300));
    const double sig_panel = std::min(1.0, 1.0 / std::max(pair.S.sup(), 1e-300));
    int n = std::max(4, static_cast<int>(std::ceil(8 * pair.node_scale)));
    double prev = -1.0;
    for (int level = 0; level < max_levels; ++level, n *= 2) {
        const auto s = mu_nodes(pair.order, pair.S, s_panel, n);
        const auto sig = mu_nodes(pair.order, pair.Sigma, sig_panel, n);
        const double v = top_singular_value(pair.order, s, sig);
        const double change = std::fabs(v - prev);
        if (prev >= 0.0 && change <= tolerance)
            return {v, static_cast<int>(s.x.size()), static_cast<int>(sig.x.size()), change};
        prev = v;
    }
    throw NumericalError("pair_norm: no stable value under node doubling", prev);
}

double pair_norm(const ProjectionPair& pair) { return pair_norm_report(pair).value; }

double annihilation_constant(double norm) {
    if (!(norm >= 0.0)) throw std::invalid_argument("annihilation_constant: norm must be >= 0");
    if (norm >= 1.0) throw DomainError("annihilation_constant: norm >= 1, pair not certified strong");
    return 1.0 / ((1.0 - norm) * (1.0 - norm));
}

double split_norm_bound(const Order& order, const IntervalSet& S0, const IntervalSet& Sinf,
                        const IntervalSet& Sigma0, const IntervalSet& Sigmainf) {
    double total = 0.0;
    for (const IntervalSet* s : {&S0, &Sinf})
        for (const IntervalSet* sig : {&Sigma0, &Sigmainf}) total += pair_norm(ProjectionPair{order, *s, *sig});
    return total;
}

// ---------------------------------------------------------------------------

void LSParams::validate() const {
    if (order.alpha() < 0.0) throw DomainError("ls_bound: the theorem needs alpha >= 0");
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("ls_bound: a and b must be positive");
    if (!(gamma > 0.0) || gamma > 1.0) throw std::invalid_argument("ls_bound: gamma must lie in (0, 1]");
}

LSBound ls_bound(const LSParams& p) {
    p.validate();
    const double alpha = p.order.alpha();
    const double exponent = 160.0 * std::sqrt(3.0) * pi / ln2 * p.a * p.b + alpha * std::log(3.0) / ln2 + 1.0;
    const double log_base = std::log(p.gamma) - std::log(300.0) - alpha * std::log(9.0);
    const double log_value = std::log(2.0 / 3.0) + exponent * log_base;
    return {std::exp(log_value), log_value / std::log(10.0), exponent};
}

ConcentrationMatrix concentration_matrix(const Order& order, double b, const IntervalSet& omega, double x_max, int n,
                                         int taper, double window_tail) {
    if (!(b > 0.0)) throw std::invalid_argument("concentration_matrix: b must be positive");
    if (n < 1) throw std::invalid_argument("concentration_matrix: need n >= 1");
    if (x_max <= 0.0) x_max = 20.0 * std::max(1.0, 1.0 / b) + omega.sup();
    const IntervalSet region = omega.intersect(0.0, x_max);

    // orthonormal basis psi_i: spectrum coefficients e_i / sqrt(w_hat_i)
    const pw::PWFunction base(order, b, taper, std::vector<double>(n, 0.0));
    const auto xi = base.nodes();
    const auto w_hat = base.hat_weights();

    // synthesis rule sigma_q with weights V_q, sized for x_max
    const int m = n + static_cast<int>(std::ceil(pi * x_max * b)) + 32;
    auto rule = quad::gauss_jacobi(0.0, b * b, m, taper, order.alpha());
    const double nu = pw::nu_constant(order);
    const double scale = nu * std::pow(b * b, -taper);

    // L(q, i) = l_i(sigma_q) / sqrt(W_i), W_i = w_hat_i t_i^2 with t_i the taper at xi_i
    Eigen::MatrixXd L(m, n);
    for (int i = 0; i < n; ++i) {
        const double t = std::pow(1.0 - xi[i] * xi[i] / (b * b), taper);
        std::vector<double> e(n, 0.0);
        e[i] = t;  // P = l_i
        const pw::PWFunction li(order, b, taper, std::move(e));
        const double inv = 1.0 / (std::sqrt(w_hat[i]) * t);
        for (int q = 0; q < m; ++q) L(q, i) = scale * rule.weights[q] * li.polynomial(rule.nodes[q]) * inv;
    }

    const double panel = std::min(1.0, 0.5 / b);
    const auto nodes = mu_nodes(order, region, panel, 20);
    const auto nx = static_cast<Eigen::Index>(nodes.x.size());
    Eigen::MatrixXd J(nx, m);
    for (Eigen::Index r = 0; r < nx; ++r) {
        const double z = 2.0 * pi * nodes.x[r];
        for (int q = 0; q < m; ++q) J(r, q) = std::sqrt(nodes.w[r]) * bessel::eval_j(order, z * std::sqrt(rule.nodes[q]));
    }
    const Eigen::MatrixXd Psi = J * L;
    Eigen::MatrixXd G = Psi.transpose() * Psi;
    G = 0.5 * (G + G.transpose()).eval();

    // restrict to the span of basis combinations with mass >= 1 - window_tail in [0, x_max]
    const auto full = mu_nodes(order, IntervalSet({{0.0, x_max}}), panel, 20);
    Eigen::MatrixXd Jf(static_cast<Eigen::Index>(full.x.size()), m);
    for (Eigen::Index r = 0; r < Jf.rows(); ++r) {
        const double z = 2.0 * pi * full.x[r];
        for (int q = 0; q < m; ++q) Jf(r, q) = std::sqrt(full.w[r]) * bessel::eval_j(order, z * std::sqrt(rule.nodes[q]));
    }
    const Eigen::MatrixXd Pf = Jf * L;
    Eigen::MatrixXd H = Pf.transpose() * Pf;
    H = 0.5 * (H + H.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw NumericalError("concentration_matrix: eigen-solver failed", 0.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < H.rows(); ++k)
        if (es.eigenvalues()(k) >= 1.0 - window_tail) keep.push_back(k);
    Eigen::MatrixXd V(H.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) V.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
    Eigen::MatrixXd Gr = V.transpose() * G * V;
    Gr = 0.5 * (Gr + Gr.transpose()).eval();
    return {std::move(Gr), b, x_max, taper, static_cast<int>(nx), n, static_cast<int>(keep.size())};
}

double ls_empirical_min_ratio(const Order& order, double b, const IntervalSet& omega, double x_max, int n, int taper) {
    const auto cm = concentration_matrix(order, b, omega, x_max, n, taper);
    if (cm.retained == 0) throw NumericalError("ls_empirical_min_ratio: no trial function fits in [0, x_max]", 0.0);
    if (cm.G.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cm.G, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("ls_empirical_min_ratio: eigen-solver failed", 0.0);
    return es.eigenvalues().minCoeff();
}

LSVerification ls_verify(const Order& order, double a, double b, const IntervalSet& omega, double x_max_density, int n,
                         double gamma_override) {
    if (order.alpha() < 0.0) throw DomainError("ls verify: the theorem needs alpha >= 0");
    const auto profile = measure::density_profile(order, omega, a, x_max_density);
    double gamma = profile.gamma_min;
    if (gamma_override > 0.0 && gamma_override <= gamma) gamma = gamma_override;
    LSVerification v{};
    v.gamma = gamma;
    v.gamma_argmin = profile.argmin;
    v.empirical = ls_empirical_min_ratio(order, b, omega, x_max_density + a, n);
    if (gamma > 0.0) {
        v.bound = ls_bound(LSParams{order, std::min(gamma, 1.0), a, b});
        v.pass = v.empirical > 0.0 && std::log10(v.empirical) > v.bound.log10;
    } else {
        v.bound = {0.0, -std::numeric_limits<double>::infinity(), 0.0};
        v.pass = v.empirical > 0.0;
    }
    return v;
}

// ---------------------------------------------------------------------------

DerivativeProvider pw_provider(const pw::PWFunction& f) {
    return [f](int k, std::span<const double> s) {
        std::vector<double> t(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) t[i] = std::sqrt(std::max(0.0, s[i]));
        return pw::apply_Dk(f, k, t);
    };
}

std::vector<double> tiling_x_list(double x_max) {
    std::vector<double> xs;
    for (double x = 1.0; x <= x_max; x += 2.0) xs.push_back(x);
    return xs;
}

namespace {

// Rule in t on [x-1, x+1] for int_{I_x} h(s) s^alpha ds = int h(t^2) t^(2 alpha) 2t dt.
// The returned weights include 2 t^(2 alpha + 1).
quad::QuadratureRule window_rule(const Order& order, double x) {
    const double e = 2.0 * order.alpha() + 1.0;
    quad::QuadratureRule r;
    if (x - 1.0 <= 1e-12) {
        r = quad::gauss_jacobi(0.0, x + 1.0, 48, 0.0, e);
        for (double& w : r.weights) w *= 2.0;
        return r;
    }
    const std::vector<quad::QuadratureRule> parts{quad::build_rule(x - 1.0, x, 24), quad::build_rule(x, x + 1.0, 24)};
    r = quad::concatenate(parts);
    for (std::size_t i = 0; i < r.size(); ++i) r.weights[i] *= 2.0 * std::pow(r.nodes[i], e);
    return r;
}

} // namespace

std::vector<Window> good_bad_partition(const Order& order, const DerivativeProvider& g, double ab,
                                       std::span<const double> x_list, int k_max) {
    if (!(ab > 0.0)) throw std::invalid_argument("good_bad_partition: ab must be positive");
    if (k_max < 1) throw std::invalid_argument("good_bad_partition: k_max must be >= 1");
    std::vector<quad::QuadratureRule> rules;
    std::vector<double> all_s;
    for (double x : x_list) {
        if (!(x >= 1.0)) throw std::invalid_argument("good_bad_partition: x must be >= 1");
        rules.push_back(window_rule(order, x));
        for (double t : rules.back().nodes) all_s.push_back(t * t);
    }
    std::vector<Window> out(x_list.size());
    for (std::size_t w = 0; w < out.size(); ++w) {
        out[w].x = x_list[w];
        out[w].mass = 0.0;
        out[w].derivative.assign(k_max, 0.0);
        out[w].bad = false;
        out[w].bad_k = 0;
    }
    for (int k = 0; k <= k_max; ++k) {
        const auto v = g(k, all_s);
        std::size_t pos = 0;
        for (std::size_t w = 0; w < out.size(); ++w) {
            double sum = 0.0;
            for (std::size_t i = 0; i < rules[w].size(); ++i, ++pos) sum += rules[w].weights[i] * std::pow(all_s[pos], k) * v[pos] * v[pos];
            if (k == 0)
                out[w].mass = sum;
            else
                out[w].derivative[k - 1] = sum;
        }
    }
    for (auto& win : out) {
        for (int k = 1; k <= k_max; ++k) {
            if (win.derivative[k - 1] >= std::pow(2.0 * pi * ab, 2 * k) * win.mass) {
                win.bad = true;
                win.bad_k = k;
                break;
            }
        }
    }
    return out;
}

Witness witness_point(const Order& order, const DerivativeProvider& g, double ab, const Window& window, int k_max) {
    const double lo = (window.x - 1.0) * (window.x - 1.0), hi = (window.x + 1.0) * (window.x + 1.0);
    const double c = 12.0 * pi * pi * ab * ab;
    const double a = order.alpha();
    Witness result{false, 0.0, 0, std::numeric_limits<double>::infinity()};
    constexpr int chunk = 32;
    for (int points = 1000, round = 0; round < 3; points *= 10, ++round) {
        result.grid_points = points;
        // visit the grid in a strided order so early chunks spread over I_x
        const int stride = 37;
        std::vector<int> order_idx(points);
        for (int i = 0; i < points; ++i) order_idx[i] = static_cast<int>((static_cast<long long>(i) * stride) % points);
        if (std::gcd(stride, points) != 1) std::iota(order_idx.begin(), order_idx.end(), 0);
        for (int start = 0; start < points; start += chunk) {
            const int end = std::min(points, start + chunk);
            std::vector<double> s(end - start);
            for (int i = start; i < end; ++i) s[i - start] = lo + (hi - lo) * order_idx[i] / (points - 1);
            std::vector<double> worst(s.size(), 0.0);
            for (int k = 0; k <= k_max; ++k) {
                const auto v = g(k, s);
                const double cap = std::pow(c, k) * window.mass;
                for (std::size_t i = 0; i < s.size(); ++i) {
                    const double lhs = std::pow(s[i], a + k) * v[i] * v[i];
                    const double ratio = cap > 0.0 ? lhs / cap : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
                    worst[i] = std::max(worst[i], ratio);
                }
            }
            for (std::size_t i = 0; i < s.size(); ++i) {
                result.worst = std::min(result.worst, worst[i]);
                if (worst[i] <= 1.0) {
                    result.found = true;
                    result.t = s[i];
                    return result;
                }
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) {
    if (c_.empty()) c_.push_back(0.0);
}

std::complex<double> Polynomial::operator()(std::complex<double> s) const {
    std::complex<double> acc = 0.0;
    for (std::size_t n = c_.size(); n-- > 0;) acc = acc * s + c_[n];
    return acc;
}

double Polynomial::operator()(double s) const {
    double acc = 0.0;
    for (std::size_t n = c_.size(); n-- > 0;) acc = acc * s + c_[n];
    return acc;
}

double Polynomial::integral_of_square(double lo, double hi) const {
    const std::size_t d = c_.size();
    std::vector<double> sq(2 * d - 1, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) sq[i + j] += c_[i] * c_[j];
    double a = 0.0, b = 0.0;
    for (std::size_t n = sq.size(); n-- > 0;) {
        a = a * lo + sq[n] / (n + 1);
        b = b * hi + sq[n] / (n + 1);
    }
    return b * hi - a * lo;
}

namespace {

double integrate_abs2(const ComplexFunction& phi, double lo, double hi) {
    const int panels = 8;
    const double h = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const auto r = quad::build_rule(lo + p * h, lo + (p + 1) * h, 32);
        for (std::size_t i = 0; i < r.size(); ++i) total += r.weights[i] * std::norm(phi(r.nodes[i]));
    }
    return total;
}

// Golden-section refinement of max |phi(z(u))| around a grid maximum at u0 in [u_lo, u_hi].
template <class Param>
double refine_max(const ComplexFunction& phi, Param z, double u_lo, double u_hi) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = u_lo, b = u_hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = std::abs(phi(z(c))), fd = std::abs(phi(z(d)));
    for (int it = 0; it < 80; ++it) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - g * (b - a); fc = std::abs(phi(z(c)));
        } else {
            a = c; c = d; fc = fd;
            d = a + g * (b - a); fd = std::abs(phi(z(d)));
        }
    }
    return std::max({fc, fd, std::abs(phi(z(u_lo))), std::abs(phi(z(u_hi)))});
}

} // namespace

KovrijkineResult kovrijkine_check(const ComplexFunction& phi, double lo, double hi, const IntervalSet& J) {
    if (!(hi > lo)) throw std::invalid_argument("kovrijkine_check: need lo < hi");
    const IntervalSet Jin = J.intersect(lo, hi);
    const double len_i = hi - lo, len_j = Jin.length();
    if (!(len_j > 0.0)) throw std::invalid_argument("kovrijkine_check: |J n I| must be positive");

    KovrijkineResult res{};
    res.lhs = integrate_abs2(phi, lo, hi);
    double in_j = 0.0;
    for (const auto& [l, h] : Jin.intervals()) in_j += integrate_abs2(phi, l, h);

    // m on I
    const int grid = 2000;
    int best = 0;
    double m = 0.0;
    auto on_i = [&](double u) { return std::complex<double>(lo + u * len_i, 0.0); };
    for (int i = 0; i <= grid; ++i) {
        const double v = std::abs(phi(on_i(static_cast<double>(i) / grid)));
        if (v > m) { m = v; best = i; }
    }
    m = std::max(m, refine_max(phi, on_i, std::max(0, best - 1) / double(grid), std::min(grid, best + 1) / double(grid)));

    // M on the boundary of the stadium of radius R = 4|I|, parametrized by arc length
    const double R = 4.0 * len_i;
    const double perimeter = 2.0 * len_i + 2.0 * pi * R;
    auto stadium = [&](double u) {
        double t = u * perimeter;
        if (t < len_i) return std::complex<double>(lo + t, R);  // top, left to right
        t -= len_i;
        if (t < pi * R) {
            const double th = 0.5 * pi - t / R;  // right cap
            return std::complex<double>(hi + R * std::cos(th), R * std::sin(th));
        }
        t -= pi * R;
        if (t < len_i) return std::complex<double>(hi - t, -R);  // bottom
        t -= len_i;
        const double th = -0.5 * pi - t / R;  // left cap
        return std::complex<double>(lo + R * std::cos(th), R * std::sin(th));
    };
    const int bgrid = 8000;
    double M = 0.0;
    best = 0;
    for (int i = 0; i < bgrid; ++i) {
        const double v = std::abs(phi(stadium(static_cast<double>(i) / bgrid)));
        if (v > M) { M = v; best = i; }
    }
    M = std::max(M, refine_max(phi, stadium, (best - 1.0) / bgrid, (best + 1.0) / bgrid));
    M = std::max(M, m);  // I lies inside the stadium
    res.M = M;
    res.m = m;
    if (m == 0.0) {
        res.degenerate = true;
        res.holds = res.lhs == 0.0;
        return res;
    }
    res.exponent = 2.0 * std::log(M / m) / ln2 + 1.0;
    res.log10_rhs = res.exponent * std::log10(300.0 * len_i / len_j) + std::log10(in_j);
    res.rhs = std::pow(10.0, res.log10_rhs);
    res.holds = res.lhs == 0.0 || std::log10(res.lhs) <= res.log10_rhs;
    return res;
}

// ---------------------------------------------------------------------------

NecessityReport density_necessity_demo(const Order& order, const IntervalSet& omega, double c) {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("density_necessity_demo: c must lie in (0, 1)");
    const double alpha = order.alpha();
    const double th = pw::theta(order);
    const double c_a = bessel::certify_bound(order, 200.0).c_alpha;
    const double c_a2 = bessel::certify_bound(order.shifted(2), 200.0).c_alpha;

    NecessityReport rep{};
    rep.C_alpha = 2.0 * std::pow(pi, alpha + 1.0) * c_a * c_a / (th * std::tgamma(alpha + 2.0));

    // enough zeros to pass sup Omega
    std::size_t count = 8;
    auto zeros = bessel::zeros_of_j_prime(order, count);
    rep.a = std::max({5.0, zeros.at(1), 4.0 * rep.C_alpha / c});
    while (zeros.at(count) < omega.sup()) {
        count *= 2;
        zeros = bessel::zeros_of_j_prime(order, count);
    }
    const double a = rep.a;
    rep.gamma_implied = (alpha + 2.0) * (alpha + 2.0) * (alpha + 1.0) * c * std::tgamma(alpha + 1.0) /
                        (std::pow(2.0, 4.0 * alpha + 11.0) * std::pow(pi, alpha + 1.0) * std::pow(a, 2.0 * alpha + 6.0) *
                         th * c_a2 * c_a2);

    for (std::size_t n = 1; n <= count; ++n) {
        const double s = zeros.at(n);
        if (s < a) continue;
        if (s + a > omega.sup()) break;
        NecessityRow row{};
        row.n = n;
        row.s = s;
        // int_Omega |f_n|^2 dmu by panels of width <= 1 with 20 nodes
        const auto r = measure::cover_rule(order, omega, 1.0, 20);
        double mass = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double v = pw::extremal_family(zeros, n, r.nodes[i]);
            mass += r.weights[i] * order.mu_density(r.nodes[i]) * v * v;
        }
        row.concentration = mass / pw::extremal_norm_sq(zeros, n);
        row.violates = row.concentration < c;
        const double lo = std::max(0.0, s - a);
        row.density = measure::mu_measure(order, omega.intersect(lo, s + a)) / measure::mu_interval(order, lo, s + a);
        row.tail = pw::tail_mass(zeros, n, a);
        row.consistent = row.violates || row.density >= rep.gamma_implied;
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------

StrongPairTrials strong_pair_trials(const ProjectionPair& pair, double norm, int trials, std::uint64_t seed) {
    pair.validate();
    const double C = annihilation_constant(norm);
    const Order& o = pair.order;
    const double e = o.alpha() + 1.0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_real_distribution<double> logp(std::log(0.25), std::log(4.0));
    const auto rs = measure::cover_rule(o, pair.S, 0.25, 20);
    const auto rsig = measure::cover_rule(o, pair.Sigma, 0.25, 20);
    const auto ws = quad::mu_weights(o, rs);
    const auto wsig = quad::mu_weights(o, rsig);

    StrongPairTrials out{trials, 0, 0.0};
    for (int t = 0; t < trials; ++t) {
        const int terms = 3;
        std::vector<double> c(terms), p(terms);
        for (int j = 0; j < terms; ++j) {
            c[j] = U(rng);
            p[j] = std::exp(logp(rng));
        }
        double total = 0.0;
        for (int i = 0; i < terms; ++i)
            for (int j = 0; j < terms; ++j) total += c[i] * c[j] * std::pow(p[i] + p[j], -e);
        double in_s = 0.0, in_sigma = 0.0;
        for (std::size_t i = 0; i < rs.size(); ++i) {
            double f = 0.0;
            for (int j = 0; j < terms; ++j) f += c[j] * std::exp(-pi * p[j] * rs.nodes[i] * rs.nodes[i]);
            in_s += ws[i] * f * f;
        }
        for (std::size_t i = 0; i < rsig.size(); ++i) {
            double F = 0.0;
            for (int j = 0; j < terms; ++j) F += c[j] * std::pow(p[j], -e) * std::exp(-pi * rsig.nodes[i] * rsig.nodes[i] / p[j]);
            in_sigma += wsig[i] * F * F;
        }
        const double outside = std::max(0.0, total - in_s) + std::max(0.0, total - in_sigma);
        const double ratio = total / (C * outside);
        out.worst_ratio = std::max(out.worst_ratio, ratio);
        if (ratio > 1.0 + 1e-9) ++out.failures;
    }
    return out;
}

} // namespace hconc::annihilation
