#include "doctest.h"

#include <cmath>
#include <random>

#include "hconc/bessel.hpp"
#include "hconc/translation.hpp"
#include "oracles.hpp"

using hconc::Order;
using hconc::pi;
namespace quad = hconc::quad;
namespace tr = hconc::translation;

namespace {

// T_x e^{-p t^2}(y) = e^{-p(x^2+y^2)} Gamma(a+1) (pxy)^{-a} I_a(2pxy), from the
// modified Bessel series; evaluated with the standard library.
double translated_gaussian(double a, double p, double x, double y) {
    const double z = 2 * p * x * y;
    if (z == 0.0) return std::exp(-p * (x * x + y * y));
    // scaled to avoid overflow: I_a(z) e^{-z}
    const double scaled_i = std::cyl_bessel_i(a, z) * std::exp(-z);
    return std::exp(-p * (x - y) * (x - y)) * std::tgamma(a + 1) * std::pow(z / 2, -a) * scaled_i;
}

} // namespace

TEST_CASE("translation basics") {
    for (double a : {-0.5, 0.0, 0.5, 1.0, 2.5}) {
        const Order o(a);
        const tr::TranslationPlan plan(o);
        auto f = [](double t) { return std::exp(-t * t) * (1 + t); };
        CHECK(plan.translate(0.0, f, 1.7) == doctest::Approx(f(1.7)).epsilon(1e-14));
        CHECK(plan.translate(2.3, [](double) { return 1.0; }, 0.4) == doctest::Approx(1.0).epsilon(1e-12));
        for (double x : {0.3, 1.0, 4.0}) {
            for (double y : {0.2, 2.0, 7.5}) {
                for (double lam : {0.5, 2.0}) {
                    auto jl = [&](double t) { return hconc::bessel::eval_j(o, lam * t); };
                    const double expect = hconc::bessel::eval_j(o, lam * x) * hconc::bessel::eval_j(o, lam * y);
                    CHECK(std::abs(plan.translate(x, jl, y) - expect) < 1e-10);
                }
                CHECK(plan.translate(x, f, y) == doctest::Approx(plan.translate(y, f, x)).epsilon(1e-10));
            }
        }
    }
    CHECK_THROWS_AS(tr::TranslationPlan(Order(0.0)).translate(-1.0, [](double) { return 1.0; }, 1.0),
                    std::invalid_argument);
}

TEST_CASE("translation of Gaussians matches the closed form") {
    for (double a : {0.0, 0.5, 1.0, 3.0}) {
        const tr::TranslationPlan plan{Order(a)};
        for (double p : {0.5, 2.0}) {
            auto g = [p](double t) { return std::exp(-p * t * t); };
            for (double x : {0.5, 1.5, 3.0})
                for (double y : {0.1, 1.0, 2.5})
                    CHECK(plan.translate(x, g, y) == doctest::Approx(translated_gaussian(a, p, x, y)).epsilon(1e-11));
        }
    }
}

TEST_CASE("kernel W") {
    const Order o(1.0);
    CHECK(tr::kernel_W(o, 2.0, 3.0, 0.5) == 0.0);
    CHECK(tr::kernel_W(o, 2.0, 3.0, 5.5) == 0.0);
    CHECK(tr::kernel_W(o, 2.0, 3.0, 2.5) > 0.0);
    // alpha = 1/2 closed form W = 1 / (8 pi x y t)
    CHECK(tr::kernel_W(Order(0.5), 1.2, 2.0, 1.5) == doctest::Approx(1.0 / (8 * pi * 1.2 * 2.0 * 1.5)).epsilon(1e-14));

    for (double a : {-0.25, 0.0, 0.5, 1.0, 2.3}) {
        const Order oa(a);
        for (auto [x, y] : {std::pair{2.0, 3.0}, {0.4, 0.5}, {5.0, 1.0}}) {
            // mass one, computed both by the Jacobi-weighted route and directly
            CHECK(tr::translate_by_kernel(oa, x, [](double) { return 1.0; }, y) == doctest::Approx(1.0).epsilon(1e-12));
            if (a >= 0.5) {
                // t = c - h cos(phi) turns the endpoint behaviour into sin^{2a}(phi)
                const double c = 0.5 * (std::fabs(x - y) + x + y), h = 0.5 * (x + y - std::fabs(x - y));
                const double direct = oracle::integrate(
                    [&](double phi) {
                        const double t = c - h * std::cos(phi);
                        return tr::kernel_W(oa, x, y, t) * oa.mu_density(t) * h * std::sin(phi);
                    },
                    0.0, pi, 200);
                CHECK(direct == doctest::Approx(1.0).epsilon(1e-9));
            }
        }
    }
    // kernel route equals theta route
    const tr::TranslationPlan plan(o);
    auto f = [](double t) { return std::exp(-0.3 * t * t) * std::cos(t); };
    CHECK(std::abs(tr::translate_by_kernel(o, 2.0, f, 3.0) - plan.translate(2.0, f, 3.0)) < 1e-8);
}

TEST_CASE("contraction, intertwining and convolution") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (double a : {-0.5, 0.0, 0.5, 1.0}) {
        const Order o(a);
        const tr::TranslationPlan plan(o);
        for (int trial = 0; trial < 3; ++trial) {
            const double p = 0.5 + 2.0 * U(rng);
            const double x = 3.0 * U(rng);
            auto f = [p](double t) { return std::exp(-pi * p * t * t); };
            const auto rule = quad::mu_adapted_rule(o, 0.0, x + 8.0, 160);
            const auto Tf = quad::sample(rule, [&](double y) { return plan.translate(x, f, y); });
            const auto fs = quad::sample(rule, f);

            // contraction in L^1 and L^2
            const auto w = quad::mu_weights(o, rule);
            double l1T = 0, l1f = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                l1T += w[i] * std::abs(Tf.values[i]);
                l1f += w[i] * std::abs(fs.values[i]);
            }
            CHECK(l1T <= l1f * (1 + 1e-8));
            CHECK(quad::l2_norm(o, Tf) <= quad::l2_norm(o, fs) * (1 + 1e-8));

            // F(T_x f)(y) = j(2 pi x y) F f(y), F f(y) = p^{-(a+1)} e^{-pi y^2 / p}
            std::vector<double> ys{0.1, 0.4, 0.9, 1.5};
            const auto FT = quad::forward(o, Tf, ys);
            for (std::size_t j = 0; j < ys.size(); ++j) {
                const double Ff = std::pow(p, -(a + 1)) * std::exp(-pi * ys[j] * ys[j] / p);
                const double expect = hconc::bessel::eval_j(o, 2 * pi * x * ys[j]) * Ff;
                CHECK(std::abs(FT[j] - expect) <= 1e-6 * std::max(std::abs(expect), 1e-3 * Ff));
            }
        }

        // Gaussians convolve to a Gaussian: rate r = pq / (p + q), amplitude (r/(pq))^{a+1}
        const double p = 1.3, q = 0.8, r = p * q / (p + q);
        auto g = [q](double t) { return std::exp(-pi * q * t * t); };
        const auto fs = quad::sample(quad::mu_adapted_rule(o, 0.0, 6.0, 80),
                                     [p](double t) { return std::exp(-pi * p * t * t); });
        std::vector<double> xs{0.0, 0.3, 1.0, 2.2};
        const auto conv = tr::convolve(plan, fs, g, xs);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const double expect = std::pow(r / (p * q), a + 1) * std::exp(-pi * r * xs[j] * xs[j]);
            CHECK(conv[j] == doctest::Approx(expect).epsilon(1e-9));
        }
        // g = 1 gives the integral of f
        const auto one = tr::convolve(plan, fs, [](double) { return 1.0; }, xs);
        for (double v : one) CHECK(v == doctest::Approx(std::pow(p, -(a + 1))).epsilon(1e-11));
    }
}

TEST_CASE("Young inequality and support of translates") {
    const Order o(0.5);
    const tr::TranslationPlan plan(o);
    // f = indicator-like bump supported in [0, b]: T_x f vanishes beyond b + x
    const double b = 1.0;
    auto bump = [b](double t) { return t < b ? std::pow(1 - (t / b) * (t / b), 3) : 0.0; };
    for (double x : {0.5, 2.0})
        for (double y : {b + x + 0.01, b + x + 1.0}) CHECK(plan.translate(x, bump, y) == 0.0);

    auto f = [](double t) { return std::exp(-pi * 1.5 * t * t); };
    auto g = [](double t) { return std::exp(-pi * 0.7 * t * t) * (1 + t); };
    const auto fr = quad::mu_adapted_rule(o, 0.0, 6.0, 60);
    const auto fs = quad::sample(fr, f);
    const auto xr = quad::mu_adapted_rule(o, 0.0, 9.0, 90);
    const auto conv = tr::convolve(plan, fs, g, xr.nodes);
    const auto w = quad::mu_weights(o, xr);
    const auto wf = quad::mu_weights(o, fr);
    double c1 = 0, c2 = 0, f1 = 0, g1 = 0, g2 = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        c1 += w[i] * std::abs(conv[i]);
        c2 += w[i] * conv[i] * conv[i];
        g1 += w[i] * std::abs(g(xr.nodes[i]));
        g2 += w[i] * g(xr.nodes[i]) * g(xr.nodes[i]);
    }
    for (std::size_t i = 0; i < wf.size(); ++i) f1 += wf[i] * std::abs(fs.values[i]);
    CHECK(c1 <= f1 * g1 * (1 + 1e-6));
    CHECK(std::sqrt(c2) <= f1 * std::sqrt(g2) * (1 + 1e-6));
}
