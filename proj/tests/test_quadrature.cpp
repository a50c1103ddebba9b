#include "doctest.h"

#include <cmath>
#include <random>

#include "hconc/bessel.hpp"
#include "hconc/quadrature.hpp"
#include "oracles.hpp"

using hconc::Order;
using hconc::pi;
namespace quad = hconc::quad;

namespace {

double beta_fn(double p, double q) { return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q)); }

// e^{-pi x^2} is its own transform for every order.
double gaussian(double x) { return std::exp(-pi * x * x); }

} // namespace

TEST_CASE("Gauss-Legendre exactness") {
    for (int n : {1, 2, 3, 7, 20, 64, 257}) {
        const auto r = quad::build_rule(0.0, 1.0, n);
        CHECK(r.integrate([](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
        const int d = 2 * n - 1;
        CHECK(r.integrate([d](double x) { return std::pow(x, d); }) == doctest::Approx(1.0 / (d + 1)).epsilon(1e-12));
        for (double w : r.weights) CHECK(w > 0.0);
    }
    for (int n : {20, 40})
        CHECK(std::abs(quad::build_rule(0.0, 1.0, n).integrate([](double x) { return std::cos(2 * pi * x); })) < 1e-12);
    const auto r = quad::build_rule(-3.0, 5.0, 9);
    CHECK(r.integrate([](double x) { return x * x; }) == doctest::Approx((125.0 + 27.0) / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(quad::build_rule(1.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(quad::build_rule(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("Gauss-Jacobi moments against Beta functions") {
    for (double a : {0.0, -0.5, 0.3, 2.0, 12.0}) {
        for (double b : {0.0, -0.5, 0.4, 1.0, 3.6}) {
            for (int n : {1, 2, 5, 17, 60}) {
                const auto r = quad::gauss_jacobi(0.0, 1.0, n, a, b);
                for (int k : {0, 1, n, 2 * n - 1}) {
                    const double got = r.integrate([k](double x) { return std::pow(x, k); });
                    CHECK(got == doctest::Approx(beta_fn(k + b + 1, a + 1)).epsilon(1e-12));
                }
            }
        }
    }
    const auto r = quad::gauss_jacobi(2.0, 6.0, 8, 1.5, 0.5);
    // int_2^6 (6-x)^1.5 (x-2)^0.5 dx = 4^3 B(1.5, 2.5)
    CHECK(r.integrate([](double) { return 1.0; }) == doctest::Approx(64.0 * beta_fn(1.5, 2.5)).epsilon(1e-13));
    CHECK_THROWS_AS(quad::gauss_jacobi(0.0, 1.0, 4, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("mu-adapted rules integrate even moments of mu_alpha exactly") {
    for (double a : {-0.5, -0.3, 0.0, 0.7, 2.5}) {
        const Order o(a);
        const auto r = quad::mu_adapted_rule(o, 0.0, 1.7, 12);
        const auto w = quad::mu_weights(o, r);
        for (int j : {0, 3, 11}) {
            double got = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) got += w[i] * std::pow(r.nodes[i], 2 * j);
            const double p = 2 * a + 2 + 2 * j;
            CHECK(got == doctest::Approx(o.mu_constant() * std::pow(1.7, p) / p).epsilon(1e-12));
        }
    }
}

TEST_CASE("forward transform of closed-form pairs") {
    for (double a : {-0.5, 0.0, 0.5, 1.0, 2.3}) {
        const Order o(a);
        std::vector<double> ys;
        for (double y = 0.0; y <= 3.0; y += 0.1) ys.push_back(y);

        SUBCASE("zero function") {
            const auto f = quad::sample(quad::build_rule(0.0, 1.0, 10), [](double) { return 0.0; });
            for (double v : quad::forward(o, f, ys)) CHECK(v == 0.0);
        }
        SUBCASE("Gaussian is self-dual") {
            const auto f = quad::sample(quad::mu_adapted_rule(o, 0.0, 7.0, 120), gaussian);
            const auto F = quad::forward(o, f, ys);
            for (std::size_t j = 0; j < ys.size(); ++j) CHECK(std::abs(F[j] - gaussian(ys[j])) < 1e-12);
            CHECK(quad::l2_norm(o, f) == doctest::Approx(std::pow(2.0, -(a + 1) / 2)).epsilon(1e-12));
        }
        SUBCASE("scaled indicator transforms to j_{alpha+1}") {
            const double theta = std::pow(4 * pi, a + 1) * std::tgamma(a + 2);
            const auto f = quad::sample(quad::mu_adapted_rule(o, 0.0, 1.0 / (2 * pi), 40), [=](double) { return theta; });
            std::vector<double> xs;
            for (double x = 0.0; x <= 30.0; x += 0.7) xs.push_back(x);
            const auto F = quad::inverse(o, f, xs);
            for (std::size_t j = 0; j < xs.size(); ++j)
                CHECK(std::abs(F[j] - hconc::bessel::eval_j(o.shifted(1), xs[j])) < 1e-12);
        }
    }
}

TEST_CASE("inversion, linearity and the L1 to Linf bound") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (double a : {-0.5, 0.0, 0.5, 1.0}) {
        const Order o(a);
        // Gaussian mixtures: closed-form transforms, rapid decay on both sides.
        for (int trial = 0; trial < 5; ++trial) {
            double c[3], p[3];
            for (int m = 0; m < 3; ++m) {
                c[m] = U(rng);
                p[m] = 1.0 + 0.5 * (U(rng) + 1.0);
            }
            auto fx = [&](double x) {
                double s = 0.0;
                for (int m = 0; m < 3; ++m) s += c[m] * std::exp(-pi * p[m] * x * x);
                return s;
            };
            auto Fy = [&](double y) {
                double s = 0.0;
                for (int m = 0; m < 3; ++m) s += c[m] * std::pow(p[m], -(a + 1)) * std::exp(-pi * y * y / p[m]);
                return s;
            };
            const auto rx = quad::mu_adapted_rule(o, 0.0, 7.0, 140);
            const auto ry = quad::mu_adapted_rule(o, 0.0, 8.0, 160);
            const auto f = quad::sample(rx, fx);
            const auto F = quad::forward(o, f, ry.nodes);
            for (std::size_t j = 0; j < F.size(); ++j) CHECK(std::abs(F[j] - Fy(ry.nodes[j])) < 1e-12);

            const quad::SampledFunction Fs{ry, F};
            const auto back = quad::inverse(o, Fs, rx.nodes);
            const double nf = quad::l2_norm(o, f);
            double err = 0.0;
            for (std::size_t i = 0; i < back.size(); ++i) err = std::max(err, std::abs(back[i] - f.values[i]));
            CHECK(err < 1e-8 * nf);
            CHECK(std::abs(quad::l2_norm(o, Fs) / nf - 1.0) < 1e-10);

            double l1 = 0.0;
            const auto w = quad::mu_weights(o, rx);
            for (std::size_t i = 0; i < w.size(); ++i) l1 += w[i] * std::abs(f.values[i]);
            for (double v : F) CHECK(std::abs(v) <= l1 + 1e-8);

            // linearity
            const auto g = quad::sample(rx, [](double x) { return std::exp(-pi * 2.0 * x * x); });
            quad::SampledFunction h{rx, {}};
            for (std::size_t i = 0; i < rx.size(); ++i) h.values.push_back(0.3 * f.values[i] - 1.7 * g.values[i]);
            const auto G = quad::forward(o, g, ry.nodes);
            const auto H = quad::forward(o, h, ry.nodes);
            for (std::size_t j = 0; j < H.size(); ++j) CHECK(std::abs(H[j] - (0.3 * F[j] - 1.7 * G[j])) < 1e-14);
        }
    }
}

TEST_CASE("dilation") {
    const Order o(0.8);
    const auto f = quad::sample(quad::mu_adapted_rule(o, 0.0, 6.0, 100), [](double x) { return (1 + x) * gaussian(x); });
    const auto same = quad::dilate(o, 1.0, f);
    CHECK(same.values == f.values);
    CHECK(same.rule.nodes == f.rule.nodes);
    CHECK_THROWS_AS(quad::dilate(o, 0.0, f), std::invalid_argument);
    CHECK_THROWS_AS(quad::dilate(o, -2.0, f), std::invalid_argument);

    for (double lambda : {0.5, 1.3, 3.0}) {
        const auto g = quad::dilate(o, lambda, f);
        // norm via an independent composite rule on the dilated function
        const double direct = std::sqrt(oracle::integrate(
            [&](double x) {
                const double v = std::pow(lambda, -(o.alpha() + 1)) * (1 + x / lambda) * gaussian(x / lambda);
                return v * v * o.mu_density(x);
            },
            0.0, 6.0 * lambda, 60));
        CHECK(quad::l2_norm(o, g) == doctest::Approx(direct).epsilon(1e-9));
        CHECK(quad::l2_norm(o, g) == doctest::Approx(quad::l2_norm(o, f)).epsilon(1e-12));

        std::vector<double> ys{0.0, 0.2, 0.5, 1.1, 2.0};
        std::vector<double> scaled;
        for (double y : ys) scaled.push_back(lambda * y);
        const auto lhs = quad::forward(o, g, ys);
        const auto Ff = quad::forward(o, f, scaled);
        for (std::size_t j = 0; j < ys.size(); ++j)
            CHECK(std::abs(lhs[j] - std::pow(lambda, o.alpha() + 1) * Ff[j]) < 1e-8);
    }
}
