#include "doctest.h"

#include <cmath>
#include <random>

#include "hconc/paley_wiener.hpp"
#include "hconc/translation.hpp"
#include "oracles.hpp"

using hconc::Order;
using hconc::pi;
namespace pw = hconc::pw;
namespace quad = hconc::quad;

namespace {

// j_a via the standard library's J_a and I_a.
double j_std(double a, double x) {
    if (x == 0.0) return 1.0;
    return std::tgamma(a + 1) * std::pow(x / 2, -a) * std::cyl_bessel_j(a, x);
}
double j_std_imag(double a, double y) {
    if (y == 0.0) return 1.0;
    return std::tgamma(a + 1) * std::pow(y / 2, -a) * std::cyl_bessel_i(a, y);
}

double mu_density(double a, double x) { return 2 * std::pow(pi, a + 1) / std::tgamma(a + 1) * std::pow(x, 2 * a + 1); }

// f(x), D^k f(x) / (-pi)^k or f(iy) from the spectrum by direct integration in xi.
double synth_oracle(const pw::PWFunction& f, double x, double kernel_shift = 0.0, bool imag = false) {
    const double a = f.order().alpha() + kernel_shift;
    const double base = f.order().alpha();
    return oracle::integrate(
        [&](double xi) {
            const double z = 2 * pi * x * xi;
            return f.spectrum(xi) * (imag ? j_std_imag(base, z) : j_std(a, z)) * mu_density(a, xi);
        },
        0.0, f.bandlimit(), 80);
}

} // namespace

TEST_CASE("construction and basic identities") {
    const Order o(0.5);
    CHECK_THROWS_AS(pw::PWFunction(o, 0.0, 0, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(pw::PWFunction(o, 1.0, -1, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(pw::PWFunction(o, 1.0, 0, {}), std::invalid_argument);

    const pw::PWFunction zero(o, 1.3, 2, std::vector<double>(7, 0.0));
    CHECK(zero.norm() == 0.0);
    CHECK(pw::synthesize(zero, 2.0) == 0.0);

    const auto xi = pw::PWFunction::spectral_nodes(o, 1.3, 2, 7);
    for (std::size_t i = 1; i < xi.size(); ++i) CHECK(xi[i] > xi[i - 1]);
    CHECK(xi.front() > 0.0);
    CHECK(xi.back() < 1.3);

    // the interpolating polynomial reproduces degree < N exactly
    const auto f = pw::PWFunction::from_polynomial(o, 1.3, 2, 5, [](double s) { return 1 - 2 * s + s * s * s; });
    for (double s : {0.0, 0.3, 1.1, 1.69}) CHECK(f.polynomial(s) == doctest::Approx(1 - 2 * s + s * s * s).epsilon(1e-12));
    CHECK(f.spectrum(1.3) == 0.0);
    CHECK(f.spectrum(2.0) == 0.0);
    CHECK(f.scaled(-2.0).norm() == doctest::Approx(2.0 * f.norm()).epsilon(1e-14));

    // the spectral rule integrates F^2 dmu
    const auto r = f.spectral_rule();
    double s = 0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * mu_density(0.5, r.nodes[i]) * std::pow(f.coeffs()[i], 2);
    CHECK(std::sqrt(s) == doctest::Approx(f.norm()).epsilon(1e-12));
}

TEST_CASE("norm matches direct spectral integration") {
    for (double a : {0.0, 0.5, 1.5}) {
        const Order o(a);
        for (int m : {0, 1, 3}) {
            const auto f = pw::PWFunction::from_polynomial(o, 0.8, m, 4, [](double s) { return 1 + s - 3 * s * s; });
            const double direct = oracle::integrate(
                [&](double xi) { return std::pow(f.spectrum(xi), 2) * mu_density(a, xi); }, 0.0, 0.8, 40);
            CHECK(f.norm() == doctest::Approx(std::sqrt(direct)).epsilon(1e-12));
        }
    }
}

TEST_CASE("indicator spectrum synthesizes j_{alpha+1}") {
    for (double a : {-0.5, 0.0, 0.5, 2.0}) {
        const Order o(a);
        const auto f0 = pw::extremal_f0_spectrum(o);
        CHECK(f0.norm() * f0.norm() == doctest::Approx(pw::theta(o)).epsilon(1e-12));
        for (double x : {0.0, 0.7, 3.0, 11.5, 40.0})
            CHECK(std::abs(pw::synthesize(f0, x) - oracle::j_series(a + 1, x)) < 1e-12);
    }
}

TEST_CASE("synthesis against direct integration, real and imaginary axis") {
    std::mt19937_64 rng(5);
    for (double a : {0.0, 0.5}) {
        const Order o(a);
        const auto f = pw::random_pw(o, 1.2, 8, 4, rng);
        CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-13));
        std::vector<double> xs{0.0, 0.4, 2.5, 9.0};
        const auto v = pw::synthesize(f, xs);
        for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(v[i] - synth_oracle(f, xs[i])) < 1e-11);

        const auto series = pw::EntireEvenSeries::from_pw(f, 6.0);
        // the alternating series cancels on the real axis, so stay at moderate x there
        for (double x : {0.4, 2.5}) CHECK(std::abs(series(x).real() - pw::synthesize(f, x)) < 1e-9);
        for (double y : {0.5, 2.0, 6.0}) {
            const auto z = series(std::complex<double>(0.0, y));
            const double expect = synth_oracle(f, y, 0.0, true);
            CHECK(std::abs(z.imag()) < 1e-12 * std::abs(expect) + 1e-14);
            CHECK(z.real() == doctest::Approx(expect).epsilon(1e-10));
        }
        // g(s) = f(sqrt s)
        CHECK(std::abs(series.in_s(6.25).real() - pw::synthesize(f, 2.5)) < 1e-10);
    }
}

TEST_CASE("Plancherel: spatial norm equals spectral norm") {
    std::mt19937_64 rng(9);
    for (double a : {-0.5, 0.0, 1.0}) {
        const Order o(a);
        const auto f = pw::random_pw(o, 1.0, 6, 6, rng);
        // composite quadrature of |f|^2 dmu on [0, 60] with the oracle integrator
        std::vector<double> xs;
        const int panels = 240;
        for (int p = 0; p < panels; ++p)
            for (double t : {0.04691007703066800, 0.2307653449471585, 0.5, 0.7692346550528415, 0.9530899229693320})
                xs.push_back((p + t) * 60.0 / panels);
        const auto v = pw::synthesize(f, xs);
        static const double w5[5] = {0.1184634425280945, 0.2393143352496832, 0.2844444444444444, 0.2393143352496832,
                                     0.1184634425280945};
        double s = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) s += w5[i % 5] * (60.0 / panels) * v[i] * v[i] * mu_density(a, xs[i]);
        CHECK(std::sqrt(s) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("operator D") {
    std::mt19937_64 rng(13);
    for (double a : {0.0, 0.5, 2.0}) {
        const Order o(a);
        const auto f = pw::random_pw(o, 1.1, 7, 3, rng);
        // D f = f'(x) / (2x) by central differences
        for (double x : {0.6, 1.7, 4.2}) {
            const double h = 1e-4;
            const double fd = (pw::synthesize(f, x + h) - pw::synthesize(f, x - h)) / (2 * h) / (2 * x);
            CHECK(pw::apply_Dk(f, 1, x) == doctest::Approx(fd).epsilon(1e-6));
            // D^2 f = D(D f)
            const double fd2 = (pw::apply_Dk(f, 1, x + h) - pw::apply_Dk(f, 1, x - h)) / (2 * h) / (2 * x);
            CHECK(pw::apply_Dk(f, 2, x) == doctest::Approx(fd2).epsilon(1e-6));
        }
        // against direct integration with the shifted kernel
        for (int k : {1, 3}) {
            for (double x : {0.0, 1.3, 5.0}) {
                const double direct = std::pow(-pi, k) * synth_oracle(f, x, k);
                CHECK(std::abs(pw::apply_Dk(f, k, x) - direct) < 1e-11 * std::max(1.0, std::pow(pi * pi * 1.1, k)));
            }
        }
    }
    // D j_a(lambda x) = -lambda^2 / (4 (a+1)) j_{a+1}(lambda x) with lambda = 2 pi b, via f_0
    const Order o(1.0);
    const auto f0 = pw::extremal_f0_spectrum(o);
    for (double x : {0.5, 3.0}) {
        const double expect = -1.0 / (4 * (2.0 + 1)) * oracle::j_series(3.0, x);
        CHECK(pw::apply_Dk(f0, 1, x) == doctest::Approx(expect).epsilon(1e-11));
    }
    CHECK_THROWS_AS(pw::apply_Dk(f0, -1, 1.0), std::invalid_argument);
}

TEST_CASE("Bernstein inequality on random functions") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int cases = 0;
    for (int trial = 0; trial < 12; ++trial) {
        const double a = -0.5 + 3.0 * U(rng);
        const double b = 0.5 + 1.5 * U(rng);
        const Order o(a);
        const auto f = pw::random_pw(o, b, 6 + trial % 5, 6, rng);
        for (int k : {0, 1, 2, 4}) {
            const auto sides = pw::bernstein_sides(f, k);
            const double dual = pw::spectral_Dk_norm(f, k);
            CHECK(sides.lhs == doctest::Approx(dual).epsilon(1e-8));
            CHECK(sides.lhs <= sides.rhs * (1 + 1e-10));
            if (k == 0) CHECK(sides.lhs == doctest::Approx(sides.rhs).epsilon(1e-9));
            ++cases;
        }
    }
    CHECK(cases == 48);
}

TEST_CASE("Bernstein inequality in the squared variable") {
    std::mt19937_64 rng(23);
    for (double a : {0.0, 0.5, 1.5}) {
        const Order o(a);
        const auto f = pw::random_pw(o, 1.0, 8, 6, rng);
        const double nu = pw::nu_constant(o);
        const auto s0 = pw::squared_bernstein_sides(f, 0);
        CHECK(s0.lhs == doctest::Approx(s0.rhs).epsilon(1e-9));
        CHECK(s0.rhs == doctest::Approx(1.0 / nu).epsilon(1e-8));
        for (int k : {1, 2, 3}) {
            const auto s = pw::squared_bernstein_sides(f, k);
            CHECK(s.lhs <= s.rhs * (1 + 1e-10));
            // d^k g / ds^k = D^k f (sqrt s), so the lhs is a multiple of ||D^k f||^2
            const double expect = std::pow(pw::spectral_Dk_norm(f, k), 2) / pw::nu_constant(o.shifted(k));
            CHECK(s.lhs == doctest::Approx(expect).epsilon(1e-8));
        }
    }
}

TEST_CASE("square-root substitution") {
    for (double a : {0.0, 0.5, 2.0}) {
        const Order o(a);
        const auto rule = quad::mu_adapted_rule(o, 0.0, 8.0, 120);
        const auto f = quad::sample(rule, [](double x) { return std::exp(-pi * x * x) * (1 + x); });
        const auto g = pw::sqrt_substitute(f);
        CHECK(g.rule.hi == 64.0);
        double lhs = 0;
        for (std::size_t i = 0; i < g.rule.size(); ++i) lhs += g.rule.weights[i] * g.values[i] * g.values[i] * std::pow(g.rule.nodes[i], a);
        const double n = quad::l2_norm(o, f);
        CHECK(lhs == doctest::Approx(std::tgamma(a + 1) / std::pow(pi, a + 1) * n * n).epsilon(1e-12));
    }
}

TEST_CASE("extremal family") {
    for (double a : {0.0, 0.5, 1.0}) {
        const Order o(a);
        const auto zeros = hconc::bessel::zeros_of_j_prime(o, 8);
        for (std::size_t n = 1; n <= 5; ++n) {
            const double s = zeros.at(n);
            // the zeros of j_a' are those of j_{a+1}
            CHECK(std::abs(oracle::j_series(a + 1, s)) < 1e-12);
            // f_n vanishes at the other zeros
            for (std::size_t m = 1; m <= 8; ++m)
                if (m != n) CHECK(std::abs(pw::extremal_family(zeros, n, zeros.at(m))) < 1e-12);
            // Taylor branch joins the closed form
            for (double u : {0.99e-4, 1.01e-4})
                CHECK(pw::extremal_family(zeros, n, s * (1 + u)) ==
                      doctest::Approx(pw::extremal_family(zeros, n, s * (1 + u * (1 + 1e-9)))).epsilon(1e-8));
            // closed form, spectral synthesis and translation of f_0 agree
            const auto spec = pw::extremal_spectrum(zeros, n);
            CHECK(spec.norm() * spec.norm() == doctest::Approx(pw::extremal_norm_sq(zeros, n)).epsilon(1e-10));
            const hconc::translation::TranslationPlan plan(o);
            auto f0 = [&](double t) { return pw::extremal_family(zeros, 0, t); };
            for (double x : {0.0, 1.0, s, s + 2.3, 3 * s}) {
                const double closed = pw::extremal_family(zeros, n, x);
                CHECK(std::abs(pw::synthesize(spec, x) - closed) < 1e-10);
                CHECK(std::abs(plan.translate(s, f0, x) - closed) < 1e-9);
            }
        }
        // tail mass decreases with the window and lies in [0, 1]
        double prev = 1.0;
        for (double w : {1.0, 4.0, 16.0, 64.0}) {
            const double t = pw::tail_mass(zeros, 3, w);
            CHECK(t >= 0.0);
            CHECK(t <= prev);
            prev = t;
        }
        CHECK(prev < 0.1);
        CHECK_THROWS_AS(pw::tail_mass(zeros, 3, 0.0), std::invalid_argument);
    }
}
