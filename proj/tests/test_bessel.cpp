#include "doctest.h"

#include <cmath>
#include <vector>

#include "hconc/bessel.hpp"
#include "oracles.hpp"

using hconc::Order;
using hconc::pi;
namespace bessel = hconc::bessel;

TEST_CASE("eval_j at the origin and closed-form orders") {
    CHECK(bessel::eval_j(Order(0.7), 0.0) == 1.0);
    for (double t : {1.0, 2.5, 10.0}) {
        CHECK(bessel::eval_j(Order(0.5), t) == doctest::Approx(std::sin(t) / t).epsilon(1e-14));
        CHECK(std::abs(bessel::eval_j(Order(-0.5), t) - std::cos(t)) < 5e-13);
    }
    // j_{3/2}(x) = 3 (sin x - x cos x) / x^3 out to the end of the certified range
    for (double x = 0.37; x < 1e4; x *= 1.7) {
        const double exact = 3.0 * (std::sin(x) - x * std::cos(x)) / (x * x * x);
        CHECK(std::abs(bessel::eval_j(Order(1.5), x) - exact) < 1e-12);
        CHECK(std::abs(bessel::eval_j(Order(-0.5), x) - std::cos(x)) < 1e-12);
        CHECK(std::abs(bessel::eval_j(Order(0.5), x) - std::sin(x) / x) < 1e-12);
    }
}

TEST_CASE("eval_j matches the high-precision series oracle") {
    for (double nu : {-0.5, -0.3, 0.0, 0.25, 0.5, 1.0, 2.3, 4.0, 7.5, 15.0, 31.0}) {
        double worst = 0.0;
        for (double x = 0.05; x <= 120.0; x += 0.37) {
            worst = std::max(worst, std::abs(bessel::eval_j(Order(nu), x) - oracle::j_series(nu, x)));
        }
        INFO("nu = " << nu);
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("eval_j agrees with the standard library far out") {
    for (double nu : {0.0, 1.0, 2.0, 5.0}) {
        for (double x = 150.0; x < 1e4; x *= 1.37) {
            const double ref = std::tgamma(nu + 1.0) * std::pow(2.0 / x, nu) * std::cyl_bessel_j(nu, x);
            CHECK(std::abs(bessel::eval_j(Order(nu), x) - ref) < 1e-12);
        }
    }
}

TEST_CASE("evaluation routes agree in their overlap bands") {
    namespace d = bessel::detail;
    for (double nu : {-0.5, 0.0, 0.3, 1.0, 3.7}) {
        for (double x = 1.0; x <= 4.0; x += 0.125)
            CHECK(std::abs(d::series(nu, x) - d::miller(nu, x)) < 5e-13);
        for (double x = 25.0; x <= 60.0; x += 0.7)
            CHECK(std::abs(d::miller(nu, x) - d::asymptotic_upward(nu, x)) < 5e-13);
    }
}

TEST_CASE("eval_j is even, bounded by one, and rejects non-finite input") {
    const Order o(1.3);
    CHECK(bessel::eval_j(o, -3.2) == bessel::eval_j(o, 3.2));
    CHECK_THROWS_AS(bessel::eval_j(o, std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(bessel::eval_j(o, INFINITY), std::invalid_argument);
    CHECK_THROWS_AS(Order(-0.6), std::invalid_argument);
    for (double a : {-0.5, 0.0, 0.5, 1.0, 2.3}) {
        double worst = 0.0;
        for (double x = 0.0; x <= 1000.0; x += 0.05) worst = std::max(worst, std::abs(bessel::eval_j(Order(a), x)));
        CHECK(worst <= 1.0);
    }
}

TEST_CASE("derivative identity against finite differences") {
    CHECK(bessel::eval_j_derivative(Order(0.0), 0.0) == 0.0);
    const double h = 1e-6;
    auto fd = [h](const Order& o, double x) {
        return (bessel::eval_j(o, x + h) - bessel::eval_j(o, x - h)) / (2 * h);
    };
    const Order half(0.5);
    CHECK(bessel::eval_j_derivative(half, pi) == doctest::Approx(-pi / 3 * bessel::eval_j(Order(1.5), pi)));
    CHECK(std::abs(bessel::eval_j_derivative(half, pi) - fd(half, pi)) < 1e-6);
    CHECK(std::abs(bessel::eval_j_derivative(Order(0.0), 2.0) - fd(Order(0.0), 2.0)) < 1e-6);
    for (double a : {-0.5, 0.0, 1.0, 2.3}) {
        for (double x = 0.1; x <= 100.0; x += 0.93)
            CHECK(std::abs(bessel::eval_j_derivative(Order(a), x) - fd(Order(a), x)) < 1e-6);
    }
}

TEST_CASE("certify_bound") {
    const auto b = bessel::certify_bound(Order(-0.5), 100.0);
    CHECK(b.c_alpha >= 1.0);
    CHECK(b.grid_max == 100.0);

    const auto c1 = bessel::certify_bound(Order(0.0), 1000.0);
    const auto c2 = bessel::certify_bound(Order(0.0), 2000.0);
    CHECK(std::isfinite(c1.c_alpha));
    CHECK(std::abs(c2.c_alpha / c1.c_alpha - 1.0) < 0.01);

    for (double a : {0.0, 1.0, 2.0}) {
        const Order o(a);
        const auto bound = bessel::certify_bound(o, 200.0);
        for (double t = 0.0; t <= 200.0; t += 0.0013)
            REQUIRE(std::abs(bessel::eval_j(o, t)) <= bound.c_alpha * std::pow(1 + t, -a - 0.5));
    }
    CHECK_THROWS_AS(bessel::certify_bound(Order(0.0), 0.0), std::invalid_argument);
}

TEST_CASE("zeros of j'_alpha") {
    SUBCASE("alpha = -1/2 gives multiples of pi") {
        const auto z = bessel::zeros_of_j_prime(Order(-0.5), 3);
        REQUIRE(z.count() == 3);
        CHECK(z.at(0) == 0.0);
        for (int n = 1; n <= 3; ++n) CHECK(z.at(n) == doctest::Approx(n * pi).epsilon(1e-14));
    }
    SUBCASE("alpha = 0 first zero equals the first zero of J_1") {
        const auto z = bessel::zeros_of_j_prime(Order(0.0), 1);
        const double ref = oracle::bisect([](double x) { return oracle::j_series(1.0, x); }, 3.0, 4.5);
        CHECK(z.at(1) == doctest::Approx(ref).epsilon(1e-13));
        CHECK(z.at(1) == doctest::Approx(3.8317059702075123).epsilon(1e-14));
    }
    SUBCASE("asymptotic location and spacing") {
        for (double a : {-0.5, 0.0, 0.7, 1.0, 3.0}) {
            const auto z = bessel::zeros_of_j_prime(Order(a), 400);
            CHECK(z.check_invariants().empty());
            for (int n : {50, 100, 400}) {
                const double dev = z.at(n) / pi - n - (2 * a + 1) / 4;
                CHECK(std::abs(dev) * n < 2.0);  // O(1/n)
            }
            CHECK(std::abs(z.at(400) - z.at(399) - pi) < 1e-2);
        }
    }
    SUBCASE("larger orders") {
        const auto z = bessel::zeros_of_j_prime(Order(20.0), 30);
        CHECK(z.check_invariants().empty());
        const double ref = oracle::bisect([](double x) { return oracle::j_series(21.0, x); }, 25.0, z.at(1) + 0.5);
        CHECK(z.at(1) == doctest::Approx(ref).epsilon(1e-12));
    }
    SUBCASE("a corrupted table is detected") {
        auto good = bessel::zeros_of_j_prime(Order(0.0), 5);
        std::vector<double> bad(good.zeros().begin(), good.zeros().end());
        std::swap(bad[1], bad[2]);
        CHECK(bessel::ZeroTable(Order(0.0), bad).check_invariants().find("interlacing") == 0);
    }
    CHECK_THROWS_AS(bessel::zeros_of_j_prime(Order(0.0), 0), std::invalid_argument);
}

TEST_CASE("integral identities of the normalized Bessel functions") {
    // Oracle: composite Gauss quadrature of the left-hand sides.
    for (double a : {-0.5, 0.0, 0.5, 1.0, 2.3}) {
        const Order o(a);
        const Order o1 = o.shifted(1);
        const double p = 2 * a + 1;
        for (double s : {0.5, 1.0, 3.0}) {
            for (double x : {0.7, 2.0}) {
                const double lhs = oracle::integrate(
                    [&](double t) { return bessel::eval_j(o, t * x) * std::pow(t, p); }, 0.0, s, 40);
                const double rhs = std::pow(s, 2 * a + 2) / (2 * a + 2) * bessel::eval_j(o1, s * x);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
            }
            // square of a single function, u = 1
            const double lhs2 = oracle::integrate(
                [&](double t) { const double j = bessel::eval_j(o, t); return j * j * std::pow(t, p); }, 0.0, s, 40);
            const double jd = bessel::eval_j_derivative(o, s);
            const double j = bessel::eval_j(o, s);
            const double rhs2 = std::pow(s, 2 * a + 2) / 2 * (jd * jd + 2 * a / s * jd * j + j * j);
            CHECK(lhs2 == doctest::Approx(rhs2).epsilon(1e-8));
            // cross term, u != v
            const double u = 0.7, v = 2.0;
            const double lhs3 = oracle::integrate(
                [&](double t) { return bessel::eval_j(o, u * t) * bessel::eval_j(o, v * t) * std::pow(t, p); },
                0.0, s, 40);
            const double rhs3 = std::pow(s, p) / (u * u - v * v) *
                                (v * bessel::eval_j_derivative(o, v * s) * bessel::eval_j(o, u * s) -
                                 u * bessel::eval_j_derivative(o, u * s) * bessel::eval_j(o, v * s));
            CHECK(lhs3 == doctest::Approx(rhs3).epsilon(1e-8));
        }
    }
}
