#pragma once

// Test-only reference computations, independent of the library's evaluation paths.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <functional>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_100;

/// j_nu(x) from the defining power series in 100-digit arithmetic. The rising
/// factorial (nu+1)_n replaces the Gamma ratio, so no special functions are
/// involved. Accurate to double precision for x up to ~150.
inline double j_series(double nu, double x) {
    const big q = -big(x) * big(x) / 4;
    big term = 1;
    big sum = 1;
    for (int n = 1; n < 2000; ++n) {
        term *= q / (big(n) * (big(nu) + n));
        sum += term;
        if (n > 4 && boost::multiprecision::abs(term) < big("1e-40")) break;
    }
    return static_cast<double>(sum);
}

/// Composite Gauss-Legendre (10-point, fixed table) on [a, b] with `panels` panels.
inline double integrate(const std::function<double(double)>& f, double a, double b, int panels) {
    static const double x10[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                  0.8650633666889845, 0.9739065285171717};
    static const double w10[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                  0.1494513491505806, 0.0666713443086881};
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        const double r = 0.5 * h;
        double s = 0.0;
        for (int i = 0; i < 5; ++i) s += w10[i] * (f(c - r * x10[i]) + f(c + r * x10[i]));
        total += s * r;
    }
    return total;
}

/// Bisection root of f on [a, b] (sign change required).
inline double bisect(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if (b - a < 1e-15 * std::max(1.0, std::abs(a))) break;
    }
    return 0.5 * (a + b);
}

} // namespace oracle
