#include "hconc/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hconc::bessel {

namespace detail {

// Power series of j_nu in long double; used where the terms decrease
// monotonically or cancellation costs at most a few digits.
double series(double nu, double x) {
    const long double q = -static_cast<long double>(x) * x / 4.0L;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int n = 1; n < 1000; ++n) {
        term *= q / (static_cast<long double>(n) * (nu + n));
        sum += term;
        if (std::fabs(term) < 1e-21L * std::fabs(sum) && n > 2) break;
    }
    return static_cast<double>(sum);
}

// Miller backward recurrence on J_{nu0+n}, normalized with the Neumann sum
//   (x/2)^nu0 = Gamma(nu0+1) J_nu0 + sum_{k>=1} (nu0+2k) Gamma(nu0+k)/k! J_{nu0+2k}.
double miller(double nu, double x) {
    const double nu0 = nu - std::floor(nu + 0.5);
    const int target = static_cast<int>(std::lround(nu - nu0));
    const double reach = std::max(static_cast<double>(target), x);
    int top = static_cast<int>(reach + 16.0 + std::sqrt(40.0 * reach));
    top += top % 2;

    // G_k = Gamma(nu0+k)/k!, walked downwards from k = top/2.
    int k = top / 2;
    double g = std::exp(std::lgamma(nu0 + k) - std::lgamma(k + 1.0));

    double above = 0.0;
    double cur = 1e-280;
    double norm = 0.0;
    double captured = 0.0;
    for (int n = top; n >= 1; --n) {
        if (n == target) captured = cur;
        if (n % 2 == 0) {
            norm += (nu0 + n) * g * cur;
            if (k > 1) {
                g *= k / (nu0 + k - 1);
                --k;
            }
        }
        const double below = (2.0 * (nu0 + n) / x) * cur - above;
        above = cur;
        cur = below;
        if (std::fabs(cur) > 1e200) {
            cur *= 1e-200;
            above *= 1e-200;
            norm *= 1e-200;
            captured *= 1e-200;
        }
    }
    if (target == 0) captured = cur;
    norm += std::tgamma(nu0 + 1.0) * cur;
    if (captured == 0.0) return 0.0;

    const double log_mag = std::lgamma(nu + 1.0) + target * std::log(2.0 / x) +
                           std::log(std::fabs(captured)) - std::log(std::fabs(norm));
    const double sign = (captured < 0) != (norm < 0) ? -1.0 : 1.0;
    return sign * std::exp(log_mag);
}

namespace {

// Hankel asymptotic expansion of J_nu(x), |nu| <= 3/2, x >= 25.
double hankel_J(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 80; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        const double mag = std::fabs(term);
        if (mag > last) break;  // asymptotic series started to diverge
        last = mag;
        // sign pattern: Q gets +,-,+... on k = 1,3,5..; P gets -,+,... on k = 2,4,..
        const int r = k % 4;
        if (r == 1) q += term;
        else if (r == 2) p -= term;
        else if (r == 3) q -= term;
        else p += term;
        if (mag < 1e-18) break;
    }
    const double chi = x - (0.5 * nu + 0.25) * pi;
    return std::sqrt(2.0 / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double normalized_from_J(double nu, double x, double J) {
    return std::tgamma(nu + 1.0) * std::pow(2.0 / x, nu) * J;
}

} // namespace

// Asymptotic values at the two lowest orders sharing nu's fractional part, then
// upward recurrence j_{m+1} = 4m(m+1)/x^2 (j_m - j_{m-1}), stable while m < x.
double asymptotic_upward(double nu, double x) {
    const double nu0 = nu - std::floor(nu + 0.5);
    double lower = normalized_from_J(nu0, x, hankel_J(nu0, x));
    if (nu - nu0 < 0.5) return lower;
    double upper = normalized_from_J(nu0 + 1.0, x, hankel_J(nu0 + 1.0, x));
    const double inv_x2 = 1.0 / (x * x);
    for (double m = nu0 + 1.0; m < nu - 0.5; m += 1.0) {
        const double next = 4.0 * m * (m + 1.0) * inv_x2 * (upper - lower);
        lower = upper;
        upper = next;
    }
    return upper;
}

} // namespace detail

double eval_j(const Order& order, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("eval_j: argument must be finite");
    x = std::fabs(x);
    if (x == 0.0) return 1.0;
    const double nu = order.alpha();
    if (x <= detail::series_limit || x * x <= 4.0 * (nu + 1.0)) return detail::series(nu, x);
    if (x < detail::asymptotic_limit || nu > x + 1.0) return detail::miller(nu, x);
    return detail::asymptotic_upward(nu, x);
}

double eval_j_derivative(const Order& order, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("eval_j_derivative: argument must be finite");
    const double a = order.alpha();
    return -x / (2.0 * (a + 1.0)) * eval_j(order.shifted(1), x);
}

BesselBound certify_bound(const Order& order, double t_max) {
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw std::invalid_argument("certify_bound: t_max must be positive and finite");
    const double expo = order.alpha() + 0.5;
    const double step = std::min(0.01, t_max / 1000.0);
    const auto n = static_cast<std::size_t>(std::ceil(t_max / step));
    double best = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = std::min(t_max, i * step);
        best = std::max(best, std::fabs(eval_j(order, t)) * std::pow(1.0 + t, expo));
    }
    return {1.05 * best, t_max};
}

// ---------------------------------------------------------------------------

ZeroTable::ZeroTable(Order order, std::vector<double> zeros)
    : order_(order), zeros_(std::move(zeros)) {}

double ZeroTable::at(std::size_t n) const {
    if (n == 0) return 0.0;
    if (n > zeros_.size()) throw std::out_of_range("ZeroTable: index beyond computed zeros");
    return zeros_[n - 1];
}

std::string ZeroTable::check_invariants(double tolerance) const {
    const Order next = order_.shifted(1);
    double prev = 0.0;
    for (std::size_t i = 0; i < zeros_.size(); ++i) {
        const double s = zeros_[i];
        if (!(s > prev)) return "interlacing: zeros not strictly increasing at n=" + std::to_string(i + 1);
        // j_{alpha+1} has slope of order s^(-alpha-1/2) at its zeros; allow for
        // the rounding of s itself.
        const double slope = std::fabs(eval_j_derivative(next, s));
        const double allowed = tolerance * std::max(1.0, static_cast<double>(i + 1)) +
                               4.0 * std::numeric_limits<double>::epsilon() * s * slope;
        if (std::fabs(eval_j(next, s)) > allowed)
            return "root residual: |j_{alpha+1}(s'_n)| too large at n=" + std::to_string(i + 1);
        if (i > 0 && (s - prev < 0.5 * pi || s - prev > 2.5 * pi))
            return "interlacing: spacing of consecutive zeros far from pi at n=" + std::to_string(i + 1);
        prev = s;
    }
    return {};
}

namespace {

// McMahon expansion for the n-th zero of J_nu.
double mcmahon(double nu, std::size_t n) {
    const double mu = 4.0 * nu * nu;
    const double b = (n + 0.5 * nu - 0.25) * pi;
    const double e = 1.0 / (8.0 * b);
    const double e2 = e * e;
    const double t3 = 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / 3.0;
    const double t5 = 32.0 * (mu - 1.0) * ((83.0 * mu - 982.0) * mu + 3779.0) / 15.0;
    return b - e * ((mu - 1.0) + e2 * (t3 + e2 * t5));
}

double refine_root(const Order& next, double lo, double hi) {
    const Order next2 = next.shifted(1);
    const double c = -1.0 / (2.0 * (next.alpha() + 1.0));
    double flo = eval_j(next, lo);
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fx = eval_j(next, x);
        if (fx == 0.0) return x;
        if ((fx < 0) == (flo < 0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        const double d = c * x * eval_j(next2, x);
        double cand = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
        if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
        if (std::fabs(cand - x) <= 2.0 * std::numeric_limits<double>::epsilon() * x) return cand;
        x = cand;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * x) break;
    }
    return x;
}

} // namespace

ZeroTable zeros_of_j_prime(const Order& order, std::size_t count) {
    if (count < 1 || count > 1'000'000)
        throw std::invalid_argument("zeros_of_j_prime: count must lie in [1, 1e6]");
    const Order next = order.shifted(1);
    const double nu = next.alpha();
    std::vector<double> zeros;
    zeros.reserve(count);
    const double cube = std::cbrt(nu);
    for (std::size_t n = 1; n <= count; ++n) {
        double guess;
        if (n == 1) {
            guess = nu + 1.8557571 * cube + 1.033150 / cube - 0.00397 / nu;
        } else if (n == 2) {
            guess = zeros[0] + std::max(pi, mcmahon(nu, 2) - mcmahon(nu, 1));
        } else {
            guess = zeros[n - 2] + (zeros[n - 2] - zeros[n - 3]);
        }

        const double prev = n > 1 ? zeros[n - 2] : 0.0;
        double lo = std::max(guess - 0.5 * pi, prev + 1e-9 * std::max(1.0, prev));
        const double hi_limit = guess + 0.5 * pi;
        const double step = pi / 16.0;
        double flo = eval_j(next, lo);
        bool found = false;
        double a = lo, b = lo;
        while (a < hi_limit) {
            b = std::min(a + step, hi_limit);
            const double fb = eval_j(next, b);
            if ((fb < 0) != (flo < 0) || fb == 0.0) {
                found = true;
                break;
            }
            a = b;
            flo = fb;
        }
        if (!found) {
            std::ostringstream msg;
            msg << "zeros_of_j_prime: no sign change of j_{alpha+1} within guess +- pi/2 (alpha="
                << order.alpha() << ", n=" << n << ", guess=" << guess << ")";
            throw std::logic_error(msg.str());
        }
        zeros.push_back(refine_root(next, a, b));
    }
    return ZeroTable(order, std::move(zeros));
}

} // namespace hconc::bessel
