#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hconc/bessel.hpp"
#include "hconc/core.hpp"
#include "hconc/quadrature.hpp"

/// The Paley-Wiener model PW_alpha(b), the operators D = (1/2x) d/dx and
/// g = f(sqrt s), the Bernstein inequality and the extremal family f_n.
namespace hconc::pw {

/// (4 pi)^(alpha+1) Gamma(alpha+2): the height of the indicator spectrum on
/// [0, 1/(2pi)] whose inverse transform is j_{alpha+1}.
double theta(const Order& order);

/// pi^(alpha+1) / Gamma(alpha+1): density constant of nu_alpha.
double nu_constant(const Order& order);

/// Element of PW_alpha(b) with spectrum
///   F(xi) = (1 - xi^2/b^2)^m P(xi^2)  on [0, b],   F = 0 beyond b,
/// where P has degree < N and is stored through its values at the N nodes of the
/// Gauss-Jacobi rule in s = xi^2 for the weight (1 - s/b^2)^(2m) s^alpha. With
/// that rule the Plancherel norm is exact: ||f||^2 = sum_i w_hat_i coeffs_i^2.
/// m = 0 allows indicator-type spectra; m > 0 makes f decay faster in x.
class PWFunction {
public:
    /// coeffs[i] = F(xi_i) at the spectral nodes returned by spectral_nodes(order, b, m, N).
    PWFunction(Order order, double b, int taper, std::vector<double> coeffs);

    /// Build from P sampled at the nodes.
    template <class P>
    static PWFunction from_polynomial(Order order, double b, int taper, int n, P&& p) {
        const auto xi = spectral_nodes(order, b, taper, n);
        std::vector<double> c(n);
        for (int i = 0; i < n; ++i) {
            const double s = xi[i] * xi[i];
            c[i] = std::pow(1.0 - s / (b * b), taper) * p(s);
        }
        return PWFunction(order, b, taper, std::move(c));
    }

    /// Spectral nodes xi_i in (0, b), ascending.
    static std::vector<double> spectral_nodes(const Order& order, double b, int taper, int n);

    const Order& order() const noexcept { return order_; }
    double bandlimit() const noexcept { return b_; }
    int taper() const noexcept { return m_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    std::span<const double> nodes() const noexcept { return xi_; }
    /// mu_alpha-folded weights w_hat with ||f||^2 = sum w_hat_i coeffs_i^2.
    std::span<const double> hat_weights() const noexcept { return w_hat_; }
    /// Spectral rule on (0, b): nodes xi_i, Lebesgue weights w_hat_i / (dmu/dxi)(xi_i).
    quad::QuadratureRule spectral_rule() const;

    double norm() const;
    /// F(xi) for xi >= 0 (zero beyond b).
    double spectrum(double xi) const;
    /// P(s) by barycentric interpolation.
    double polynomial(double s) const;
    /// c f.
    PWFunction scaled(double c) const;

private:
    Order order_;
    double b_;
    int m_;
    std::vector<double> coeffs_;
    std::vector<double> xi_;
    std::vector<double> s_;
    std::vector<double> p_;       // P(s_i)
    std::vector<double> w_hat_;
    std::vector<double> w_plain_;  // nu-weights of the untapered rule: ||f||^2 = sum w_plain p_i^2
    std::vector<double> bary_;
};

/// Random element: P values uniform on [-1, 1] at n nodes, normalized to ||f|| = 1.
PWFunction random_pw(const Order& order, double b, int n, int taper, std::mt19937_64& rng);

/// Indicator spectrum of height theta(order) on [0, 1/(2 pi)]: the function j_{alpha+1}.
PWFunction extremal_f0_spectrum(const Order& order);

/// f(x) = int_0^b F(xi) j_alpha(2 pi x xi) dmu_alpha(xi).
double synthesize(const PWFunction& pw, double x);
/// Values at many points with one shared rule (sized for max |x|).
std::vector<double> synthesize(const PWFunction& pw, std::span<const double> xs);

/// D^k f(x) = (-pi)^k int_0^b F(xi) j_{alpha+k}(2 pi x xi) dmu_{alpha+k}(xi), 0 <= k <= 30.
double apply_Dk(const PWFunction& pw, int k, double x);
std::vector<double> apply_Dk(const PWFunction& pw, int k, std::span<const double> xs);

/// ||D^k f||_{L^2_{alpha+k}} from the spectrum: pi^k (int F^2 dmu_{alpha+k})^{1/2}.
double spectral_Dk_norm(const PWFunction& pw, int k);

/// sqrt(Gamma(alpha+1) / Gamma(alpha+k+1)) (pi^{3/2} b)^k ||f||.
double bernstein_rhs(const PWFunction& pw, int k);

struct BernsteinSides {
    double lhs;        // ||D^k f||_{L^2_{alpha+k}} by quadrature in x on [0, x_max]
    double rhs;
    double x_max;      // truncation point
    double tail;       // estimated mass beyond x_max (squared norm units)
};

/// lhs by composite quadrature of |D^k f|^2 dmu_{alpha+k} on [0, x_max]; x_max <= 0
/// selects 20 (1 + 1/b) scaled up until the estimated tail is <= 1e-10 of the mass.
BernsteinSides bernstein_sides(const PWFunction& pw, int k, double x_max = 0.0);

/// Squared-variable form: lhs = int |d^k g / ds^k|^2 s^{alpha+k} ds and
/// rhs = (pi b)^{2k} int |g|^2 s^alpha ds with g(s) = f(sqrt s), both by quadrature in s.
BernsteinSides squared_bernstein_sides(const PWFunction& pw, int k, double x_max = 0.0);

/// g = f(sqrt s) on the rule s = x^2 with weights 2 x w so that
/// int |g|^2 s^alpha ds = Gamma(alpha+1) / pi^(alpha+1) ||f||^2 is a rule identity.
quad::SampledFunction sqrt_substitute(const quad::SampledFunction& f);

/// f_0 = j_{alpha+1}; f_n(x) = j_alpha(s'_n) x^2 j_{alpha+1}(x) / (x^2 - s'_n^2) for n >= 1,
/// with a Taylor expansion within |x - s'_n| < 1e-4 s'_n. Needs n <= zeros.count().
double extremal_family(const bessel::ZeroTable& zeros, std::size_t n, double x);

/// ||f_n||^2 = theta (alpha+1) j_alpha(s'_n)^2 (for n = 0 this is theta).
double extremal_norm_sq(const bessel::ZeroTable& zeros, std::size_t n);

/// Spectrum of f_n: theta j_alpha(2 pi s'_n xi) on [0, 1/(2 pi)], represented with
/// `nodes` spectral nodes.
PWFunction extremal_spectrum(const bessel::ZeroTable& zeros, std::size_t n, int nodes = 0);

/// 1 - int_{[s'_n - a, s'_n + a]} |f_n|^2 dmu / ||f_n||^2.
double tail_mass(const bessel::ZeroTable& zeros, std::size_t n, double a);

/// f(z) = sum_n a_n z^{2n}; equivalently g(s) = sum_n a_n s^n.
class EntireEvenSeries {
public:
    explicit EntireEvenSeries(std::vector<double> coefficients) : a_(std::move(coefficients)) {}

    /// Taylor coefficients of a PW function, truncated once terms at radius |z| = radius
    /// fall below 1e-17 of the running maximum.
    static EntireEvenSeries from_pw(const PWFunction& pw, double radius);

    std::span<const double> coefficients() const noexcept { return a_; }
    std::size_t length() const noexcept { return a_.size(); }
    /// f(z).
    std::complex<double> operator()(std::complex<double> z) const;
    /// g(s) = f(sqrt s).
    std::complex<double> in_s(std::complex<double> s) const;

private:
    std::vector<double> a_;
};

} // namespace hconc::pw
