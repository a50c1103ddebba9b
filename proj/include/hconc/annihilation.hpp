#pragma once

#include <complex>
#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hconc/bessel.hpp"
#include "hconc/core.hpp"
#include "hconc/measure.hpp"
#include "hconc/paley_wiener.hpp"

/// Projection pairs E_S, F_Sigma, annihilation constants, the relative-density
/// bound with its empirical counterpart, good/bad windows and the Kovrijkine check.
namespace hconc::annihilation {

using measure::IntervalSet;

constexpr std::uint64_t default_seed = 0xC0FFEE;

struct ProjectionPair {
    Order order;
    IntervalSet S;
    IntervalSet Sigma;
    double x_max = 0.0;       // 0 selects sup S; must cover S otherwise
    double node_scale = 1.0;  // multiplies the per-interval node count
    void validate() const;
};

struct PairNorm {
    double value;        // ||F_Sigma E_S||
    int rows;            // nodes on S at the accepted level
    int cols;            // nodes on Sigma
    double change;       // |value - value at the previous level|
};

/// ||F_Sigma E_S|| as the largest singular value of B_{qi} = sqrt(w_q) j_alpha(2 pi x_i xi_q) sqrt(omega_i)
/// with mu-weighted Gauss rules on S (omega) and Sigma (w). Node counts double until two
/// levels agree to `tolerance`; NumericalError after `max_levels` levels.
PairNorm pair_norm_report(const ProjectionPair& pair, double tolerance = 1e-6, int max_levels = 6);
double pair_norm(const ProjectionPair& pair);

/// (1 - norm)^(-2); DomainError when norm >= 1.
double annihilation_constant(double norm);

/// Sum of the four pair norms of (S0, Sinf) x (Sigma0, Sigmainf).
double split_norm_bound(const Order& order, const IntervalSet& S0, const IntervalSet& Sinf,
                        const IntervalSet& Sigma0, const IntervalSet& Sigmainf);

struct LSParams {
    Order order;
    double gamma;
    double a;
    double b;
    void validate() const;  // DomainError for alpha < 0
};

/// The bound (2/3) (gamma / (300 9^alpha))^(160 sqrt3 pi ab / ln2 + alpha ln3/ln2 + 1).
/// `value` underflows to 0 for large ab; `log10` is always finite.
struct LSBound {
    double value;
    double log10;
    double exponent;
};
LSBound ls_bound(const LSParams& params);

struct ConcentrationMatrix {
    Eigen::MatrixXd G;
    double b;
    double x_max;
    int taper;
    int quadrature_nodes;
    int basis_size;   // N
    int retained;     // dimension of the trial space (size of G)
};

/// Matrix of f -> ||f||^2_{Omega n [0, x_max]} over the trial space of unit-norm f in the
/// N-dimensional tapered subspace of PW_alpha(b) (spectra (1 - xi^2/b^2)^taper P(xi^2),
/// deg P < N) that keep at least 1 - window_tail of their mass in [0, x_max]. The trial space
/// is spanned by the top eigenvectors of the same form on [0, x_max]; its spectrum lies in [0, 1].
/// x_max <= 0 selects 20 max(1, 1/b) + sup Omega.
ConcentrationMatrix concentration_matrix(const Order& order, double b, const IntervalSet& omega, double x_max = 0.0,
                                         int n = 128, int taper = 2, double window_tail = 1e-6);

/// Smallest eigenvalue of the concentration matrix.
double ls_empirical_min_ratio(const Order& order, double b, const IntervalSet& omega, double x_max = 0.0,
                              int n = 128, int taper = 2);

struct LSVerification {
    double gamma;        // certified by density_profile
    double gamma_argmin;
    LSBound bound;
    double empirical;
    bool pass;           // empirical > bound (compared in log10)
};

/// density_profile on [a, x_max_density], then ls_bound and ls_empirical_min_ratio with
/// x_max = x_max_density + a, the region the certified windows cover.
/// Requires alpha >= 0. gamma_override > 0 replaces the certified gamma when it is no larger.
LSVerification ls_verify(const Order& order, double a, double b, const IntervalSet& omega, double x_max_density,
                         int n = 128, double gamma_override = 0.0);

// ---------------------------------------------------------------------------
// Good and bad windows I_x = [(x-1)^2, (x+1)^2] for g(s) = f(sqrt s).

/// d^k g / ds^k at the points s, for 0 <= k <= k_max.
using DerivativeProvider = std::function<std::vector<double>(int k, std::span<const double> s)>;

/// Provider for g = f(sqrt s): d^k g / ds^k (s) = D^k f (sqrt s).
DerivativeProvider pw_provider(const pw::PWFunction& f);

struct Window {
    double x;
    double mass;                       // int_{I_x} |g|^2 s^alpha ds
    std::vector<double> derivative;    // int_{I_x} |d^k g|^2 s^(alpha+k) ds, k = 1..k_max
    bool bad;
    int bad_k;                         // first k that fails, 0 when good
};

/// Labels each x (>= 1) bad iff some 1 <= k <= k_max has
/// int_{I_x} |d^k g|^2 s^(alpha+k) >= (2 pi ab)^(2k) int_{I_x} |g|^2 s^alpha.
std::vector<Window> good_bad_partition(const Order& order, const DerivativeProvider& g, double ab,
                                       std::span<const double> x_list, int k_max);

/// Odd x = 1, 3, 5, ... <= x_max: the windows tile [0, (x_max+1)^2].
std::vector<double> tiling_x_list(double x_max);

struct Witness {
    bool found;
    double t;
    int grid_points;   // size of the last grid tried
    double worst;      // smallest over the grid of the largest violation ratio
};

/// Grid search on I_x (10^3 points, refined x10 at most twice) for t with
/// t^(alpha+k) |d^k g(t)|^2 <= (12 pi^2 ab^2)^k mass for all 0 <= k <= k_max.
Witness witness_point(const Order& order, const DerivativeProvider& g, double ab, const Window& window, int k_max);

// ---------------------------------------------------------------------------
// Kovrijkine's inequality.

using ComplexFunction = std::function<std::complex<double>(std::complex<double>)>;

class Polynomial {
public:
    explicit Polynomial(std::vector<double> coefficients);  // c_0 + c_1 s + ...
    std::span<const double> coefficients() const noexcept { return c_; }
    std::complex<double> operator()(std::complex<double> s) const;
    double operator()(double s) const;
    /// Exact int_lo^hi p(s)^2 ds.
    double integral_of_square(double lo, double hi) const;

private:
    std::vector<double> c_;
};

struct KovrijkineResult {
    double lhs;           // int_I |Phi|^2
    double rhs;           // may be +inf when log10_rhs is large
    double log10_rhs;
    double M;
    double m;
    double exponent;      // 2 ln(M/m) / ln 2 + 1
    bool degenerate;      // m == 0
    bool holds;           // lhs <= rhs, compared in log10
};

/// M is the maximum over the boundary of {z : dist(z, I) < 4|I|} (maximum modulus),
/// m the maximum of |Phi| on I, both on grids with local refinement.
KovrijkineResult kovrijkine_check(const ComplexFunction& phi, double lo, double hi, const IntervalSet& J);

// ---------------------------------------------------------------------------
// Necessity of relative density, in the frame b = 1/(2 pi).

struct NecessityRow {
    std::size_t n;
    double s;                 // s'_n
    double concentration;     // int_Omega |f_n|^2 dmu / ||f_n||^2
    bool violates;            // concentration < c
    double density;           // mu(Omega n [s-a, s+a]) / mu([s-a, s+a])
    double tail;              // tail_mass(n, a)
    bool consistent;          // violates || density >= gamma_implied
};

struct NecessityReport {
    double a;                 // max(5, s'_1, 4 C_alpha / c)
    double C_alpha;
    double gamma_implied;
    std::vector<NecessityRow> rows;
};

/// For every n with a <= s'_n and s'_n + a <= sup Omega: the window density around s'_n against the
/// gamma implied by the concentration hypothesis, and the concentration of f_n on Omega.
NecessityReport density_necessity_demo(const Order& order, const IntervalSet& omega, double c);

// ---------------------------------------------------------------------------
// Monte-Carlo check of the strong-pair inequality with Gaussian mixtures
// f = sum_j c_j exp(-pi p_j x^2), whose transforms are closed form.

struct StrongPairTrials {
    int trials;
    int failures;
    double worst_ratio;   // max ||f||^2 / (C (||f||^2_{S^c} + ||F f||^2_{Sigma^c}))
};

StrongPairTrials strong_pair_trials(const ProjectionPair& pair, double norm, int trials,
                                    std::uint64_t seed = default_seed);

} // namespace hconc::annihilation
