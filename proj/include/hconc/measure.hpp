#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hconc/core.hpp"
#include "hconc/quadrature.hpp"

namespace hconc::measure {

/// Finite union of disjoint bounded intervals in [0, inf), kept sorted with
/// touching or overlapping pieces merged.
class IntervalSet {
public:
    using Interval = std::pair<double, double>;

    IntervalSet() = default;
    /// Validates 0 <= lo < hi < inf for every piece, then normalizes.
    explicit IntervalSet(std::vector<Interval> pieces);

    const std::vector<Interval>& intervals() const noexcept { return pieces_; }
    bool empty() const noexcept { return pieces_.empty(); }
    std::size_t size() const noexcept { return pieces_.size(); }
    /// Right end of the last interval; 0 for the empty set.
    double sup() const noexcept { return pieces_.empty() ? 0.0 : pieces_.back().second; }
    bool contains(double x) const;

    IntervalSet intersect(double lo, double hi) const;
    IntervalSet intersect(const IntervalSet& other) const;
    IntervalSet unite(const IntervalSet& other) const;
    /// [lo, hi] minus this set.
    IntervalSet complement_within(double lo, double hi) const;
    /// lambda * set.
    IntervalSet scaled(double lambda) const;
    /// {x >= 0 : x^2 in set}.
    IntervalSet sqrt_preimage() const;
    /// Total Lebesgue length.
    double length() const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    std::vector<Interval> pieces_;
};

/// Reads `lo hi` per line; blank lines and `#` comments are skipped.
/// Throws std::invalid_argument with the line number on malformed input.
IntervalSet parse_set(std::istream& in);
IntervalSet load_set(const std::string& path);
/// Writes the file format read by parse_set.
void write_set(std::ostream& out, const IntervalSet& set);

struct DensityParams {
    double gamma;
    double a;
    void validate() const;
};

struct ThinnessParams {
    double eps;
    void validate() const;
};

/// mu_alpha([lo, hi]) = pi^(alpha+1) (hi^(2alpha+2) - lo^(2alpha+2)) / Gamma(alpha+2).
double mu_interval(const Order& order, double lo, double hi);
double mu_measure(const Order& order, const IntervalSet& set);
/// nu_alpha([lo, hi]) = pi^(alpha+1) (hi^(alpha+1) - lo^(alpha+1)) / Gamma(alpha+2).
double nu_interval(const Order& order, double lo, double hi);
double nu_measure(const Order& order, const IntervalSet& set);

struct DensityProfile {
    double gamma_min = 1.0;
    double argmin = 0.0;
    double step = 0.0;
    std::vector<std::pair<double, double>> samples;  // (x, ratio)
};

/// Minimum over x in {a, a+step, ..., <= x_max} of mu(set n [x-a, x+a]) / mu([x-a, x+a]).
/// step <= 0 selects a / 100. Throws std::invalid_argument when x_max < a.
DensityProfile density_profile(const Order& order, const IntervalSet& set, double a, double x_max,
                               double step = 0.0, bool keep_samples = false);

/// Window test for (eps, alpha)-thinness: unit windows [x, x+1] for sampled x in
/// [0, 1] and windows [x, x + 1/x] for sampled x in [1, x_max], grid step `step`.
bool is_thin(const Order& order, const IntervalSet& set, const ThinnessParams& params, double x_max,
             double step = 1e-3);

/// c(alpha) such that the complement of an (eps, alpha)-thin set is
/// ((1 - c eps), 1/2)-relatively dense: max(2^(2a+2), (3^(2a+2) - 1) / (2^(2a+2) - 1)).
double thin_complement_constant(const Order& order);

/// Lebesgue rule on the set: panels of width <= panel, n nodes each, the panel
/// touching the origin adapted to the mu_alpha weight.
quad::QuadratureRule cover_rule(const Order& order, const IntervalSet& set, double panel, int n);

} // namespace hconc::measure
