#include "hconc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hconc::measure {

namespace {

std::vector<IntervalSet::Interval> normalize(std::vector<IntervalSet::Interval> v) {
    std::sort(v.begin(), v.end());
    std::vector<IntervalSet::Interval> out;
    for (const auto& iv : v) {
        if (!out.empty() && iv.first <= out.back().second) {
            out.back().second = std::max(out.back().second, iv.second);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

// (hi^p - lo^p), accurate when hi - lo << lo.
double power_difference(double lo, double hi, double p) {
    if (hi <= lo) return 0.0;
    if (lo == 0.0) return std::pow(hi, p);
    return std::pow(lo, p) * std::expm1(p * std::log1p((hi - lo) / lo));
}

} // namespace

IntervalSet::IntervalSet(std::vector<Interval> pieces) {
    for (const auto& [lo, hi] : pieces) {
        if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || !(hi > lo))
            throw std::invalid_argument("IntervalSet: each interval needs finite 0 <= lo < hi");
    }
    pieces_ = normalize(std::move(pieces));
}

bool IntervalSet::contains(double x) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](double v, const Interval& iv) { return v < iv.first; });
    if (it == pieces_.begin()) return false;
    --it;
    return x <= it->second;
}

IntervalSet IntervalSet::intersect(double lo, double hi) const {
    IntervalSet out;
    for (const auto& [a, b] : pieces_) {
        const double l = std::max(a, lo);
        const double h = std::min(b, hi);
        if (h > l) out.pieces_.emplace_back(l, h);
    }
    return out;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    IntervalSet out;
    std::size_t i = 0, j = 0;
    while (i < pieces_.size() && j < other.pieces_.size()) {
        const double l = std::max(pieces_[i].first, other.pieces_[j].first);
        const double h = std::min(pieces_[i].second, other.pieces_[j].second);
        if (h > l) out.pieces_.emplace_back(l, h);
        if (pieces_[i].second < other.pieces_[j].second) ++i;
        else ++j;
    }
    return out;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    std::vector<Interval> all = pieces_;
    all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
    IntervalSet out;
    out.pieces_ = normalize(std::move(all));
    return out;
}

IntervalSet IntervalSet::complement_within(double lo, double hi) const {
    IntervalSet out;
    double cur = lo;
    for (const auto& [a, b] : pieces_) {
        if (b <= cur) continue;
        if (a >= hi) break;
        if (a > cur) out.pieces_.emplace_back(cur, a);
        cur = std::max(cur, b);
    }
    if (hi > cur) out.pieces_.emplace_back(cur, hi);
    return out;
}

IntervalSet IntervalSet::scaled(double lambda) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("IntervalSet::scaled: lambda must be positive");
    IntervalSet out;
    for (const auto& [a, b] : pieces_) out.pieces_.emplace_back(lambda * a, lambda * b);
    return out;
}

IntervalSet IntervalSet::sqrt_preimage() const {
    IntervalSet out;
    for (const auto& [a, b] : pieces_) out.pieces_.emplace_back(std::sqrt(a), std::sqrt(b));
    return out;
}

double IntervalSet::length() const {
    double s = 0.0;
    for (const auto& [a, b] : pieces_) s += b - a;
    return s;
}

IntervalSet parse_set(std::istream& in) {
    std::vector<IntervalSet::Interval> pieces;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double lo, hi;
        if (!(ls >> lo)) {
            ls.clear();
            std::string rest;
            if (ls >> rest) throw std::invalid_argument("set file line " + std::to_string(number) + ": expected `lo hi`");
            continue;
        }
        std::string extra;
        if (!(ls >> hi) || (ls >> extra))
            throw std::invalid_argument("set file line " + std::to_string(number) + ": expected `lo hi`");
        if (!(hi > lo) || lo < 0.0 || !std::isfinite(hi))
            throw std::invalid_argument("set file line " + std::to_string(number) + ": need 0 <= lo < hi");
        pieces.emplace_back(lo, hi);
    }
    return IntervalSet(std::move(pieces));
}

IntervalSet load_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open set file: " + path);
    return parse_set(in);
}

void write_set(std::ostream& out, const IntervalSet& set) {
    const auto old = out.precision(17);
    for (const auto& [a, b] : set.intervals()) out << a << ' ' << b << '\n';
    out.precision(old);
}

void DensityParams::validate() const {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("density: gamma must lie in (0, 1]");
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("density: a must be positive");
}

void ThinnessParams::validate() const {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("thinness: eps must lie in (0, 1)");
}

double mu_interval(const Order& order, double lo, double hi) {
    const double a = order.alpha();
    return std::pow(pi, a + 1.0) / std::tgamma(a + 2.0) * power_difference(lo, hi, 2.0 * a + 2.0);
}

double mu_measure(const Order& order, const IntervalSet& set) {
    double s = 0.0;
    for (const auto& [lo, hi] : set.intervals()) s += mu_interval(order, lo, hi);
    return s;
}

double nu_interval(const Order& order, double lo, double hi) {
    const double a = order.alpha();
    return std::pow(pi, a + 1.0) / std::tgamma(a + 2.0) * power_difference(lo, hi, a + 1.0);
}

double nu_measure(const Order& order, const IntervalSet& set) {
    double s = 0.0;
    for (const auto& [lo, hi] : set.intervals()) s += nu_interval(order, lo, hi);
    return s;
}

namespace {

// mu(set n [lo, hi]) using a binary search for the first overlapping piece.
double window_mass(const Order& order, const IntervalSet& set, double lo, double hi) {
    const auto& v = set.intervals();
    auto it = std::lower_bound(v.begin(), v.end(), lo,
                               [](const IntervalSet::Interval& iv, double x) { return iv.second < x; });
    double s = 0.0;
    for (; it != v.end() && it->first < hi; ++it) {
        const double l = std::max(it->first, lo);
        const double h = std::min(it->second, hi);
        if (h > l) s += mu_interval(order, l, h);
    }
    return s;
}

} // namespace

DensityProfile density_profile(const Order& order, const IntervalSet& set, double a, double x_max, double step,
                               bool keep_samples) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("density_profile: a must be positive");
    if (!(x_max >= a)) throw std::invalid_argument("density_profile: x_max must be >= a");
    if (step <= 0.0) step = a / 100.0;
    DensityProfile p;
    p.step = step;
    p.argmin = a;
    const auto count = static_cast<std::size_t>(std::floor((x_max - a) / step * (1.0 + 1e-12)));
    for (std::size_t i = 0; i <= count; ++i) {
        const double x = a + i * step;
        const double ratio = window_mass(order, set, x - a, x + a) / mu_interval(order, x - a, x + a);
        if (keep_samples) p.samples.emplace_back(x, ratio);
        if (ratio < p.gamma_min) {
            p.gamma_min = ratio;
            p.argmin = x;
        }
    }
    return p;
}

bool is_thin(const Order& order, const IntervalSet& set, const ThinnessParams& params, double x_max, double step) {
    params.validate();
    if (!(step > 0.0)) throw std::invalid_argument("is_thin: step must be positive");
    const auto near = static_cast<std::size_t>(std::ceil(1.0 / step));
    for (std::size_t i = 0; i <= near; ++i) {
        const double x = std::min(1.0, i * step);
        if (window_mass(order, set, x, x + 1.0) > params.eps * mu_interval(order, x, x + 1.0)) return false;
    }
    const auto far = static_cast<std::size_t>(std::ceil((x_max - 1.0) / step));
    for (std::size_t i = 0; x_max > 1.0 && i <= far; ++i) {
        const double x = std::min(x_max, 1.0 + i * step);
        const double w = 1.0 / x;
        if (window_mass(order, set, x, x + w) > params.eps * mu_interval(order, x, x + w)) return false;
    }
    return true;
}

double thin_complement_constant(const Order& order) {
    const double p = 2.0 * order.alpha() + 2.0;
    return std::max(std::pow(2.0, p), (std::pow(3.0, p) - 1.0) / (std::pow(2.0, p) - 1.0));
}

quad::QuadratureRule cover_rule(const Order& order, const IntervalSet& set, double panel, int n) {
    if (!(panel > 0.0)) throw std::invalid_argument("cover_rule: panel width must be positive");
    std::vector<quad::QuadratureRule> parts;
    for (const auto& [lo, hi] : set.intervals()) {
        const auto count = static_cast<int>(std::ceil((hi - lo) / panel));
        const double h = (hi - lo) / count;
        for (int k = 0; k < count; ++k) {
            const double l = lo + k * h;
            const double r = (k == count - 1) ? hi : lo + (k + 1) * h;
            parts.push_back(l == 0.0 ? quad::mu_adapted_rule(order, l, r, n) : quad::build_rule(l, r, n));
        }
    }
    return quad::concatenate(parts);
}

} // namespace hconc::measure
