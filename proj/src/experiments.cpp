#include "hconc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "hconc/bessel.hpp"
#include "hconc/measure.hpp"
#include "hconc/paley_wiener.hpp"
#include "hconc/quadrature.hpp"
#include "hconc/translation.hpp"

namespace hconc::experiments {

namespace fs = std::filesystem;
using measure::IntervalSet;

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double x = 0.0;
    auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(x))
        throw UsageError("config: " + key + " expects a number, got '" + v + "'");
    return x;
}

long long to_integer(const std::string& key, const std::string& v) {
    long long x = 0;
    auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        throw UsageError("config: " + key + " expects an integer, got '" + v + "'");
    return x;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    if (out.empty()) throw UsageError("config: " + key + " is empty");
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
    return s;
}

std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

} // namespace

const std::vector<std::string>& recipe_names() {
    static const std::vector<std::string> names{"bernstein", "plancherel", "translation", "extremal",
                                                "pair-norm", "ls-verify",  "kovrijkine",  "good-bad"};
    return names;
}

void ExperimentConfig::validate() const {
    const auto& names = recipe_names();
    if (std::find(names.begin(), names.end(), recipe) == names.end())
        throw UsageError("unknown recipe '" + recipe + "'");
    if (name.empty() || name.find_first_of("/\\") != std::string::npos)
        throw UsageError("config: name must be a plain file stem");
    for (double x : alpha)
        if (!(x >= -0.5)) throw UsageError("config: alpha must be >= -1/2");
    for (double x : b)
        if (!(x > 0.0)) throw UsageError("config: b must be positive");
    if (!(a > 0.0)) throw UsageError("config: a must be positive");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw UsageError("config: gamma must lie in [0, 1]");
    if (xmax < 0.0) throw UsageError("config: xmax must be >= 0");
    if (nodes < 1 || nodes > 4096) throw UsageError("config: nodes must lie in [1, 4096]");
    if (trials < 0) throw UsageError("config: trials must be >= 0");
    if (k_max < 0 || k_max > 30) throw UsageError("config: k_max must lie in [0, 30]");
    if (n_max < 1 || n_max > 100000) throw UsageError("config: n_max must lie in [1, 1e5]");
    auto need = [](const fs::path& p, const char* key) {
        if (p.empty()) throw UsageError(std::string("config: ") + key + " is required for this recipe");
        if (!fs::exists(p)) throw UsageError(std::string("config: ") + key + " not found: " + p.string());
    };
    if (recipe == "pair-norm") {
        need(s_file, "s_file");
        need(sigma_file, "sigma_file");
    }
    if (recipe == "ls-verify") need(omega_file, "omega_file");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::provenance() const {
    return {{"name", name},
            {"recipe", recipe},
            {"alpha", join(alpha)},
            {"a", format_number(a)},
            {"b", join(b)},
            {"gamma", format_number(gamma)},
            {"omega_file", omega_file.filename().string()},
            {"s_file", s_file.filename().string()},
            {"sigma_file", sigma_file.filename().string()},
            {"xmax", format_number(xmax)},
            {"nodes", std::to_string(nodes)},
            {"seed", std::to_string(seed)},
            {"trials", std::to_string(trials)},
            {"k_max", std::to_string(k_max)},
            {"n_max", std::to_string(n_max)}};
}

ExperimentConfig parse_config(std::istream& in, const fs::path& base_dir) {
    ExperimentConfig c;
    std::map<std::string, std::function<void(const std::string&)>> setters{
        {"name", [&](const std::string& v) { c.name = v; }},
        {"recipe", [&](const std::string& v) { c.recipe = v; }},
        {"alpha", [&](const std::string& v) { c.alpha = to_list("alpha", v); }},
        {"a", [&](const std::string& v) { c.a = to_double("a", v); }},
        {"b", [&](const std::string& v) { c.b = to_list("b", v); }},
        {"gamma", [&](const std::string& v) { c.gamma = to_double("gamma", v); }},
        {"omega_file", [&](const std::string& v) { c.omega_file = (base_dir / v).lexically_normal(); }},
        {"s_file", [&](const std::string& v) { c.s_file = (base_dir / v).lexically_normal(); }},
        {"sigma_file", [&](const std::string& v) { c.sigma_file = (base_dir / v).lexically_normal(); }},
        {"xmax", [&](const std::string& v) { c.xmax = to_double("xmax", v); }},
        {"nodes", [&](const std::string& v) { c.nodes = static_cast<int>(to_integer("nodes", v)); }},
        {"seed", [&](const std::string& v) { c.seed = static_cast<std::uint64_t>(to_integer("seed", v)); }},
        {"trials", [&](const std::string& v) { c.trials = static_cast<int>(to_integer("trials", v)); }},
        {"k_max", [&](const std::string& v) { c.k_max = static_cast<int>(to_integer("k_max", v)); }},
        {"n_max", [&](const std::string& v) { c.n_max = static_cast<int>(to_integer("n_max", v)); }},
        {"output_dir", [&](const std::string& v) { c.output_dir = (base_dir / v).lexically_normal(); }},
    };
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto it = setters.find(key);
        if (it == setters.end()) throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (value.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty value for " + key);
        it->second(value);
    }
    if (c.recipe.empty()) throw UsageError("config: recipe is required");
    c.validate();
    return c;
}

ExperimentConfig load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open config " + file.string());
    return parse_config(in, file.parent_path().empty() ? fs::path(".") : file.parent_path());
}

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::abs: return "abs";
        case Relation::rel: return "rel";
        case Relation::le: return "le";
        case Relation::ge: return "ge";
        case Relation::gt: return "gt";
        case Relation::lt: return "lt";
    }
    return "?";
}

namespace {

bool evaluate(double m, double r, double tol, Relation rel) {
    switch (rel) {
        case Relation::abs: return std::abs(m - r) <= tol;
        case Relation::rel: return std::abs(m - r) <= tol * std::abs(r);
        case Relation::le: return m <= r * (1.0 + tol);
        case Relation::ge: return m >= r * (1.0 - tol);
        case Relation::gt: return m > r;
        case Relation::lt: return m < r;
    }
    return false;
}

} // namespace

ReportRow make_row(std::string experiment, int trial, std::string check, std::string params, double measured,
                   double reference, double tolerance, Relation relation, std::string note) {
    ReportRow r{std::move(experiment), trial, std::move(check), std::move(params), measured, reference, tolerance,
                relation, false, std::move(note)};
    r.pass = evaluate(measured, reference, tolerance, relation);
    return r;
}

bool consistent(const ReportRow& row) {
    return row.pass == evaluate(row.measured, row.reference, row.tolerance, row.relation);
}

namespace {

struct Trial {
    const ExperimentConfig& config;
    int index;
    Order order;
    double b;
    std::mt19937_64 rng;
    std::string params;

    Trial(const ExperimentConfig& c, int t)
        : config(c),
          index(t),
          order(c.alpha[t % c.alpha.size()]),
          b(c.b[(t / c.alpha.size()) % c.b.size()]),
          rng(c.seed + static_cast<std::uint64_t>(t)),
          params("alpha=" + format_number(order.alpha()) + ";b=" + format_number(b)) {}

    // index of this trial within the (alpha, b) cycle
    int cycle() const { return index / static_cast<int>(config.alpha.size() * config.b.size()); }

    ReportRow row(std::string check, double m, double r, double tol, Relation rel, std::string note = {}) const {
        return make_row(config.name, index, std::move(check), params, m, r, tol, rel, std::move(note));
    }
};

std::vector<ReportRow> bernstein_trial(Trial& t) {
    const int k = t.cycle() % (t.config.k_max + 1);
    t.params += ";k=" + std::to_string(k);
    const auto f = pw::random_pw(t.order, t.b, 8, 6, t.rng);
    const auto s = pw::bernstein_sides(f, k);
    std::vector<ReportRow> rows;
    if (k == 0)
        rows.push_back(t.row("equality", s.lhs, s.rhs, 1e-9, Relation::rel));
    else
        rows.push_back(t.row("inequality", s.lhs, s.rhs, 1e-6, Relation::le));
    rows.push_back(t.row("spectral route", s.lhs, pw::spectral_Dk_norm(f, k), 1e-8, Relation::rel,
                         "x_max=" + format_number(s.x_max)));
    return rows;
}

std::vector<ReportRow> plancherel_trial(Trial& t) {
    const Order& o = t.order;
    const double b = t.b;
    const auto f = pw::random_pw(o, b, 8, 8, t.rng);
    // spatial rule on [0, X]: panels of width <= min(1, 1/b), the first adapted to mu_alpha
    const double X = t.config.xmax > 0 ? t.config.xmax : 20.0 * (1.0 + 1.0 / b);
    const int panels = static_cast<int>(std::ceil(X * std::max(1.0, b)));
    const double h = X / panels;
    std::vector<quad::QuadratureRule> parts{quad::mu_adapted_rule(o, 0.0, h, 24)};
    for (int p = 1; p < panels; ++p) parts.push_back(quad::build_rule(p * h, (p + 1) * h, 24));
    const auto xr = quad::concatenate(parts);
    const quad::SampledFunction fs{xr, pw::synthesize(f, xr.nodes)};
    const double nf = quad::l2_norm(o, fs);

    // transform at the spectral nodes: Plancherel through the exact spectral rule
    const auto Ff = quad::forward(o, fs, f.nodes());
    double nF = 0.0;
    for (std::size_t i = 0; i < Ff.size(); ++i) nF += f.hat_weights()[i] * Ff[i] * Ff[i];
    nF = std::sqrt(nF);

    // round trip on a mu-adapted spectral rule
    const auto yr = quad::mu_adapted_rule(o, 0.0, b, quad::default_nodes(X, b));
    const quad::SampledFunction Fs{yr, quad::forward(o, fs, yr.nodes)};
    std::vector<double> xs;
    for (int i = 0; i < 64; ++i) xs.push_back(X * (i + 0.5) / 64.0);
    const auto back = quad::inverse(o, Fs, xs);
    const auto exact = pw::synthesize(f, xs);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        err = std::max(err, std::abs(back[i] - exact[i]));
        scale = std::max(scale, std::abs(exact[i]));
    }
    return {t.row("isometry", nF / nf, 1.0, 1e-7, Relation::abs, "X=" + format_number(X)),
            t.row("round trip", err / scale, 0.0, 1e-8, Relation::abs)};
}

std::vector<ReportRow> translation_trial(Trial& t) {
    const Order& o = t.order;
    const double a = o.alpha();
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double x = 0.1 + 2.9 * U(t.rng), y = 0.1 + 2.9 * U(t.rng);
    const double xi = U(t.rng), p = 0.5 + 2.0 * U(t.rng);
    t.params += ";x=" + format_number(x) + ";y=" + format_number(y);
    const translation::TranslationPlan plan(o);
    std::vector<ReportRow> rows;

    auto jxi = [&](double s) { return bessel::eval_j(o, 2 * pi * xi * s); };
    rows.push_back(t.row("product formula", plan.translate(x, jxi, y), jxi(x) * jxi(y), 1e-10, Relation::abs));
    rows.push_back(t.row("mass", plan.translate(x, [](double) { return 1.0; }, y), 1.0, 1e-12, Relation::abs));

    auto g = [p](double s) { return std::exp(-pi * p * s * s); };
    rows.push_back(t.row("symmetry", plan.translate(x, g, y), plan.translate(y, g, x), 1e-10, Relation::abs));

    const auto rule = quad::mu_adapted_rule(o, 0.0, x + 8.0, 160);
    const auto Tg = quad::sample(rule, [&](double s) { return plan.translate(x, g, s); });
    const auto gs = quad::sample(rule, g);
    const auto w = quad::mu_weights(o, rule);
    double l1T = 0, l1g = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        l1T += w[i] * std::abs(Tg.values[i]);
        l1g += w[i] * std::abs(gs.values[i]);
    }
    rows.push_back(t.row("contraction L1", l1T, l1g, 1e-8, Relation::le));
    rows.push_back(t.row("contraction L2", quad::l2_norm(o, Tg), quad::l2_norm(o, gs), 1e-8, Relation::le));

    // F(T_x g)(eta) = j(2 pi x eta) F g(eta) with F g(eta) = p^{-(a+1)} exp(-pi eta^2 / p)
    const double eta = 0.1 + 1.4 * U(t.rng);
    const double FT = quad::forward(o, Tg, std::vector<double>{eta})[0];
    const double Fg = std::pow(p, -(a + 1)) * std::exp(-pi * eta * eta / p);
    const double expect = bessel::eval_j(o, 2 * pi * x * eta) * Fg;
    rows.push_back(t.row("intertwining", FT, expect, 1e-6 * std::max(std::abs(expect), 1e-3 * Fg), Relation::abs,
                         "eta=" + format_number(eta)));
    return rows;
}

std::vector<ReportRow> extremal_trial(Trial& t) {
    const int n_max = t.config.n_max;
    const std::size_t n = 1 + static_cast<std::size_t>(t.cycle() % n_max);
    t.params += ";n=" + std::to_string(n);
    const auto zeros = bessel::zeros_of_j_prime(t.order, n_max + 2);
    const std::size_t count = zeros.count();

    double sup = std::abs(pw::extremal_family(zeros, n, zeros.at(n)));
    const double end = zeros.at(count);
    for (int i = 0; i <= 4000; ++i) sup = std::max(sup, std::abs(pw::extremal_family(zeros, n, end * i / 4000.0)));
    double worst = 0.0;
    for (std::size_t k = 1; k <= count; ++k)
        if (k != n) worst = std::max(worst, std::abs(pw::extremal_family(zeros, n, zeros.at(k))));

    const double peak = pw::extremal_family(zeros, n, zeros.at(n));
    const double jn = bessel::eval_j(t.order, zeros.at(n));
    const double norm = pw::extremal_spectrum(zeros, n).norm();
    return {t.row("vanishes at other zeros", worst / sup, 0.0, 1e-8, Relation::abs),
            t.row("peak value", peak, (t.order.alpha() + 1) * jn * jn, 1e-6, Relation::rel),
            t.row("peak vs norm", peak, norm * norm / pw::theta(t.order), 1e-6, Relation::rel)};
}

std::vector<ReportRow> kovrijkine_trial(Trial& t) {
    std::normal_distribution<double> N(0.0, 1.0);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> c(6);
    for (double& x : c) x = N(t.rng);
    const annihilation::Polynomial p(c);
    const double lo = 2.0 * U(t.rng), len = 0.5 + 2.5 * U(t.rng);
    std::vector<IntervalSet::Interval> pieces;
    const int count = 1 + static_cast<int>(3 * U(t.rng));
    for (int i = 0; i < count; ++i) {
        const double w = len * (0.05 + 0.25 * U(t.rng));
        const double s = lo + (len - w) * U(t.rng);
        pieces.push_back({s, s + w});
    }
    const IntervalSet J(pieces);
    t.params += ";I=[" + format_number(lo) + ";" + format_number(lo + len) + "];|J|=" + format_number(J.length());
    const auto r = annihilation::kovrijkine_check([&](std::complex<double> z) { return p(z); }, lo, lo + len, J);
    return {t.row("log10 lhs - log10 rhs", std::log10(r.lhs) - r.log10_rhs, 0.0, 0.0, Relation::le,
                  "exponent=" + format_number(r.exponent))};
}

std::vector<ReportRow> good_bad_trial(Trial& t) {
    const double ab = t.config.a * t.b;
    t.params += ";ab=" + format_number(ab);
    const Order& o = t.order;
    const auto f = pw::random_pw(o, ab, 8, 6, t.rng);
    const auto g = annihilation::pw_provider(f);
    const auto xs = annihilation::tiling_x_list(20.0 * (1.0 + 1.0 / ab));
    const auto wins = annihilation::good_bad_partition(o, g, ab, xs, t.config.k_max);
    const double total = std::tgamma(o.alpha() + 1) / std::pow(pi, o.alpha() + 1) * f.norm() * f.norm();
    double covered = 0, bad = 0;
    int good = 0, found = 0;
    for (const auto& w : wins) {
        covered += w.mass;
        if (w.bad) {
            bad += w.mass;
        } else {
            ++good;
            if (annihilation::witness_point(o, g, ab, w, t.config.k_max).found) ++found;
        }
    }
    const double fraction = (bad + std::max(0.0, total - covered)) / total;
    return {t.row("bad mass fraction", fraction, 1.0 / 3.0 + 0.01, 0.0, Relation::le),
            t.row("witnesses found", found, good, 0.0, Relation::ge, "windows=" + std::to_string(wins.size()))};
}

std::vector<ReportRow> pair_norm_recipe(const ExperimentConfig& c) {
    annihilation::ProjectionPair pair{Order(c.alpha.front()), measure::load_set(c.s_file.string()),
                                      measure::load_set(c.sigma_file.string()), c.xmax, 1.0};
    const std::string params = "alpha=" + format_number(c.alpha.front());
    const auto rep = annihilation::pair_norm_report(pair);
    std::vector<ReportRow> rows;
    rows.push_back(make_row(c.name, 0, "norm below one", params, rep.value, 1.0, 0.0, Relation::lt,
                            "rows=" + std::to_string(rep.rows) + ";cols=" + std::to_string(rep.cols)));
    rows.push_back(make_row(c.name, 0, "norm nonnegative", params, rep.value, 0.0, 0.0, Relation::ge));
    rows.push_back(make_row(c.name, 0, "node doubling change", params, rep.change, 0.0, 1e-5, Relation::abs));
    if (rep.value < 1.0) {
        const auto mc = annihilation::strong_pair_trials(pair, rep.value, c.trials, c.seed);
        rows.push_back(make_row(c.name, 0, "strong pair failures", params, mc.failures, 0.0, 0.0, Relation::abs,
                                "trials=" + std::to_string(mc.trials)));
        rows.push_back(make_row(c.name, 0, "strong pair worst ratio", params, mc.worst_ratio, 1.0, 0.0, Relation::le,
                                "C=" + format_number(annihilation::annihilation_constant(rep.value))));
    }
    return rows;
}

std::vector<ReportRow> ls_verify_recipe(const ExperimentConfig& c) {
    const Order o(c.alpha.front());
    const auto omega = measure::load_set(c.omega_file.string());
    const double xmax = c.xmax > 0 ? c.xmax : omega.sup() - c.a;
    const auto v = annihilation::ls_verify(o, c.a, c.b.front(), omega, xmax, c.nodes, c.gamma);
    const std::string params = "alpha=" + format_number(o.alpha()) + ";a=" + format_number(c.a) +
                               ";b=" + format_number(c.b.front()) + ";gamma=" + format_number(v.gamma);
    return {make_row(c.name, 0, "log10 empirical > log10 bound", params, std::log10(v.empirical), v.bound.log10, 0.0,
                     Relation::gt,
                     "empirical=" + format_number(v.empirical) + ";gamma_argmin=" + format_number(v.gamma_argmin))};
}

using TrialFn = std::vector<ReportRow> (*)(Trial&);

std::vector<ReportRow> run_trials(const ExperimentConfig& c, TrialFn fn, int jobs) {
    const int n = c.trials;
    std::vector<std::vector<ReportRow>> out(n);
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex m;
    auto worker = [&] {
        for (int t; (t = next++) < n;) {
            try {
                Trial trial(c, t);
                out[t] = fn(trial);
            } catch (...) {
                std::lock_guard<std::mutex> lock(m);
                if (!error) error = std::current_exception();
                next = n;
            }
        }
    };
    const int threads = std::clamp(jobs, 1, std::max(1, n));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    std::vector<ReportRow> rows;
    for (auto& v : out) rows.insert(rows.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    return rows;
}

} // namespace

std::vector<ReportRow> run(const ExperimentConfig& config, int jobs) {
    config.validate();
    if (config.trials == 0) return {};
    const std::string& r = config.recipe;
    try {
        if (r == "bernstein") return run_trials(config, bernstein_trial, jobs);
        if (r == "plancherel") return run_trials(config, plancherel_trial, jobs);
        if (r == "translation") return run_trials(config, translation_trial, jobs);
        if (r == "extremal") return run_trials(config, extremal_trial, jobs);
        if (r == "kovrijkine") return run_trials(config, kovrijkine_trial, jobs);
        if (r == "good-bad") return run_trials(config, good_bad_trial, jobs);
        if (r == "pair-norm") return pair_norm_recipe(config);
        if (r == "ls-verify") return ls_verify_recipe(config);
    } catch (const NumericalError& e) {
        throw NumericalError("recipe " + r + ": " + e.what(), e.residual());
    } catch (const DomainError& e) {
        throw DomainError("recipe " + r + ": " + e.what());
    }
    throw UsageError("unknown recipe '" + r + "'");
}

void write_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<ReportRow>& rows) {
    out << "# hconc experiment report\n";
    for (const auto& [k, v] : config.provenance()) out << "# " << k << '=' << v << '\n';
    out << "experiment,trial,check,params,measured,reference,tolerance,relation,pass,note\n";
    for (const auto& r : rows) {
        out << sanitize(r.experiment) << ',' << r.trial << ',' << sanitize(r.check) << ',' << sanitize(r.params) << ','
            << format_number(r.measured) << ',' << format_number(r.reference) << ',' << format_number(r.tolerance)
            << ',' << relation_name(r.relation) << ',' << (r.pass ? 1 : 0) << ',' << sanitize(r.note) << '\n';
    }
}

fs::path run_to_file(const ExperimentConfig& config, std::vector<ReportRow>& rows, int jobs) {
    rows = run(config, jobs);
    fs::create_directories(config.output_dir);
    const fs::path path = config.output_dir / (config.name + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path.string());
    write_csv(out, config, rows);
    return path;
}

} // namespace hconc::experiments
