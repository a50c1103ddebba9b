#include "hconc/checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "hconc/annihilation.hpp"
#include "hconc/bessel.hpp"
#include "hconc/experiments.hpp"
#include "hconc/quadrature.hpp"

namespace hconc::checks {

namespace ex = experiments;
using measure::IntervalSet;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Collects failures and a short summary of the worst margins.
struct Tally {
    int checked = 0;
    std::vector<std::string> failures;
    std::map<std::string, double> worst;   // largest |measured - reference| per check name

    void add(const ex::ReportRow& r) {
        ++checked;
        if (!r.pass)
            failures.push_back(r.experiment + "#" + std::to_string(r.trial) + " " + r.check + " (" + r.params +
                               "): measured " + num(r.measured) + " vs " + num(r.reference));
        if (r.relation == ex::Relation::abs || r.relation == ex::Relation::rel) {
            auto& w = worst[r.check];
            w = std::max(w, std::abs(r.measured - r.reference));
        }
    }
    void add(const std::vector<ex::ReportRow>& rows) {
        for (const auto& r : rows) add(r);
    }
    void expect(bool ok, const std::string& what) {
        ++checked;
        if (!ok) failures.push_back(what);
    }
    std::string detail() const {
        std::ostringstream s;
        s << checked << " checks";
        if (!failures.empty()) {
            s << ", " << failures.size() << " failed: " << failures.front();
            if (failures.size() > 1) s << " ...";
        } else {
            for (const auto& [k, v] : worst) s << "; max |m-r| " << k << " " << num(v);
        }
        return s.str();
    }
};

int scaled(const Options& o, int full, int quick) { return o.scale == Scale::full ? full : quick; }

ex::ExperimentConfig config(const std::string& recipe, std::vector<double> alpha, std::vector<double> b, int trials) {
    ex::ExperimentConfig c;
    c.name = "selftest-" + recipe;
    c.recipe = recipe;
    c.alpha = std::move(alpha);
    c.b = std::move(b);
    c.trials = trials;
    return c;
}

IntervalSet periodic(double period, double width, double end) {
    std::vector<IntervalSet::Interval> v;
    for (int k = 0; period * k + width <= end + 1e-12; ++k) v.push_back({period * k, period * k + width});
    return IntervalSet(v);
}

void criterion1(Tally& t, const Options&) {
    const Order half(0.5), mhalf(-0.5);
    double e1 = 0, e2 = 0;
    for (int i = 0; i <= 100000; ++i) {
        const double x = i * 1e-3;
        const double s = x == 0.0 ? 1.0 : std::sin(x) / x;
        e1 = std::max(e1, std::abs(bessel::eval_j(half, x) - s));
        e2 = std::max(e2, std::abs(bessel::eval_j(mhalf, x) - std::cos(x)));
    }
    t.add(ex::make_row("closed forms", 0, "j_{1/2} = sin x / x", "x in [0;100]", e1, 0.0, 1e-10, ex::Relation::abs));
    t.add(ex::make_row("closed forms", 0, "j_{-1/2} = cos x", "x in [0;100]", e2, 0.0, 1e-10, ex::Relation::abs));
}

void criterion2(Tally& t, const Options&) {
    for (double a : {-0.5, 0.0, 0.5, 1.0, 2.3}) {
        const Order o(a), o1 = o.shifted(1);
        const std::string p = "alpha=" + num(a);
        auto rel = [&](const std::string& name, double m, double r) {
            t.add(ex::make_row("identities", 0, name, p, m, r, 1e-8, ex::Relation::rel));
        };
        // derivative identity against a five-point stencil
        for (double x : {0.5, 0.7, 1.0, 2.0, 3.0}) {
            const double h = 1e-3;
            const double fd = (bessel::eval_j(o, x - 2 * h) - 8 * bessel::eval_j(o, x - h) + 8 * bessel::eval_j(o, x + h) -
                               bessel::eval_j(o, x + 2 * h)) / (12 * h);
            rel("derivative", bessel::eval_j_derivative(o, x), fd);
        }
        const double pw = 2 * a + 1;
        for (double s : {0.5, 1.0, 3.0}) {
            // int_0^s h(t) t^(2a+1) dt from the mu-adapted rule
            const auto rule = quad::mu_adapted_rule(o, 0.0, s, 48);
            const auto w = quad::mu_weights(o, rule);
            auto integral = [&](auto&& h) {
                double sum = 0.0;
                for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * h(rule.nodes[i]);
                return sum / o.mu_constant();
            };
            for (double x : {0.7, 2.0}) {
                rel("primitive", integral([&](double u) { return bessel::eval_j(o, u * x); }),
                    std::pow(s, 2 * a + 2) / (2 * a + 2) * bessel::eval_j(o1, s * x));
            }
            const double j = bessel::eval_j(o, s), jd = bessel::eval_j_derivative(o, s);
            rel("square", integral([&](double u) { const double v = bessel::eval_j(o, u); return v * v; }),
                std::pow(s, 2 * a + 2) / 2 * (jd * jd + 2 * a / s * jd * j + j * j));
            const double u = 0.7, v = 2.0;
            rel("cross", integral([&](double r) { return bessel::eval_j(o, u * r) * bessel::eval_j(o, v * r); }),
                std::pow(s, pw) / (u * u - v * v) *
                    (v * bessel::eval_j_derivative(o, v * s) * bessel::eval_j(o, u * s) -
                     u * bessel::eval_j_derivative(o, u * s) * bessel::eval_j(o, v * s)));
        }
    }
}

void criterion3(Tally& t, const Options& o) {
    const int per = scaled(o, 100, 10);
    t.add(ex::run(config("plancherel", {-0.5, 0.0, 0.5, 1.0}, {1.0}, 4 * per), o.jobs));
}

void criterion4(Tally& t, const Options& o) {
    t.add(ex::run(config("translation", {-0.5, 0.0, 0.5, 1.0}, {1.0}, scaled(o, 50, 12)), o.jobs));
}

void criterion5(Tally& t, const Options& o) {
    auto c = config("bernstein", {-0.5, 0.0, 0.5, 1.0}, {0.5, 1.0, 2.0}, scaled(o, 500, 60));
    c.k_max = 5;
    t.add(ex::run(c, o.jobs));
}

void criterion6(Tally& t, const Options& o) {
    auto c = config("extremal", {0.0, 1.0}, {1.0}, scaled(o, 40, 10));
    c.n_max = 20;
    t.add(ex::run(c, o.jobs));
}

void criterion7(Tally& t, const Options& o) {
    struct Shipped {
        std::string name;
        double alpha, a, b, gamma;
        IntervalSet omega;
        double x_max;
    };
    std::vector<Shipped> configs{
        {"periodic alpha=0", 0.0, 1.0, 1.0, 0.0, periodic(2.0, 1.0, 60.0), 59.0},
        {"periodic alpha=0.5", 0.5, 1.0, 1.0, 0.0, periodic(2.0, 1.0, 60.0), 59.0},
        {"sparse gamma=0.25", 0.0, 4.0, 0.25, 0.25, periodic(4.0, 1.5, 60.0), 56.0},
    };
    if (o.scale == Scale::quick) configs.resize(1);
    for (const auto& s : configs) {
        const auto v = annihilation::ls_verify(Order(s.alpha), s.a, s.b, s.omega, s.x_max, 128, s.gamma);
        t.add(ex::make_row("ls-verify", 0, "log10 empirical > log10 bound", s.name, std::log10(v.empirical),
                           v.bound.log10, 0.0, ex::Relation::gt));
        if (s.gamma > 0) t.expect(v.gamma == s.gamma, s.name + ": certified gamma below " + num(s.gamma));
    }
    // gamma = 1, alpha = 0, ab = ln2 / (160 sqrt3 pi): exponent 2, value (2/3) 300^-2
    const double ab = std::log(2.0) / (160.0 * std::sqrt(3.0) * pi);
    const auto bound = annihilation::ls_bound({Order(0.0), 1.0, 1.0, ab});
    t.add(ex::make_row("ls-bound", 0, "exact constant", "alpha=0;gamma=1", bound.value, 2.0 / 3.0 / 90000.0, 1e-12,
                       ex::Relation::rel));
}

void criterion8(Tally& t, const Options& o) {
    auto c = config("good-bad", {0.0, 0.5}, {0.05, 0.1, 0.3}, 3 * scaled(o, 50, 2));
    c.a = 1.0;
    c.k_max = 8;
    t.add(ex::run(c, o.jobs));
}

void criterion9(Tally& t, const Options& o) {
    t.add(ex::run(config("kovrijkine", {0.0}, {1.0}, 50), o.jobs));
    // constant Phi: M = m, exponent 1, both sides closed form
    for (double c : {0.5, 2.0}) {
        const annihilation::Polynomial p({c});
        const IntervalSet J({{1.2, 1.5}, {2.0, 2.1}});
        const auto r = annihilation::kovrijkine_check([&](std::complex<double> z) { return p(z); }, 1.0, 3.0, J);
        t.add(ex::make_row("kovrijkine", 0, "constant lhs", "c=" + num(c), r.lhs, c * c * 2.0, 1e-14,
                           ex::Relation::rel));
        t.add(ex::make_row("kovrijkine", 0, "constant exponent", "c=" + num(c), r.exponent, 1.0, 1e-12,
                           ex::Relation::abs));
        t.expect(r.holds && !r.degenerate, "constant Phi c=" + num(c) + " does not hold");
    }
}

void criterion10(Tally& t, const Options&) {
    const Order o(0.0);
    // nested sets: the norm is monotone under inclusion in either slot
    const std::vector<IntervalSet> nested{IntervalSet({{0.0, 0.3}}), IntervalSet({{0.0, 0.6}}),
                                          IntervalSet({{0.0, 0.6}, {1.0, 1.3}}), IntervalSet({{0.0, 1.5}})};
    const IntervalSet fixed({{0.0, 0.8}});
    double prev_s = 0.0, prev_sigma = 0.0;
    for (std::size_t i = 0; i < nested.size(); ++i) {
        const double ns = annihilation::pair_norm({o, nested[i], fixed});
        const double nsig = annihilation::pair_norm({o, fixed, nested[i]});
        const std::string p = "set=" + std::to_string(i);
        for (double v : {ns, nsig}) {
            t.add(ex::make_row("pair-norm", 0, "at most one", p, v, 1.0, 0.0, ex::Relation::le));
            t.add(ex::make_row("pair-norm", 0, "nonnegative", p, v, 0.0, 0.0, ex::Relation::ge));
        }
        t.add(ex::make_row("pair-norm", 0, "monotone in S", p, ns, prev_s, 1e-6, ex::Relation::ge));
        t.add(ex::make_row("pair-norm", 0, "monotone in Sigma", p, nsig, prev_sigma, 1e-6, ex::Relation::ge));
        prev_s = ns;
        prev_sigma = nsig;
    }
    // S = Sigma = [0, 1]
    const annihilation::ProjectionPair pair{o, IntervalSet({{0.0, 1.0}}), IntervalSet({{0.0, 1.0}})};
    const auto rep = annihilation::pair_norm_report(pair, 1e-6);
    t.add(ex::make_row("pair-norm", 0, "unit pair below one", "S=Sigma=[0;1]", rep.value, 1.0, 0.0, ex::Relation::lt));
    auto doubled = pair;
    doubled.node_scale = 2.0;
    const double v2 = annihilation::pair_norm_report(doubled, 1e-6).value;
    t.add(ex::make_row("pair-norm", 0, "node doubling", "S=Sigma=[0;1]", v2, rep.value, 1e-5, ex::Relation::abs));
    const auto mc = annihilation::strong_pair_trials(pair, rep.value, 1000);
    t.add(ex::make_row("pair-norm", 0, "strong pair failures", "trials=1000", mc.failures, 0.0, 0.0, ex::Relation::abs,
                       "worst=" + num(mc.worst_ratio)));
}

struct Criterion {
    const char* name;
    double limit;
    void (*fn)(Tally&, const Options&);
};

const Criterion criteria[10] = {
    {"special-function fidelity", 1.0, criterion1},
    {"integral identities", 10.0, criterion2},
    {"Plancherel and inversion", 60.0, criterion3},
    {"translation suite", 120.0, criterion4},
    {"Bernstein inequality", 120.0, criterion5},
    {"extremal family", 60.0, criterion6},
    {"concentration bound ordering", 600.0, criterion7},
    {"good/bad decomposition", 600.0, criterion8},
    {"Kovrijkine inequality", 30.0, criterion9},
    {"annihilation operators", 300.0, criterion10},
};

template <class F>
CheckResult timed(int id, const std::string& name, double limit, F&& body) {
    CheckResult r{id, name, false, {}, 0.0, limit};
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(t);
    } catch (const std::exception& e) {
        t.failures.push_back(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.detail = t.detail();
    r.passed = t.failures.empty() && t.checked > 0;
    if (r.seconds > limit) {
        r.passed = false;
        r.detail += "; runtime limit exceeded";
    }
    return r;
}

} // namespace

CheckResult run_criterion(int id, const Options& options) {
    if (id < 1 || id > 10) throw std::invalid_argument("criterion id must lie in [1, 10]");
    const auto& c = criteria[id - 1];
    return timed(id, c.name, c.limit, [&](Tally& t) { c.fn(t, options); });
}

CheckResult zero_table_invariants(const Options& options) {
    return timed(0, "zero table invariants", 60.0, [&](Tally& t) {
        for (double a : {-0.5, 0.0, 0.5, 1.0, 2.3}) {
            const Order o(a);
            auto table = bessel::zeros_of_j_prime(o, 200);
            if (options.fault == "interlacing" && a == 0.0) {
                std::vector<double> z(table.zeros().begin(), table.zeros().end());
                std::swap(z[10], z[11]);
                table = bessel::ZeroTable(o, z);
            }
            const auto msg = table.check_invariants();
            t.expect(msg.empty(), "alpha=" + num(a) + ": " + msg);
        }
    });
}

std::vector<CheckResult> selftest(const Options& options, const std::function<void(const CheckResult&)>& progress) {
    if (!options.fault.empty() && options.fault != "interlacing")
        throw std::invalid_argument("unknown fault '" + options.fault + "'");
    std::vector<CheckResult> out;
    auto record = [&](CheckResult r) {
        if (progress) progress(r);
        out.push_back(std::move(r));
    };
    record(zero_table_invariants(options));
    for (int id = 1; id <= 10; ++id) record(run_criterion(id, options));
    return out;
}

std::string format_result(const CheckResult& r) {
    char head[160];
    std::snprintf(head, sizeof head, "%s [%d] %s (%.1f s / %.0f s): ", r.passed ? "PASS" : "FAIL", r.id,
                  r.name.c_str(), r.seconds, r.limit_seconds);
    return head + r.detail;
}

} // namespace hconc::checks
