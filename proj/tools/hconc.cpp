// hconc command line: module subcommands, `run --config FILE` and `selftest`.
// Exit codes: 0 pass, 1 failed check, 2 usage or config error, 3 non-convergence.

#include <CLI11.hpp>

#include <boost/math/interpolators/makima.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hconc/annihilation.hpp"
#include "hconc/bessel.hpp"
#include "hconc/checks.hpp"
#include "hconc/experiments.hpp"
#include "hconc/measure.hpp"
#include "hconc/paley_wiener.hpp"
#include "hconc/quadrature.hpp"
#include "hconc/translation.hpp"

namespace {

using namespace hconc;
using experiments::format_number;
using experiments::UsageError;

constexpr int exit_pass = 0, exit_fail = 1, exit_usage = 2, exit_numeric = 3;

struct Range {
    double lo = 0.0, hi = 0.0;
    int n = 0;
};

std::vector<double> parse_numbers(const std::string& text, std::size_t expect, const char* flag) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string(flag) + ": not a number: '" + item + "'");
        }
    }
    if (v.size() != expect) throw UsageError(std::string(flag) + ": expected " + std::to_string(expect) + " values");
    return v;
}

Range parse_grid(const std::string& text, const char* flag) {
    const auto v = parse_numbers(text, 3, flag);
    Range r{v[0], v[1], static_cast<int>(v[2])};
    if (!(r.hi >= r.lo) || r.n < 1 || v[2] != r.n) throw UsageError(std::string(flag) + ": expected lo,hi,n with hi >= lo, n >= 1");
    return r;
}

std::vector<double> grid_points(const Range& r) {
    std::vector<double> v;
    for (int i = 0; i < r.n; ++i) v.push_back(r.n == 1 ? r.lo : r.lo + (r.hi - r.lo) * i / (r.n - 1));
    return v;
}

// Two-column CSV `x,value`; comment lines and a header row are skipped.
std::pair<std::vector<double>, std::vector<double>> read_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::vector<double> xs, vs;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected x,value");
        try {
            xs.push_back(std::stod(line.substr(0, comma)));
            vs.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            if (xs.empty() && vs.empty()) continue;  // header row
            throw UsageError(path + ":" + std::to_string(lineno) + ": not a number");
        }
    }
    if (xs.size() < 4) throw UsageError(path + ": need at least 4 samples");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw UsageError(path + ": x must be strictly increasing");
    return {xs, vs};
}

// Modified Akima interpolant of the samples, zero outside their range.
std::function<double(double)> interpolant(std::vector<double> xs, std::vector<double> vs) {
    const double lo = xs.front(), hi = xs.back();
    auto spline = std::make_shared<boost::math::interpolators::makima<std::vector<double>>>(std::move(xs), std::move(vs));
    return [spline, lo, hi](double x) { return x < lo || x > hi ? 0.0 : (*spline)(x); };
}

void write_provenance(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& params) {
    for (const auto& [k, v] : params) out << "# " << k << '=' << v << '\n';
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw UsageError("cannot write " + path);
    return file;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier-Bessel transforms, Paley-Wiener spaces and annihilating pairs"};
    app.require_subcommand(1);
    int code = exit_pass;

    // bessel -------------------------------------------------------------
    auto* bessel_cmd = app.add_subcommand("bessel", "normalized Bessel functions j_alpha");
    bessel_cmd->require_subcommand(1);
    double alpha = 0.0, x = 0.0;
    std::size_t count = 10;
    auto* bessel_eval = bessel_cmd->add_subcommand("eval", "j_alpha(x)");
    bessel_eval->add_option("--alpha", alpha, "order")->required();
    bessel_eval->add_option("--x", x, "argument")->required();
    bessel_eval->callback([&] { std::printf("%.17g\n", bessel::eval_j(Order(alpha), x)); });
    auto* bessel_zeros = bessel_cmd->add_subcommand("zeros", "positive zeros of j'_alpha");
    bessel_zeros->add_option("--alpha", alpha, "order")->required();
    bessel_zeros->add_option("--count", count, "number of zeros")->required();
    bessel_zeros->callback([&] {
        const auto z = bessel::zeros_of_j_prime(Order(alpha), count);
        for (double s : z.zeros()) std::printf("%.17g\n", s);
    });

    // measure ------------------------------------------------------------
    auto* measure_cmd = app.add_subcommand("measure", "set geometry under mu_alpha");
    measure_cmd->require_subcommand(1);
    std::string set_file, out_file;
    double a = 1.0, xmax = 0.0, step = 0.0;
    auto* density = measure_cmd->add_subcommand("density", "relative density profile, CSV x,ratio");
    density->add_option("--alpha", alpha, "order")->required();
    density->add_option("--set", set_file, "set file")->required();
    density->add_option("--a", a, "window half-width")->required();
    density->add_option("--xmax", xmax, "last window centre")->required();
    density->add_option("--step", step, "grid step (default a/100)");
    density->callback([&] {
        const Order o(alpha);
        const auto set = measure::load_set(set_file);
        const auto p = measure::density_profile(o, set, a, xmax, step, true);
        write_provenance(std::cout, {{"alpha", format_number(alpha)}, {"set", set_file}, {"a", format_number(a)},
                                     {"xmax", format_number(xmax)}, {"step", format_number(p.step)}});
        std::cout << "x,ratio\n";
        for (const auto& [px, r] : p.samples) std::cout << format_number(px) << ',' << format_number(r) << '\n';
        std::cerr << "gamma_min,argmin\n" << format_number(p.gamma_min) << ',' << format_number(p.argmin) << '\n';
    });

    // transform ----------------------------------------------------------
    auto* transform = app.add_subcommand("transform", "Fourier-Bessel transform of sampled data");
    transform->require_subcommand(1);
    std::string in_file, support_text, grid_text;
    int nodes = 0;
    auto add_transform = [&](const char* name, bool forward) {
        auto* cmd = transform->add_subcommand(name, forward ? "forward transform" : "inverse transform");
        cmd->add_option("--alpha", alpha, "order")->required();
        cmd->add_option("--in", in_file, "CSV x,value")->required();
        cmd->add_option("--support", support_text, "lo,hi of the input")->required();
        cmd->add_option("--nodes", nodes, "quadrature nodes (default from the output range)");
        cmd->add_option("--grid", grid_text, "output points lo,hi,m (default: the input x)");
        cmd->add_option("--out", out_file, "output CSV (default stdout)");
        cmd->callback([&, forward] {
            const Order o(alpha);
            const auto sup = parse_numbers(support_text, 2, "--support");
            if (!(sup[0] >= 0.0 && sup[1] > sup[0])) throw UsageError("--support: need 0 <= lo < hi");
            auto [xs, vs] = read_samples(in_file);
            const auto out_x = grid_text.empty() ? xs : grid_points(parse_grid(grid_text, "--grid"));
            double ymax = 0.0;
            for (double y : out_x) ymax = std::max(ymax, std::abs(y));
            const int n = nodes > 0 ? nodes : quad::default_nodes(sup[1], ymax);
            const auto f = interpolant(xs, vs);
            const auto sampled = quad::sample(quad::mu_adapted_rule(o, sup[0], sup[1], n), f);
            const auto values = forward ? quad::forward(o, sampled, out_x) : quad::inverse(o, sampled, out_x);
            std::ofstream file;
            auto& out = open_output(out_file, file);
            write_provenance(out, {{"alpha", format_number(alpha)}, {"direction", forward ? "forward" : "inverse"},
                                   {"in", in_file}, {"support", support_text}, {"nodes", std::to_string(n)}});
            out << "x,value\n";
            for (std::size_t i = 0; i < out_x.size(); ++i)
                out << format_number(out_x[i]) << ',' << format_number(values[i]) << '\n';
        });
    };
    add_transform("forward", true);
    add_transform("inverse", false);

    // translate ----------------------------------------------------------
    auto* translate = app.add_subcommand("translate", "generalized translation T_x f on a y grid");
    std::string f_file, y_grid;
    translate->add_option("--alpha", alpha, "order")->required();
    translate->add_option("--x", x, "translation")->required();
    translate->add_option("--f", f_file, "CSV x,value (zero outside the sampled range)")->required();
    translate->add_option("--y-grid", y_grid, "lo,hi,n")->required();
    translate->add_option("--out", out_file, "output CSV (default stdout)");
    translate->callback([&] {
        const Order o(alpha);
        auto [xs, vs] = read_samples(f_file);
        const auto f = interpolant(xs, vs);
        const translation::TranslationPlan plan(o);
        std::ofstream file;
        auto& out = open_output(out_file, file);
        write_provenance(out, {{"alpha", format_number(alpha)}, {"x", format_number(x)}, {"f", f_file},
                               {"y_grid", y_grid}});
        out << "y,value\n";
        for (double y : grid_points(parse_grid(y_grid, "--y-grid")))
            out << format_number(y) << ',' << format_number(plan.translate(x, f, y)) << '\n';
    });

    // pw -----------------------------------------------------------------
    auto* pw_cmd = app.add_subcommand("pw", "Paley-Wiener functions");
    pw_cmd->require_subcommand(1);
    double b = 1.0;
    int k = 1, trials = 10, n = 1;
    std::uint64_t seed = annihilation::default_seed;
    auto* bern = pw_cmd->add_subcommand("bernstein", "Bernstein inequality on random elements, CSV trial,lhs,rhs,ratio");
    bern->add_option("--alpha", alpha, "order")->required();
    bern->add_option("--b", b, "bandlimit")->required();
    bern->add_option("--k", k, "power of D")->required()->check(CLI::Range(0, 30));
    bern->add_option("--trials", trials, "number of random functions")->check(CLI::NonNegativeNumber);
    bern->add_option("--seed", seed, "generator seed");
    bern->callback([&] {
        const Order o(alpha);
        if (!(b > 0.0)) throw UsageError("--b must be positive");
        write_provenance(std::cout, {{"alpha", format_number(alpha)}, {"b", format_number(b)}, {"k", std::to_string(k)},
                                     {"trials", std::to_string(trials)}, {"seed", std::to_string(seed)},
                                     {"nodes", "8"}, {"taper", "6"}});
        std::cout << "trial,lhs,rhs,ratio\n";
        for (int t = 0; t < trials; ++t) {
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
            const auto f = pw::random_pw(o, b, 8, 6, rng);
            const auto s = pw::bernstein_sides(f, k);
            const double ratio = s.lhs / s.rhs;
            std::cout << t << ',' << format_number(s.lhs) << ',' << format_number(s.rhs) << ',' << format_number(ratio)
                      << '\n';
            if (ratio > 1.0 + 1e-6) code = exit_fail;
        }
    });
    auto* extremal = pw_cmd->add_subcommand("extremal", "extremal function f_n on a grid, CSV x,value");
    std::string x_grid;
    extremal->add_option("--alpha", alpha, "order")->required();
    extremal->add_option("--n", n, "index n >= 0")->required()->check(CLI::Range(0, 1000000));
    extremal->add_option("--x-grid", x_grid, "lo,hi,m")->required();
    extremal->callback([&] {
        const Order o(alpha);
        const auto zeros = bessel::zeros_of_j_prime(o, std::max(1, n));
        write_provenance(std::cout, {{"alpha", format_number(alpha)}, {"n", std::to_string(n)},
                                     {"s_n", format_number(zeros.at(n))}, {"x_grid", x_grid}});
        std::cout << "x,value\n";
        for (double px : grid_points(parse_grid(x_grid, "--x-grid")))
            std::cout << format_number(px) << ',' << format_number(pw::extremal_family(zeros, n, px)) << '\n';
    });

    // pair ---------------------------------------------------------------
    auto* pair_cmd = app.add_subcommand("pair", "projection pairs");
    pair_cmd->require_subcommand(1);
    std::string s_file, sigma_file;
    auto* pnorm = pair_cmd->add_subcommand("norm", "||F_Sigma E_S||");
    pnorm->add_option("--alpha", alpha, "order")->required();
    pnorm->add_option("--s", s_file, "set file for S")->required();
    pnorm->add_option("--sigma", sigma_file, "set file for Sigma")->required();
    pnorm->add_option("--xmax", xmax, "truncation (default sup S)");
    pnorm->add_option("--nodes", nodes, "initial nodes per panel (default 8)");
    pnorm->callback([&] {
        annihilation::ProjectionPair pair{Order(alpha), measure::load_set(s_file), measure::load_set(sigma_file), xmax,
                                          nodes > 0 ? nodes / 8.0 : 1.0};
        const auto r = annihilation::pair_norm_report(pair);
        write_provenance(std::cout, {{"alpha", format_number(alpha)}, {"s", s_file}, {"sigma", sigma_file},
                                     {"xmax", format_number(xmax)}, {"nodes", std::to_string(nodes > 0 ? nodes : 8)}});
        std::cout << "norm,rows,cols,change,constant\n"
                  << format_number(r.value) << ',' << r.rows << ',' << r.cols << ',' << format_number(r.change) << ','
                  << (r.value < 1.0 ? format_number(annihilation::annihilation_constant(r.value)) : "inf") << '\n';
    });

    // ls -----------------------------------------------------------------
    auto* ls = app.add_subcommand("ls", "concentration bound on relatively dense sets");
    ls->require_subcommand(1);
    double gamma = 0.0;
    std::string omega_file;
    auto* lsb = ls->add_subcommand("bound", "the lower bound for ||f||_Omega^2 / ||f||^2");
    lsb->add_option("--alpha", alpha, "order")->required();
    lsb->add_option("--a", a, "density scale")->required();
    lsb->add_option("--b", b, "bandlimit")->required();
    lsb->add_option("--gamma", gamma, "density")->required();
    lsb->callback([&] {
        const auto r = annihilation::ls_bound({Order(alpha), gamma, a, b});
        std::cout << "alpha,a,b,gamma,value,log10,exponent\n"
                  << format_number(alpha) << ',' << format_number(a) << ',' << format_number(b) << ','
                  << format_number(gamma) << ',' << format_number(r.value) << ',' << format_number(r.log10) << ','
                  << format_number(r.exponent) << '\n';
    });
    auto* lse = ls->add_subcommand("empirical", "smallest concentration ratio over PW_alpha(b)");
    nodes = 0;
    lse->add_option("--alpha", alpha, "order")->required();
    lse->add_option("--b", b, "bandlimit")->required();
    lse->add_option("--omega", omega_file, "set file")->required();
    lse->add_option("--xmax", xmax, "window (default 20 max(1, 1/b) + sup Omega)");
    lse->add_option("--nodes", nodes, "basis size N (default 128)");
    lse->callback([&] {
        const auto omega = measure::load_set(omega_file);
        const int nn = nodes > 0 ? nodes : 128;
        const double r = annihilation::ls_empirical_min_ratio(Order(alpha), b, omega, xmax, nn);
        write_provenance(std::cout, {{"alpha", format_number(alpha)}, {"b", format_number(b)}, {"omega", omega_file},
                                     {"xmax", format_number(xmax)}, {"nodes", std::to_string(nn)}});
        std::cout << "ratio\n" << format_number(r) << '\n';
    });
    auto* lsv = ls->add_subcommand("verify", "density profile, bound and empirical ratio; PASS or FAIL");
    double xmax_density = 0.0;
    lsv->add_option("--alpha", alpha, "order")->required();
    lsv->add_option("--a", a, "density scale")->required();
    lsv->add_option("--b", b, "bandlimit")->required();
    lsv->add_option("--omega", omega_file, "set file")->required();
    lsv->add_option("--xmax", xmax_density, "last certified window centre (default sup Omega - a)");
    lsv->add_option("--nodes", nodes, "basis size N (default 128)");
    lsv->add_option("--gamma", gamma, "use this gamma if the certified one is at least as large");
    lsv->callback([&] {
        const auto omega = measure::load_set(omega_file);
        const double xd = xmax_density > 0 ? xmax_density : omega.sup() - a;
        const int nn = nodes > 0 ? nodes : 128;
        const auto v = annihilation::ls_verify(Order(alpha), a, b, omega, xd, nn, gamma);
        write_provenance(std::cout, {{"alpha", format_number(alpha)}, {"a", format_number(a)}, {"b", format_number(b)},
                                     {"omega", omega_file}, {"xmax_density", format_number(xd)},
                                     {"nodes", std::to_string(nn)}});
        std::cout << "gamma,gamma_argmin,bound_log10,empirical,result\n"
                  << format_number(v.gamma) << ',' << format_number(v.gamma_argmin) << ','
                  << format_number(v.bound.log10) << ',' << format_number(v.empirical) << ','
                  << (v.pass ? "PASS" : "FAIL") << '\n';
        std::cout << (v.pass ? "PASS" : "FAIL") << '\n';
        if (!v.pass) code = exit_fail;
    });

    // run ----------------------------------------------------------------
    auto* run = app.add_subcommand("run", "run an experiment config");
    std::string config_file;
    int jobs = 1;
    run->add_option("--config", config_file, "key = value config file")->required();
    run->add_option("--jobs", jobs, "threads for independent trials")->check(CLI::PositiveNumber);
    run->callback([&] {
        const auto config = experiments::load_config(config_file);
        std::vector<experiments::ReportRow> rows;
        const auto path = experiments::run_to_file(config, rows, jobs);
        int failed = 0;
        for (const auto& r : rows)
            if (!r.pass) {
                ++failed;
                std::cerr << "FAIL " << r.experiment << " trial " << r.trial << ' ' << r.check << " (" << r.params
                          << "): measured " << format_number(r.measured) << " reference "
                          << format_number(r.reference) << '\n';
            }
        std::cout << config.name << ": " << rows.size() << " rows, " << failed << " failed, wrote " << path.string()
                  << '\n';
        if (failed > 0) code = exit_fail;
    });

    // selftest -----------------------------------------------------------
    auto* selftest = app.add_subcommand("selftest", "invariant suite of all modules");
    bool full = false;
    std::string fault;
    selftest->add_flag("--full", full, "acceptance-scale trial counts");
    selftest->add_option("--jobs", jobs, "threads for independent trials")->check(CLI::PositiveNumber);
    selftest->add_option("--inject-fault", fault, "test mode: corrupt an input (interlacing)")
        ->check(CLI::IsMember({"interlacing"}))
        ->group("");
    selftest->callback([&] {
        checks::Options opt;
        opt.scale = full ? checks::Scale::full : checks::Scale::quick;
        opt.jobs = jobs;
        opt.fault = fault;
        int failed = 0;
        checks::selftest(opt, [&](const checks::CheckResult& r) {
            std::cout << checks::format_result(r) << std::endl;
            if (!r.passed) ++failed;
        });
        std::cout << (failed == 0 ? "selftest passed" : "selftest failed: " + std::to_string(failed) + " checks")
                  << '\n';
        if (failed > 0) code = exit_fail;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << " (residual " << e.residual() << ")\n";
        return exit_numeric;
    } catch (const std::invalid_argument& e) {   // includes UsageError
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_fail;
    }
    return code;
}
