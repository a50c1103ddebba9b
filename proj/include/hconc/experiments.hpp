#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hconc/annihilation.hpp"

/// Experiment runner: flat key = value configs, named recipes, CSV reports.
namespace hconc::experiments {

/// Bad command line or config; maps to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// `alpha` and `b` accept comma-separated lists; trial t uses
/// alpha[t % |alpha|] and b[(t / |alpha|) % |b|].
struct ExperimentConfig {
    std::string name = "experiment";
    std::string recipe;
    std::vector<double> alpha{0.0};
    double a = 1.0;
    std::vector<double> b{1.0};
    double gamma = 0.0;          // 0: use the certified value
    std::filesystem::path omega_file;
    std::filesystem::path s_file;
    std::filesystem::path sigma_file;
    double xmax = 0.0;           // 0: recipe default
    int nodes = 128;
    std::uint64_t seed = annihilation::default_seed;
    int trials = 10;
    int k_max = 5;
    int n_max = 20;
    std::filesystem::path output_dir = ".";

    /// Throws UsageError for unknown recipes, missing files or out-of-range numbers.
    void validate() const;
    /// (key, value) pairs in a fixed order, as written to CSV headers.
    std::vector<std::pair<std::string, std::string>> provenance() const;
};

/// One `key = value` per line; `#` starts a comment. Relative paths resolve against base_dir.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path& file);

const std::vector<std::string>& recipe_names();

/// How `measured` is compared with `reference`.
enum class Relation {
    abs,        // |measured - reference| <= tolerance
    rel,        // |measured - reference| <= tolerance |reference|
    le,         // measured <= reference (1 + tolerance)
    ge,         // measured >= reference (1 - tolerance)
    gt,         // measured > reference
    lt,         // measured < reference
};
const char* relation_name(Relation r);

struct ReportRow {
    std::string experiment;
    int trial = 0;
    std::string check;
    std::string params;     // per-trial parameters, `k=v;k=v`
    double measured = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    Relation relation = Relation::abs;
    bool pass = false;
    std::string note;
};

/// Sets `pass` from measured, reference, tolerance and relation.
ReportRow make_row(std::string experiment, int trial, std::string check, std::string params, double measured,
                   double reference, double tolerance, Relation relation, std::string note = {});
bool consistent(const ReportRow& row);

/// Runs the recipe. Trials are independent with generator seed + trial and may run on
/// `jobs` threads; rows come back ordered by trial.
std::vector<ReportRow> run(const ExperimentConfig& config, int jobs = 1);

/// `# key=value` provenance lines, a header row, then one line per row (LF endings).
void write_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<ReportRow>& rows);

/// run + write_csv to <output_dir>/<name>.csv; returns the path.
std::filesystem::path run_to_file(const ExperimentConfig& config, std::vector<ReportRow>& rows, int jobs = 1);

/// Shortest round-trip decimal form.
std::string format_number(double v);

} // namespace hconc::experiments
