#pragma once

#include <functional>
#include <string>
#include <vector>

/// Acceptance criteria and the self-test suite.
namespace hconc::checks {

enum class Scale {
    quick,   // reduced trial counts, for `hconc selftest`
    full,    // the acceptance counts
};

struct Options {
    Scale scale = Scale::full;
    int jobs = 1;
    /// Test-mode fault injection: "interlacing" corrupts the zero table under check.
    std::string fault;
};

struct CheckResult {
    int id = 0;               // 1..10 for acceptance criteria, 0 for extra invariants
    std::string name;
    bool passed = false;
    std::string detail;       // measured values, or the failures
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

/// Acceptance criterion `id` (1..10). Passing includes the runtime limit.
CheckResult run_criterion(int id, const Options& options);

/// Zero-table invariants (ordering, root residual, spacing) for several orders.
CheckResult zero_table_invariants(const Options& options);

/// Zero-table invariants followed by the ten criteria; `progress` sees each result.
std::vector<CheckResult> selftest(const Options& options,
                                  const std::function<void(const CheckResult&)>& progress = {});

/// "PASS [n] name (t s / limit s): detail" or "FAIL ...".
std::string format_result(const CheckResult& r);

} // namespace hconc::checks
