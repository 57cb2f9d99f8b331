#pragma once

#include "capedu/scenario.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace capedu {

/// One parameter varied over a list of values, each run reported at report_time.
struct SweepSpec {
    Scenario base;
    std::string parameter; ///< s_k, s_r, delta_k, delta_r, alpha, beta, p or c
    std::vector<double> values;
    double report_time = 200.0;
};

struct SweepRow {
    double value = 0.0;
    double Y = 0.0;
    double C = 0.0;
    std::string error; ///< empty on success

    bool ok() const noexcept { return error.empty(); }
};

/// Throws ValidationError for an unknown parameter, one that does not apply to
/// the base kind, an empty value list or a non-positive report time.
void validate(const SweepSpec& spec);

/// The scenario actually run for one row: `base` with `parameter` set to
/// `value` and the horizon set to report_time. Throws ValidationError when the
/// substituted value breaks a constraint.
Scenario sweep_scenario(const SweepSpec& spec, double value);

/**
 * Runs one independent scenario per value, optionally on `jobs` threads.
 * Row order follows `values`. A failing row records its error message and
 * leaves the remaining rows unaffected.
 */
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned jobs = 1);

/// value,Y,C,error with the error field quoted when needed.
std::string write_sweep_csv(const std::vector<SweepRow>& rows);

} // namespace capedu
