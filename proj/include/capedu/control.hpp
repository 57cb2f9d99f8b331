#pragma once

#include "capedu/integrator.hpp"
#include "capedu/model.hpp"
#include "capedu/trajectory.hpp"

#include <utility>

namespace capedu {

/// Consumption-controlled (K, E, s_r) run. flags.constraint_violation is set
/// when s_r leaves [s_r_floor, 1 - s_k]; s_r itself is never clamped.
Trajectory simulate_controlled(const ModelParams& params, double p, const EconState& econ0,
                               double s_r0, double horizon,
                               const IntegratorSettings& settings = {},
                               double sample_step = 0.1);

struct TippingResult {
    double p_star = 0.0;
    std::pair<double, double> bracket;           ///< final (p_low, p_high)
    std::pair<double, double> growth_at_bracket; ///< Y(T) - Y(0) at the bracket ends
    double horizon_used = 0.0;
};

/**
 * Bisection for the target p at which output after `horizon` returns to its
 * initial level, i.e. the root of Y(T; p) - Y(0).
 *
 * Stops once p_high - p_low <= tol and reports the midpoint. Throws
 * NoSignChange when the growth has the same sign at both ends (or the bracket
 * is empty).
 */
TippingResult find_tipping(const ModelParams& params, const EconState& econ0, double s_r0,
                           double horizon, double p_low, double p_high, double tol = 1e-3,
                           const IntegratorSettings& settings = {});

struct LongRunOutcome {
    double Y = 0.0;
    double C = 0.0;
};

/// Output and consumption at the controlled equilibrium; C = p Y.
LongRunOutcome long_run_outcome(const ModelParams& params, double p);

} // namespace capedu
