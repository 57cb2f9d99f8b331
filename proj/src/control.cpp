#include "capedu/control.hpp"

#include "capedu/analysis.hpp"
#include "capedu/errors.hpp"
#include "derived.hpp"

#include <cmath>
#include <string>

namespace capedu {

namespace {

void require_target(const ModelParams& params, double p) {
    if (!(p > 0.0) || !(p < 1.0 - params.s_k))
        throw InvalidTarget("consumption target p=" + std::to_string(p) +
                            " must lie in (0, 1 - s_k)");
}

double output_after(const ModelParams& params, double p, const EconState& econ0, double s_r0,
                    double horizon, const IntegratorSettings& settings) {
    const RawTrajectory raw = integrate(make_control_field(params, p),
                                        {econ0.K, econ0.E, s_r0}, 0.0, horizon, settings, horizon);
    const StateVector& end = raw.back();
    return production(params, {end[0], end[1]});
}

} // namespace

Trajectory simulate_controlled(const ModelParams& params, double p, const EconState& econ0,
                               double s_r0, double horizon, const IntegratorSettings& settings,
                               double sample_step) {
    require_target(params, p);
    if (!(s_r0 > 0.0))
        throw ValidationError("s_r0", "initial education share s_r0 must be positive");
    if (!(horizon > 0.0))
        throw ValidationError("horizon", "horizon must be positive");
    (void)production(params, econ0);

    const RawTrajectory raw = integrate(make_control_field(params, p), {econ0.K, econ0.E, s_r0},
                                        0.0, horizon, settings, sample_step);

    Trajectory out;
    out.kind = ScenarioKind::controlled;
    out.t = raw.times;
    const double upper = 1.0 - params.s_k;
    for (const auto& s : raw.states) {
        out.K.push_back(s[0]);
        out.E.push_back(s[1]);
        out.s_r.push_back(s[2]);
        if (s[2] < params.s_r_floor || s[2] > upper)
            out.flags.constraint_violation = true;
    }
    detail::attach_derived(params, out, nullptr, &out.s_r);
    return out;
}

TippingResult find_tipping(const ModelParams& params, const EconState& econ0, double s_r0,
                           double horizon, double p_low, double p_high, double tol,
                           const IntegratorSettings& settings) {
    if (!(p_low < p_high))
        throw NoSignChange("empty bracket [" + std::to_string(p_low) + ", " +
                           std::to_string(p_high) + "]");
    if (!(tol > 0.0))
        throw ValidationError("tol", "tolerance must be positive");
    require_target(params, p_low);
    require_target(params, p_high);
    if (!(horizon > 0.0))
        throw ValidationError("horizon", "horizon must be positive");

    const double Y_initial = production(params, econ0);
    auto growth = [&](double p) {
        return output_after(params, p, econ0, s_r0, horizon, settings) - Y_initial;
    };

    double g_low = growth(p_low);
    double g_high = growth(p_high);
    if (g_low == 0.0 || g_high == 0.0) {
        const double root = g_low == 0.0 ? p_low : p_high;
        return {root, {p_low, p_high}, {g_low, g_high}, horizon};
    }
    if (std::signbit(g_low) == std::signbit(g_high))
        throw NoSignChange("output growth has the same sign at p=" + std::to_string(p_low) +
                           " and p=" + std::to_string(p_high));

    while (p_high - p_low > tol) {
        const double mid = 0.5 * (p_low + p_high);
        const double g_mid = growth(mid);
        if (g_mid == 0.0) {
            p_low = p_high = mid;
            g_low = g_high = 0.0;
            break;
        }
        if (std::signbit(g_mid) == std::signbit(g_low)) {
            p_low = mid;
            g_low = g_mid;
        } else {
            p_high = mid;
            g_high = g_mid;
        }
    }
    return {0.5 * (p_low + p_high), {p_low, p_high}, {g_low, g_high}, horizon};
}

LongRunOutcome long_run_outcome(const ModelParams& params, double p) {
    const EquilibriumReport r = controlled_equilibrium(params, p);
    return {r.Y0, p * r.Y0};
}

} // namespace capedu
