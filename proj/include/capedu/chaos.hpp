#pragma once

#include "capedu/integrator.hpp"
#include "capedu/model.hpp"
#include "capedu/trajectory.hpp"

#include <span>
#include <vector>

namespace capedu {

/// Tolerances for chaotic runs; pointwise reproducibility decays with horizon.
inline constexpr IntegratorSettings kChaosSettings{1e-10, 1e-12, 1e-3, 1.0, 10'000'000};
inline constexpr double kChaosSampleStep = 0.01;

/// A(t) = (1/t) * integral of x over [0, t], for each sample t > 0.
struct AverageSeries {
    std::vector<double> times;
    std::vector<double> values;
};

RawTrajectory simulate_ne9(double b, const Ne9State& initial, double horizon,
                           const IntegratorSettings& settings = kChaosSettings,
                           double sample_step = kChaosSampleStep);

/// Cumulative trapezoid integral, same length as the input; the first entry is 0.
std::vector<double> cumulative_trapezoid(std::span<const double> times,
                                         std::span<const double> values);

/// Trapezoidal running average. times must start at 0 and hold at least two samples.
AverageSeries running_average(std::span<const double> times, std::span<const double> values);

/// Extracts component `index` of every state.
std::vector<double> component(const RawTrajectory& raw, std::size_t index);

/// Coupled 5-D run with capital share s_k + c x(t). Records the minimum
/// effective share in flags.min_effective_sk.
Trajectory simulate_modulated(const ModelParams& params, double c, const EconState& econ0,
                              const Ne9State& chaos0, double b, double horizon,
                              const IntegratorSettings& settings = kChaosSettings,
                              double sample_step = kChaosSampleStep);

} // namespace capedu
