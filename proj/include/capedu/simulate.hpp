#pragma once

#include "capedu/integrator.hpp"
#include "capedu/model.hpp"
#include "capedu/trajectory.hpp"

namespace capedu {

/// Basic (K, E) system from econ0 over [0, horizon].
Trajectory simulate_basic(const ModelParams& params, const EconState& econ0, double horizon,
                          const IntegratorSettings& settings, double sample_step);

} // namespace capedu
