#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace capedu {

using StateVector = std::vector<double>;

/// Right-hand side of an autonomous system: writes dy/dt for state y into dydt.
/// Both spans have the system dimension.
using VectorField = std::function<void(std::span<const double> y, std::span<double> dydt)>;

struct IntegratorSettings {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double initial_step = 1e-3;
    double max_step = 1.0;
    std::size_t max_steps = 10'000'000;

    friend bool operator==(const IntegratorSettings&, const IntegratorSettings&) = default;
};

/// Throws ValidationError naming the first offending field.
void validate(const IntegratorSettings& settings);

struct IntegrationStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
};

struct RawTrajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    IntegrationStats stats;

    std::size_t size() const noexcept { return times.size(); }
    const StateVector& back() const { return states.back(); }
};

/// The output grid t0, t0 + step, ..., closed by t1. A grid point within
/// 1e-9 * step of t1 is snapped to t1 rather than duplicated.
std::vector<double> sample_grid(double t0, double t1, double step);

/**
 * Adaptive Dormand-Prince 5(4) integration of an autonomous system.
 *
 * The fifth-order solution is propagated (local extrapolation) and the
 * embedded fourth-order solution supplies the error estimate, measured in the
 * mixed norm max_i |e_i| / (abs_tol + rel_tol * max(|y_i|, |y_new_i|)).
 * Steps are clipped so that every sample time is hit exactly; the controller's
 * step proposal survives the clipping, so output samples never depend on an
 * interpolant.
 *
 * A trial step on which the field raises DomainError or produces a non-finite
 * value is retried with a quarter of the step; the error is rethrown (with the
 * failing time attached) once the step underflows.
 *
 * Throws StepLimitExceeded, NonFiniteState, DomainError, ValidationError.
 */
RawTrajectory integrate(const VectorField& field, const StateVector& y0, double t0, double t1,
                        const IntegratorSettings& settings, double sample_step);

} // namespace capedu
