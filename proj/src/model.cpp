#include "capedu/model.hpp"

#include "capedu/errors.hpp"

#include <cmath>
#include <string>

namespace capedu {

namespace {

void require_positive_stocks(const EconState& s) {
    if (!(s.K > 0.0) || !(s.E > 0.0))
        throw DomainError("production undefined for K=" + std::to_string(s.K) +
                          ", E=" + std::to_string(s.E) + " (both must be positive)");
}

void require(bool ok, const char* field, const char* message) {
    if (!ok)
        throw ValidationError(field, std::string(field) + ": " + message);
}

} // namespace

void validate(const ModelParams& p) {
    require(std::isfinite(p.s_k) && p.s_k >= 0.0 && p.s_k <= 1.0, "s_k", "must lie in [0, 1]");
    require(std::isfinite(p.s_r) && p.s_r > 0.0 && p.s_r <= 1.0, "s_r", "must lie in (0, 1]");
    require(std::isfinite(p.s_r_floor) && p.s_r_floor >= 0.0, "s_r_floor",
            "must be non-negative");
    require(p.s_r >= p.s_r_floor, "s_r", "must not be below s_r_floor");
    require(p.s_k + p.s_r <= 1.0, "s_r", "s_k + s_r must not exceed 1 (negative consumption)");
    require(std::isfinite(p.delta_k) && p.delta_k > 0.0, "delta_k", "must be positive");
    require(std::isfinite(p.delta_r) && p.delta_r > 0.0, "delta_r", "must be positive");
    require(std::isfinite(p.alpha) && p.alpha > 0.0 && p.alpha < 1.0, "alpha",
            "must lie in (0, 1)");
    require(std::isfinite(p.beta) && p.beta > 0.0 && p.beta < 1.0, "beta", "must lie in (0, 1)");
}

bool elasticity_warning(const ModelParams& p) { return p.alpha + p.beta >= 1.0; }

double production(const ModelParams& params, const EconState& state) {
    require_positive_stocks(state);
    return std::pow(state.E, params.alpha) * std::pow(state.K, params.beta);
}

Investments investments(const ModelParams& params, double Y) {
    return {params.s_k * Y, params.s_r * Y};
}

double consumption(const ModelParams& params, double s_r_current, double Y) {
    return (1.0 - params.s_k - s_r_current) * Y;
}

EconRate basic_field(const ModelParams& params, const EconState& state) {
    const double Y = production(params, state);
    return {params.s_k * Y - params.delta_k * state.K, params.s_r * Y - params.delta_r * state.E};
}

Ne9Rate ne9_field(const Ne9State& s, double b) {
    return {s.y, -s.x - s.y * s.z, -s.x * s.z + 7.0 * s.x * s.x - b};
}

ChaosAugmentedRate modulated_field(const ModelParams& params, double c,
                                   const ChaosAugmentedState& state, double b) {
    const double Y = production(params, state.econ);
    const double effective_sk = params.s_k + c * state.chaos.x;
    return {{effective_sk * Y - params.delta_k * state.econ.K,
             params.s_r * Y - params.delta_r * state.econ.E},
            ne9_field(state.chaos, b)};
}

ControlledRate control_field(const ModelParams& params, double p, const ControlledState& state) {
    const double Y = production(params, state.econ);
    return {params.s_k * Y - params.delta_k * state.econ.K,
            state.s_r * Y - params.delta_r * state.econ.E,
            (1.0 - params.s_k - state.s_r - p) * Y};
}

VectorField make_basic_field(const ModelParams& params) {
    return [params](std::span<const double> y, std::span<double> dydt) {
        const EconRate r = basic_field(params, {y[0], y[1]});
        dydt[0] = r.dK;
        dydt[1] = r.dE;
    };
}

VectorField make_ne9_field(double b) {
    return [b](std::span<const double> y, std::span<double> dydt) {
        const Ne9Rate r = ne9_field({y[0], y[1], y[2]}, b);
        dydt[0] = r.dx;
        dydt[1] = r.dy;
        dydt[2] = r.dz;
    };
}

VectorField make_modulated_field(const ModelParams& params, double c, double b) {
    return [params, c, b](std::span<const double> y, std::span<double> dydt) {
        const ChaosAugmentedRate r =
            modulated_field(params, c, {{y[0], y[1]}, {y[2], y[3], y[4]}}, b);
        dydt[0] = r.econ.dK;
        dydt[1] = r.econ.dE;
        dydt[2] = r.chaos.dx;
        dydt[3] = r.chaos.dy;
        dydt[4] = r.chaos.dz;
    };
}

VectorField make_control_field(const ModelParams& params, double p) {
    return [params, p](std::span<const double> y, std::span<double> dydt) {
        const ControlledRate r = control_field(params, p, {{y[0], y[1]}, y[2]});
        dydt[0] = r.dK;
        dydt[1] = r.dE;
        dydt[2] = r.ds_r;
    };
}

} // namespace capedu
