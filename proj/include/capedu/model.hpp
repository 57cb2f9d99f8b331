#pragma once

#include "capedu/integrator.hpp"

namespace capedu {

/// Structural constants of the capital-education economy.
struct ModelParams {
    double s_k = 0.4;      ///< capital investment fraction of output
    double s_r = 0.1;      ///< education/research investment fraction of output
    double delta_k = 0.15; ///< capital wear rate
    double delta_r = 0.25; ///< expertise obsolescence rate
    double alpha = 0.2;    ///< elasticity of output in E
    double beta = 0.35;    ///< elasticity of output in K
    double s_r_floor = 0.0;///< minimal education share, used for warnings only

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Throws ValidationError naming the violated field. alpha + beta >= 1 is legal
/// here; see elasticity_warning().
void validate(const ModelParams& params);

/// True when alpha + beta >= 1, where the positive equilibrium is lost or unstable.
bool elasticity_warning(const ModelParams& params);

struct EconState {
    double K = 0.0; ///< capital stock
    double E = 0.0; ///< education/expertise stock

    friend bool operator==(const EconState&, const EconState&) = default;
};

struct ControlledState {
    EconState econ;
    double s_r = 0.0;
};

struct Ne9State {
    double x = 0.0, y = 0.0, z = 0.0;

    friend bool operator==(const Ne9State&, const Ne9State&) = default;
};

struct ChaosAugmentedState {
    EconState econ;
    Ne9State chaos;
};

struct EconRate {
    double dK = 0.0, dE = 0.0;
};

struct ControlledRate {
    double dK = 0.0, dE = 0.0, ds_r = 0.0;
};

struct Ne9Rate {
    double dx = 0.0, dy = 0.0, dz = 0.0;
};

struct ChaosAugmentedRate {
    EconRate econ;
    Ne9Rate chaos;
};

struct Investments {
    double I_k = 0.0, I_r = 0.0;
};

inline constexpr double kNe9Dissipation = 0.55;
inline constexpr Ne9State kNe9Initial{0.5, 0.0, 0.0};

/// Y = E^alpha K^beta. Throws DomainError unless K > 0 and E > 0.
double production(const ModelParams& params, const EconState& state);

Investments investments(const ModelParams& params, double Y);

/// C = (1 - s_k - s_r_current) Y.
double consumption(const ModelParams& params, double s_r_current, double Y);

EconRate basic_field(const ModelParams& params, const EconState& state);

/// x' = y, y' = -x - y z, z' = -x z + 7 x^2 - b.
Ne9Rate ne9_field(const Ne9State& state, double b = kNe9Dissipation);

/// Basic system with the capital share replaced by s_k + c x(t), coupled to NE9.
ChaosAugmentedRate modulated_field(const ModelParams& params, double c,
                                   const ChaosAugmentedState& state,
                                   double b = kNe9Dissipation);

/// Basic system with s_r promoted to a state driven towards consumption p Y:
/// ds_r/dt = (1 - s_k - s_r - p) Y.
ControlledRate control_field(const ModelParams& params, double p, const ControlledState& state);

// Adapters onto the flat integrator interface.
// State layouts: basic (K, E); controlled (K, E, s_r); chaotic (K, E, x, y, z); NE9 (x, y, z).
VectorField make_basic_field(const ModelParams& params);
VectorField make_ne9_field(double b = kNe9Dissipation);
VectorField make_modulated_field(const ModelParams& params, double c,
                                 double b = kNe9Dissipation);
VectorField make_control_field(const ModelParams& params, double p);

} // namespace capedu
