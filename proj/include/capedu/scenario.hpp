#pragma once

#include "capedu/integrator.hpp"
#include "capedu/model.hpp"
#include "capedu/trajectory.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace capedu {

struct ControlSpec {
    double p = 0.47;
    double s_r0 = 0.1;

    friend bool operator==(const ControlSpec&, const ControlSpec&) = default;
};

struct ChaosSpec {
    double c = 0.5;
    double x0 = kNe9Initial.x;
    double y0 = kNe9Initial.y;
    double z0 = kNe9Initial.z;
    double b = kNe9Dissipation;

    Ne9State initial() const { return {x0, y0, z0}; }
    friend bool operator==(const ChaosSpec&, const ChaosSpec&) = default;
};

/// One reproducible run: which system, its constants, start and horizon.
struct Scenario {
    ScenarioKind kind = ScenarioKind::basic;
    ModelParams params;
    EconState initial{4.0, 1.0};
    std::optional<ControlSpec> control; ///< present exactly for controlled runs
    std::optional<ChaosSpec> chaos;     ///< present exactly for chaotic runs
    double horizon = 200.0;
    double sample_step = 0.1;
    IntegratorSettings integrator;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Integrator settings used when a document has no integrator block:
/// the library defaults, tightened for chaotic runs.
IntegratorSettings default_settings(ScenarioKind kind);

/// Checks every invariant of a scenario; throws ValidationError naming the field.
void validate(const Scenario& scenario);

/**
 * Parses and validates a JSON scenario document.
 *
 * Throws ParseError for malformed JSON, unknown keys, wrong value types and
 * missing required fields (the message names the field), and ValidationError
 * when a value violates a model constraint.
 */
Scenario load_scenario(std::string_view text);

/// Serializes to the same JSON schema, integrator block always written out.
std::string write_scenario(const Scenario& scenario);

/// alpha + beta >= 1: simulation is legal but equilibrium analysis will fail.
bool elasticity_warning(const Scenario& scenario);

/// Dispatches to the basic, chaos-modulated or controlled simulation.
Trajectory run_scenario(const Scenario& scenario);

} // namespace capedu
