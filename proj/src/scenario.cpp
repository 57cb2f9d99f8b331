#include "capedu/scenario.hpp"

#include "capedu/chaos.hpp"
#include "capedu/control.hpp"
#include "capedu/errors.hpp"
#include "capedu/simulate.hpp"

#include "json.hpp"

#include <cmath>
#include <initializer_list>
#include <string>

namespace capedu {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string path_of(std::string_view parent, std::string_view key) {
    return parent.empty() ? std::string(key) : std::string(parent) + "." + std::string(key);
}

void reject_unknown(const json& obj, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (auto a : allowed)
            known |= key == a;
        if (!known)
            throw ParseError("unknown field '" + path_of(where, key) + "'");
    }
}

const json& require_object(const json& parent, std::string_view where, const char* key) {
    const auto it = parent.find(key);
    if (it == parent.end())
        throw ParseError("missing required field '" + path_of(where, key) + "'");
    if (!it->is_object())
        throw ParseError("field '" + path_of(where, key) + "' must be an object");
    return *it;
}

double number_at(const json& node, const std::string& path) {
    if (!node.is_number())
        throw ParseError("field '" + path + "' must be a number");
    const double v = node.get<double>();
    if (!std::isfinite(v))
        throw ParseError("field '" + path + "' must be finite");
    return v;
}

double require_number(const json& parent, std::string_view where, const char* key) {
    const auto it = parent.find(key);
    if (it == parent.end())
        throw ParseError("missing required field '" + path_of(where, key) + "'");
    return number_at(*it, path_of(where, key));
}

void read_optional(const json& parent, std::string_view where, const char* key, double& out) {
    if (const auto it = parent.find(key); it != parent.end())
        out = number_at(*it, path_of(where, key));
}

} // namespace

IntegratorSettings default_settings(ScenarioKind kind) {
    return kind == ScenarioKind::chaotic ? kChaosSettings : IntegratorSettings{};
}

bool elasticity_warning(const Scenario& s) { return elasticity_warning(s.params); }

void validate(const Scenario& s) {
    validate(s.params);
    if (!(s.initial.K > 0.0))
        throw ValidationError("initial.K", "initial.K must be positive");
    if (!(s.initial.E > 0.0))
        throw ValidationError("initial.E", "initial.E must be positive");
    if (!(s.horizon > 0.0) || !std::isfinite(s.horizon))
        throw ValidationError("horizon", "horizon must be positive");
    if (!(s.sample_step > 0.0) || !std::isfinite(s.sample_step))
        throw ValidationError("sample_step", "sample_step must be positive");
    try {
        validate(s.integrator);
    } catch (const ValidationError& e) {
        throw ValidationError("integrator." + e.field(), std::string("integrator.") + e.what());
    }

    const bool wants_control = s.kind == ScenarioKind::controlled;
    const bool wants_chaos = s.kind == ScenarioKind::chaotic;
    if (wants_control != s.control.has_value())
        throw ValidationError("control", wants_control
                                             ? "controlled scenarios need a control block"
                                             : "control block is only valid for kind controlled");
    if (wants_chaos != s.chaos.has_value())
        throw ValidationError("chaos", wants_chaos ? "chaotic scenarios need a chaos block"
                                                   : "chaos block is only valid for kind chaotic");
    if (s.control) {
        if (!(s.control->p > 0.0) || !(s.control->p < 1.0 - s.params.s_k))
            throw ValidationError("control.p", "control.p must lie in (0, 1 - s_k)");
        if (!(s.control->s_r0 > 0.0))
            throw ValidationError("control.s_r0", "control.s_r0 must be positive");
    }
}

Scenario load_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed scenario document: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("scenario document must be a JSON object");
    reject_unknown(doc, "",
                   {"kind", "params", "initial", "control", "chaos", "horizon", "sample_step",
                    "integrator"});

    Scenario s;
    const auto kind_it = doc.find("kind");
    if (kind_it == doc.end())
        throw ParseError("missing required field 'kind'");
    if (!kind_it->is_string())
        throw ParseError("field 'kind' must be a string");
    s.kind = parse_kind(kind_it->get<std::string>());

    const json& params = require_object(doc, "", "params");
    reject_unknown(params, "params",
                   {"s_k", "s_r", "delta_k", "delta_r", "alpha", "beta", "s_r_floor"});
    s.params.s_k = require_number(params, "params", "s_k");
    s.params.s_r = require_number(params, "params", "s_r");
    s.params.delta_k = require_number(params, "params", "delta_k");
    s.params.delta_r = require_number(params, "params", "delta_r");
    s.params.alpha = require_number(params, "params", "alpha");
    s.params.beta = require_number(params, "params", "beta");
    s.params.s_r_floor = 0.0;
    read_optional(params, "params", "s_r_floor", s.params.s_r_floor);

    const json& initial = require_object(doc, "", "initial");
    reject_unknown(initial, "initial", {"K", "E"});
    s.initial.K = require_number(initial, "initial", "K");
    s.initial.E = require_number(initial, "initial", "E");

    if (doc.contains("control")) {
        const json& control = require_object(doc, "", "control");
        reject_unknown(control, "control", {"p", "s_r0"});
        s.control = ControlSpec{require_number(control, "control", "p"),
                                require_number(control, "control", "s_r0")};
    } else if (s.kind == ScenarioKind::controlled) {
        throw ParseError("missing required field 'control'");
    }

    if (doc.contains("chaos")) {
        const json& chaos = require_object(doc, "", "chaos");
        reject_unknown(chaos, "chaos", {"c", "x0", "y0", "z0", "b"});
        ChaosSpec spec;
        spec.c = require_number(chaos, "chaos", "c");
        read_optional(chaos, "chaos", "x0", spec.x0);
        read_optional(chaos, "chaos", "y0", spec.y0);
        read_optional(chaos, "chaos", "z0", spec.z0);
        read_optional(chaos, "chaos", "b", spec.b);
        s.chaos = spec;
    } else if (s.kind == ScenarioKind::chaotic) {
        throw ParseError("missing required field 'chaos'");
    }

    s.horizon = require_number(doc, "", "horizon");
    s.sample_step = require_number(doc, "", "sample_step");

    s.integrator = default_settings(s.kind);
    if (doc.contains("integrator")) {
        const json& integ = require_object(doc, "", "integrator");
        reject_unknown(integ, "integrator",
                       {"rel_tol", "abs_tol", "initial_step", "max_step", "max_steps"});
        read_optional(integ, "integrator", "rel_tol", s.integrator.rel_tol);
        read_optional(integ, "integrator", "abs_tol", s.integrator.abs_tol);
        read_optional(integ, "integrator", "initial_step", s.integrator.initial_step);
        read_optional(integ, "integrator", "max_step", s.integrator.max_step);
        if (const auto it = integ.find("max_steps"); it != integ.end()) {
            if (!it->is_number_integer() || it->get<long long>() <= 0)
                throw ParseError("field 'integrator.max_steps' must be a positive integer");
            s.integrator.max_steps = it->get<std::size_t>();
        }
    }

    validate(s);
    return s;
}

std::string write_scenario(const Scenario& s) {
    ordered_json doc;
    doc["kind"] = std::string(to_string(s.kind));
    doc["params"] = {{"s_k", s.params.s_k},         {"s_r", s.params.s_r},
                     {"delta_k", s.params.delta_k}, {"delta_r", s.params.delta_r},
                     {"alpha", s.params.alpha},     {"beta", s.params.beta},
                     {"s_r_floor", s.params.s_r_floor}};
    doc["initial"] = {{"K", s.initial.K}, {"E", s.initial.E}};
    if (s.control)
        doc["control"] = {{"p", s.control->p}, {"s_r0", s.control->s_r0}};
    if (s.chaos)
        doc["chaos"] = {{"c", s.chaos->c},   {"x0", s.chaos->x0}, {"y0", s.chaos->y0},
                        {"z0", s.chaos->z0}, {"b", s.chaos->b}};
    doc["horizon"] = s.horizon;
    doc["sample_step"] = s.sample_step;
    doc["integrator"] = {{"rel_tol", s.integrator.rel_tol},
                         {"abs_tol", s.integrator.abs_tol},
                         {"initial_step", s.integrator.initial_step},
                         {"max_step", s.integrator.max_step},
                         {"max_steps", s.integrator.max_steps}};
    return doc.dump(2) + "\n";
}

Trajectory run_scenario(const Scenario& s) {
    validate(s);
    switch (s.kind) {
    case ScenarioKind::basic:
        return simulate_basic(s.params, s.initial, s.horizon, s.integrator, s.sample_step);
    case ScenarioKind::chaotic:
        return simulate_modulated(s.params, s.chaos->c, s.initial, s.chaos->initial(),
                                  s.chaos->b, s.horizon, s.integrator, s.sample_step);
    case ScenarioKind::controlled:
        return simulate_controlled(s.params, s.control->p, s.initial, s.control->s_r0,
                                   s.horizon, s.integrator, s.sample_step);
    }
    throw Error("unreachable scenario kind");
}

} // namespace capedu
