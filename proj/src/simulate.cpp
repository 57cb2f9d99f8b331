#include "capedu/simulate.hpp"

#include "capedu/errors.hpp"
#include "derived.hpp"

namespace capedu {

Trajectory simulate_basic(const ModelParams& params, const EconState& econ0, double horizon,
                          const IntegratorSettings& settings, double sample_step) {
    // evaluates the domain guard on the initial state
    (void)production(params, econ0);
    const RawTrajectory raw =
        integrate(make_basic_field(params), {econ0.K, econ0.E}, 0.0, horizon, settings, sample_step);

    Trajectory out;
    out.kind = ScenarioKind::basic;
    out.t = raw.times;
    for (const auto& s : raw.states) {
        out.K.push_back(s[0]);
        out.E.push_back(s[1]);
    }
    detail::attach_derived(params, out, nullptr, nullptr);
    return out;
}

} // namespace capedu
