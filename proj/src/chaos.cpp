#include "capedu/chaos.hpp"

#include "capedu/errors.hpp"
#include "derived.hpp"

#include <algorithm>
#include <limits>

namespace capedu {

RawTrajectory simulate_ne9(double b, const Ne9State& initial, double horizon,
                           const IntegratorSettings& settings, double sample_step) {
    if (!(horizon > 0.0))
        throw ValidationError("horizon", "horizon must be positive");
    return integrate(make_ne9_field(b), {initial.x, initial.y, initial.z}, 0.0, horizon, settings,
                     sample_step);
}

std::vector<double> cumulative_trapezoid(std::span<const double> times,
                                         std::span<const double> values) {
    if (times.size() != values.size())
        throw Error("cumulative_trapezoid: times and values differ in length");
    std::vector<double> out(times.size(), 0.0);
    for (std::size_t i = 1; i < times.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
    return out;
}

AverageSeries running_average(std::span<const double> times, std::span<const double> values) {
    if (times.size() < 2)
        throw Error("running_average needs at least two samples");
    if (times.front() != 0.0)
        throw Error("running_average expects the series to start at t = 0");

    const std::vector<double> integral = cumulative_trapezoid(times, values);
    AverageSeries out;
    out.times.reserve(times.size() - 1);
    out.values.reserve(times.size() - 1);
    for (std::size_t i = 1; i < times.size(); ++i) {
        out.times.push_back(times[i]);
        out.values.push_back(integral[i] / times[i]);
    }
    return out;
}

std::vector<double> component(const RawTrajectory& raw, std::size_t index) {
    std::vector<double> out;
    out.reserve(raw.size());
    for (const auto& s : raw.states)
        out.push_back(s.at(index));
    return out;
}

Trajectory simulate_modulated(const ModelParams& params, double c, const EconState& econ0,
                              const Ne9State& chaos0, double b, double horizon,
                              const IntegratorSettings& settings, double sample_step) {
    if (!(horizon > 0.0))
        throw ValidationError("horizon", "horizon must be positive");
    (void)production(params, econ0);

    const RawTrajectory raw =
        integrate(make_modulated_field(params, c, b),
                  {econ0.K, econ0.E, chaos0.x, chaos0.y, chaos0.z}, 0.0, horizon, settings,
                  sample_step);

    Trajectory out;
    out.kind = ScenarioKind::chaotic;
    out.t = raw.times;
    std::vector<double> effective_sk;
    effective_sk.reserve(raw.size());
    double min_sk = std::numeric_limits<double>::infinity();
    for (const auto& s : raw.states) {
        out.K.push_back(s[0]);
        out.E.push_back(s[1]);
        out.x.push_back(s[2]);
        out.y.push_back(s[3]);
        out.z.push_back(s[4]);
        effective_sk.push_back(params.s_k + c * s[2]);
        min_sk = std::min(min_sk, effective_sk.back());
    }
    out.flags.min_effective_sk = min_sk;
    detail::attach_derived(params, out, &effective_sk, nullptr);
    return out;
}

} // namespace capedu
