#include "capedu/phase.hpp"

#include "capedu/analysis.hpp"
#include "capedu/csv.hpp"
#include "capedu/errors.hpp"

namespace capedu {

namespace {

void check_range(std::pair<double, double> r, const char* name) {
    if (!(r.first > 0.0) || !(r.second > 0.0))
        throw DomainError(std::string(name) + " range bounds must be positive");
    if (!(r.first < r.second))
        throw ValidationError(name, std::string(name) + " range must satisfy low < high");
}

double lerp(std::pair<double, double> r, std::size_t i, std::size_t n) {
    return r.first + (r.second - r.first) * static_cast<double>(i) / static_cast<double>(n - 1);
}

} // namespace

PhasePortrait phase_portrait(const ModelParams& params, std::pair<double, double> K_range,
                             std::pair<double, double> E_range, PhaseGrid grid, double horizon,
                             const IntegratorSettings& settings, double sample_step) {
    check_range(K_range, "K");
    check_range(E_range, "E");
    if (grid.nK < 2 || grid.nE < 2)
        throw ValidationError("grid", "phase grid must be at least 2 x 2");
    if (!(horizon > 0.0))
        throw ValidationError("horizon", "horizon must be positive");

    PhasePortrait out;
    out.field.reserve(grid.nK * grid.nE);
    for (std::size_t j = 0; j < grid.nE; ++j)
        for (std::size_t i = 0; i < grid.nK; ++i) {
            const EconState s{lerp(K_range, i, grid.nK), lerp(E_range, j, grid.nE)};
            const EconRate r = basic_field(params, s);
            out.field.push_back({s.K, s.E, r.dK, r.dE});
        }

    try {
        out.equilibrium = equilibrium(params);
    } catch (const Error&) {
        out.equilibrium.reset();
    }

    const auto [k0, k1] = K_range;
    const auto [e0, e1] = E_range;
    const double km = 0.5 * (k0 + k1), em = 0.5 * (e0 + e1);
    const EconState starts[] = {{k0, e0}, {k1, e0}, {k1, e1}, {k0, e1},
                                {km, e0}, {k1, em}, {km, e1}, {k0, em}};

    const VectorField field = make_basic_field(params);
    for (const EconState& start : starts) {
        PhaseOrbit orbit;
        orbit.start = start;
        try {
            const RawTrajectory raw =
                integrate(field, {start.K, start.E}, 0.0, horizon, settings, sample_step);
            orbit.t = raw.times;
            for (const auto& s : raw.states) {
                orbit.K.push_back(s[0]);
                orbit.E.push_back(s[1]);
            }
        } catch (const NumericError& e) {
            orbit.error = e.what();
            if (e.has_time())
                orbit.error += " at t=" + format_double(e.time());
        }
        out.orbits.push_back(std::move(orbit));
    }
    return out;
}

std::string write_phase_csv(const PhasePortrait& p) {
    std::string out = "record,index,t,K,E,dK,dE";
    for (std::size_t i = 0; i < p.field.size(); ++i) {
        const auto& f = p.field[i];
        out += "\nfield," + std::to_string(i) + ",," + format_double(f.K) + "," +
               format_double(f.E) + "," + format_double(f.dK) + "," + format_double(f.dE);
    }
    for (std::size_t o = 0; o < p.orbits.size(); ++o) {
        const auto& orbit = p.orbits[o];
        for (std::size_t k = 0; k < orbit.t.size(); ++k)
            out += "\norbit," + std::to_string(o) + "," + format_double(orbit.t[k]) + "," +
                   format_double(orbit.K[k]) + "," + format_double(orbit.E[k]) + ",,";
    }
    return out;
}

} // namespace capedu
