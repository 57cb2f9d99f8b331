#include "capedu/sweep.hpp"

#include "capedu/csv.hpp"
#include "capedu/errors.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace capedu {

namespace {

double* parameter_slot(Scenario& s, std::string_view name) {
    if (name == "s_k") return &s.params.s_k;
    if (name == "s_r") return &s.params.s_r;
    if (name == "delta_k") return &s.params.delta_k;
    if (name == "delta_r") return &s.params.delta_r;
    if (name == "alpha") return &s.params.alpha;
    if (name == "beta") return &s.params.beta;
    if (name == "p") return s.control ? &s.control->p : nullptr;
    if (name == "c") return s.chaos ? &s.chaos->c : nullptr;
    return nullptr;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

SweepRow run_row(const SweepSpec& spec, double value) {
    SweepRow row;
    row.value = value;
    try {
        const Trajectory traj = run_scenario(sweep_scenario(spec, value));
        row.Y = traj.Y.back();
        row.C = traj.C.back();
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

} // namespace

void validate(const SweepSpec& spec) {
    Scenario probe = spec.base;
    if (!parameter_slot(probe, spec.parameter))
        throw ValidationError("parameter", "parameter '" + spec.parameter +
                                               "' cannot be swept for a " +
                                               std::string(to_string(spec.base.kind)) +
                                               " scenario");
    if (spec.values.empty())
        throw ValidationError("values", "sweep needs at least one value");
    if (!(spec.report_time > 0.0))
        throw ValidationError("report_time", "report_time must be positive");
}

Scenario sweep_scenario(const SweepSpec& spec, double value) {
    Scenario s = spec.base;
    double* slot = parameter_slot(s, spec.parameter);
    if (!slot)
        throw ValidationError("parameter", "unknown sweep parameter '" + spec.parameter + "'");
    *slot = value;
    s.horizon = spec.report_time;
    validate(s);
    return s;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned jobs) {
    validate(spec);
    std::vector<SweepRow> rows(spec.values.size());
    const unsigned workers =
        std::clamp<unsigned>(jobs, 1u, static_cast<unsigned>(spec.values.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            rows[i] = run_row(spec, spec.values[i]);
        return rows;
    }

    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < rows.size(); i = next++)
                    rows[i] = run_row(spec, spec.values[i]);
            });
    }
    return rows;
}

std::string write_sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "value,Y,C,error";
    for (const auto& r : rows) {
        out += '\n';
        out += format_double(r.value);
        out += ',';
        if (r.ok()) {
            out += format_double(r.Y);
            out += ',';
            out += format_double(r.C);
        } else {
            out += ',';
        }
        out += ',';
        out += csv_field(r.error);
    }
    return out;
}

} // namespace capedu
