#include "cli.hpp"

#include "capedu/analysis.hpp"
#include "capedu/chaos.hpp"
#include "capedu/control.hpp"
#include "capedu/csv.hpp"
#include "capedu/errors.hpp"
#include "capedu/phase.hpp"
#include "capedu/scenario.hpp"
#include "capedu/svg.hpp"
#include "capedu/sweep.hpp"

#include "CLI11.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace capedu::cli {

namespace {

namespace fs = std::filesystem;

/// Bad flag values or unreadable inputs.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double number(const std::string& text, const std::string& flag) {
    try {
        return parse_double(text);
    } catch (const ParseError&) {
        throw UsageError(flag + ": expected a number, got '" + text + "'");
    }
}

std::vector<double> number_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(number(item, flag));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::pair<double, double> number_pair(const std::string& text, const std::string& flag) {
    const auto v = number_list(text, flag);
    if (v.size() != 2)
        throw UsageError(flag + ": expected two comma-separated numbers");
    return {v[0], v[1]};
}

PhaseGrid parse_grid(const std::string& text) {
    const std::size_t sep = text.find_first_of("x,");
    if (sep == std::string::npos)
        throw UsageError("--grid: expected NKxNE, e.g. 9x9");
    auto count = [&](std::string_view part) {
        std::size_t v = 0;
        const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || end != part.data() + part.size())
            throw UsageError("--grid: expected NKxNE, e.g. 9x9");
        return v;
    };
    const std::string_view sv(text);
    return {count(sv.substr(0, sep)), count(sv.substr(sep + 1))};
}

std::string fixed(double v, int precision) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                         std::chars_format::fixed, precision);
    return ec == std::errc{} ? std::string(buf.data(), end) : format_double(v);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes via a sibling temporary and a rename so a failed run never leaves a
/// partial file behind.
void write_file_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw UsageError("cannot write '" + path + "'");
        f << content;
        if (!f.flush())
            throw UsageError("cannot write '" + path + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw UsageError("cannot write '" + path + "'");
    }
}

void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << content;
        if (!content.empty() && content.back() != '\n') out << '\n';
    } else {
        write_file_atomic(out_path, content);
    }
}

Scenario scenario_from(const std::string& path, std::ostream& err) {
    Scenario s = load_scenario(read_file(path));
    if (elasticity_warning(s))
        err << "warning: alpha + beta >= 1; equilibrium analysis is not available\n";
    return s;
}

unsigned default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::string complex_text(const std::complex<double>& z, int precision) {
    if (z.imag() == 0.0) return fixed(z.real(), precision);
    return fixed(z.real(), precision) + (z.imag() < 0 ? "-" : "+") +
           fixed(std::abs(z.imag()), precision) + "i";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Capital-education growth model: simulation, equilibria, sweeps, tipping "
                 "points and chaos diagnostics",
                 "capedu"};
    app.require_subcommand(1);

    // simulate
    std::string sim_scenario, sim_out, sim_svg;
    auto* simulate = app.add_subcommand("simulate", "Integrate a scenario and write its CSV");
    simulate->add_option("--scenario", sim_scenario, "Scenario JSON file")->required();
    simulate->add_option("--out", sim_out, "Output CSV path (default: stdout)");
    simulate->add_option("--svg", sim_svg, "Also write a Y(t), C(t) chart to this path");

    // equilibrium
    std::string eq_scenario, eq_out;
    int eq_precision = 4;
    auto* equilibrium_cmd =
        app.add_subcommand("equilibrium", "Closed-form equilibrium, eigenvalues and stability");
    equilibrium_cmd->add_option("--scenario", eq_scenario, "Scenario JSON file")->required();
    equilibrium_cmd->add_option("--precision", eq_precision, "Decimals printed")
        ->capture_default_str();
    equilibrium_cmd->add_option("--out", eq_out, "Output path (default: stdout)");

    // sweep
    std::string sw_scenario, sw_param, sw_values, sw_at, sw_out;
    unsigned sw_jobs = default_jobs();
    auto* sweep = app.add_subcommand("sweep", "Vary one parameter and report Y, C at a time");
    sweep->add_option("--scenario", sw_scenario, "Base scenario JSON file")->required();
    sweep->add_option("--param", sw_param,
                      "Parameter: s_k, s_r, delta_k, delta_r, alpha, beta, p, c")
        ->required();
    sweep->add_option("--values", sw_values, "Comma-separated values")->required();
    sweep->add_option("--at", sw_at, "Report time (default: scenario horizon)");
    sweep->add_option("--jobs", sw_jobs, "Worker threads (default: CAPEDU_JOBS or CPU count)")
        ->envname("CAPEDU_JOBS")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--out", sw_out, "Output CSV path (default: stdout)");

    // tipping
    std::string tp_scenario, tp_min = "0.40", tp_max = "0.55", tp_tol = "1e-3", tp_horizon, tp_out;
    auto* tipping = app.add_subcommand(
        "tipping", "Bisect the consumption target p where Y(T) returns to Y(0)");
    tipping->add_option("--scenario", tp_scenario, "Controlled scenario JSON file")->required();
    tipping->add_option("--p-min", tp_min, "Lower bracket end")->capture_default_str();
    tipping->add_option("--p-max", tp_max, "Upper bracket end")->capture_default_str();
    tipping->add_option("--tol", tp_tol, "Bracket width to stop at")->capture_default_str();
    tipping->add_option("--horizon", tp_horizon, "Time T (default: scenario horizon)");
    tipping->add_option("--out", tp_out, "Output path (default: stdout)");

    // chaos
    std::string ch_horizon = "100", ch_b = "0.55", ch_x0 = "0.5", ch_y0 = "0", ch_z0 = "0",
                ch_step = "0.01", ch_rel = "1e-10", ch_abs = "1e-12", ch_out;
    auto* chaos = app.add_subcommand("chaos", "Integrate the NE9 driver and print A(horizon)");
    chaos->add_option("--horizon", ch_horizon, "Integration horizon")->capture_default_str();
    chaos->add_option("--b", ch_b, "Dissipation constant")->capture_default_str();
    chaos->add_option("--x0", ch_x0, "Initial x")->capture_default_str();
    chaos->add_option("--y0", ch_y0, "Initial y")->capture_default_str();
    chaos->add_option("--z0", ch_z0, "Initial z")->capture_default_str();
    chaos->add_option("--sample-step", ch_step, "Output grid spacing")->capture_default_str();
    chaos->add_option("--rel-tol", ch_rel, "Relative tolerance")->capture_default_str();
    chaos->add_option("--abs-tol", ch_abs, "Absolute tolerance")->capture_default_str();
    chaos->add_option("--out", ch_out, "Write t,x,y,z,A CSV to this path");

    // phase
    std::string ph_scenario, ph_k = "0.5,8", ph_e = "0.1,2", ph_grid = "9x9", ph_horizon = "300",
                ph_out, ph_svg;
    auto* phase = app.add_subcommand("phase", "Vector field samples and orbits in the (K, E) plane");
    phase->add_option("--scenario", ph_scenario, "Scenario JSON file (params are used)")
        ->required();
    phase->add_option("--k-range", ph_k, "K range as low,high")->capture_default_str();
    phase->add_option("--e-range", ph_e, "E range as low,high")->capture_default_str();
    phase->add_option("--grid", ph_grid, "Field grid as NKxNE")->capture_default_str();
    phase->add_option("--horizon", ph_horizon, "Orbit horizon")->capture_default_str();
    phase->add_option("--out", ph_out, "Output CSV path (default: stdout)");
    phase->add_option("--svg", ph_svg, "Also write the orbits as an E-over-K chart");

    // plot
    std::vector<std::string> pl_csv, pl_labels;
    std::string pl_column = "Y", pl_title, pl_out;
    auto* plot = app.add_subcommand("plot", "Render one column of trajectory CSVs as SVG");
    plot->add_option("--csv", pl_csv, "Trajectory CSV (repeatable)")->required();
    plot->add_option("--column", pl_column, "Column to plot against t")->capture_default_str();
    plot->add_option("--label", pl_labels, "Legend label per CSV (default: file name)");
    plot->add_option("--title", pl_title, "Chart title");
    plot->add_option("--out", pl_out, "Output SVG path (default: stdout)");

    std::vector<std::string> rev;
    if (!args.empty()) rev.assign(args.rbegin(), std::prev(args.rend()));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*simulate) {
            const Scenario s = scenario_from(sim_scenario, err);
            const Trajectory traj = run_scenario(s);
            const std::string csv = write_trajectory_csv(traj);
            std::string svg;
            if (!sim_svg.empty()) {
                const std::vector<Series> series{{"Y", traj.t, traj.Y}, {"C", traj.t, traj.C}};
                svg = render_svg(series, std::string(to_string(s.kind)) + " scenario",
                                 {"t", "Y, C"});
            }
            if (traj.flags.constraint_violation)
                err << "warning: s_r left [s_r_floor, 1 - s_k] during the run\n";
            if (traj.flags.min_effective_sk && *traj.flags.min_effective_sk <= 0.0)
                err << "warning: effective capital share s_k + c x(t) reached "
                    << format_double(*traj.flags.min_effective_sk) << "\n";
            emit(csv, sim_out, out);
            if (!sim_svg.empty()) write_file_atomic(sim_svg, svg);
        } else if (*equilibrium_cmd) {
            const Scenario s = scenario_from(eq_scenario, err);
            const int prec = std::clamp(eq_precision, 0, 17);
            const EquilibriumReport r = s.kind == ScenarioKind::controlled
                                            ? controlled_equilibrium(s.params, s.control->p)
                                            : equilibrium_report(s.params);
            std::string text;
            text += "K0=" + fixed(r.K0, prec) + "\n";
            text += "E0=" + fixed(r.E0, prec) + "\n";
            text += "Y0=" + fixed(r.Y0, prec) + "\n";
            if (r.s_r) {
                text += "s_r*=" + fixed(*r.s_r, prec) + "\n";
                text += "C0=" + fixed(s.control->p * r.Y0, prec) + "\n";
            }
            text += "eigenvalues=";
            for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
                text += (i ? "," : "") + complex_text(r.eigenvalues[i], prec);
            text += "\nclass=" + std::string(to_string(r.classification)) + "\n";
            if (const auto ratio = invariant_manifold(s.params))
                text += "invariant_manifold=K=" + format_double(*ratio) + "*E\n";
            emit(text, eq_out, out);
        } else if (*sweep) {
            SweepSpec spec;
            spec.base = scenario_from(sw_scenario, err);
            spec.parameter = sw_param;
            spec.values = number_list(sw_values, "--values");
            spec.report_time = sw_at.empty() ? spec.base.horizon : number(sw_at, "--at");
            const auto rows = run_sweep(spec, sw_jobs);
            for (const auto& row : rows)
                if (!row.ok())
                    err << "row " << format_double(row.value) << ": " << row.error << "\n";
            emit(write_sweep_csv(rows), sw_out, out);
        } else if (*tipping) {
            const Scenario s = scenario_from(tp_scenario, err);
            if (!s.control)
                throw ValidationError("control", "tipping needs a controlled scenario");
            const double horizon = tp_horizon.empty() ? s.horizon : number(tp_horizon, "--horizon");
            const TippingResult r =
                find_tipping(s.params, s.initial, s.control->s_r0, horizon,
                             number(tp_min, "--p-min"), number(tp_max, "--p-max"),
                             number(tp_tol, "--tol"), s.integrator);
            std::string text;
            text += "p_star=" + fixed(r.p_star, 4) + "\n";
            text += "bracket=" + format_double(r.bracket.first) + "," +
                    format_double(r.bracket.second) + "\n";
            text += "growth_at_bracket=" + format_double(r.growth_at_bracket.first) + "," +
                    format_double(r.growth_at_bracket.second) + "\n";
            text += "horizon=" + format_double(r.horizon_used) + "\n";
            emit(text, tp_out, out);
        } else if (*chaos) {
            IntegratorSettings settings = kChaosSettings;
            settings.rel_tol = number(ch_rel, "--rel-tol");
            settings.abs_tol = number(ch_abs, "--abs-tol");
            const double horizon = number(ch_horizon, "--horizon");
            const RawTrajectory raw = simulate_ne9(
                number(ch_b, "--b"),
                {number(ch_x0, "--x0"), number(ch_y0, "--y0"), number(ch_z0, "--z0")}, horizon,
                settings, number(ch_step, "--sample-step"));
            const std::vector<double> x = component(raw, 0);
            const AverageSeries avg = running_average(raw.times, x);
            const std::string summary = "A(" + format_double(horizon) +
                                        ")=" + format_double(avg.values.back()) + "\n";
            if (!ch_out.empty()) {
                std::string csv = "t,x,y,z,A";
                for (std::size_t i = 0; i < raw.size(); ++i) {
                    csv += "\n" + format_double(raw.times[i]);
                    for (double v : raw.states[i]) csv += "," + format_double(v);
                    csv += ",";
                    if (i > 0) csv += format_double(avg.values[i - 1]);
                }
                write_file_atomic(ch_out, csv);
            }
            out << summary;
        } else if (*phase) {
            const Scenario s = scenario_from(ph_scenario, err);
            const PhasePortrait p = phase_portrait(
                s.params, number_pair(ph_k, "--k-range"), number_pair(ph_e, "--e-range"),
                parse_grid(ph_grid), number(ph_horizon, "--horizon"), s.integrator);
            for (std::size_t i = 0; i < p.orbits.size(); ++i)
                if (!p.orbits[i].ok())
                    err << "orbit " << i << ": " << p.orbits[i].error << "\n";
            std::string svg;
            if (!ph_svg.empty()) {
                std::vector<Series> series;
                for (std::size_t i = 0; i < p.orbits.size(); ++i)
                    if (p.orbits[i].ok())
                        series.push_back({"orbit " + std::to_string(i), p.orbits[i].K,
                                          p.orbits[i].E});
                if (p.equilibrium)
                    series.push_back({"equilibrium", {p.equilibrium->K}, {p.equilibrium->E}});
                svg = render_svg(series, "Phase plane", {"K", "E"});
            }
            emit(write_phase_csv(p), ph_out, out);
            if (!ph_svg.empty()) write_file_atomic(ph_svg, svg);
        } else if (*plot) {
            if (!pl_labels.empty() && pl_labels.size() != pl_csv.size())
                throw UsageError("--label must be given once per --csv");
            std::vector<Series> series;
            for (std::size_t i = 0; i < pl_csv.size(); ++i) {
                const Trajectory traj = read_trajectory_csv(read_file(pl_csv[i]));
                const std::string label =
                    pl_labels.empty() ? fs::path(pl_csv[i]).stem().string() : pl_labels[i];
                try {
                    series.push_back({label, traj.t, traj.column(pl_column)});
                } catch (const std::out_of_range& e) {
                    throw UsageError(e.what());
                }
            }
            emit(render_svg(series, pl_title.empty() ? pl_column + "(t)" : pl_title,
                            {"t", pl_column}),
                 pl_out, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kScenarioError;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kScenarioError;
    } catch (const NumericError& e) {
        err << "error: " << e.what();
        if (e.has_time()) err << " (t=" << format_double(e.time()) << ")";
        err << "\n";
        return kNumericFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumericFailure;
    }
    return kSuccess;
}

} // namespace capedu::cli
