#include "capedu/csv.hpp"

#include "capedu/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <vector>

namespace capedu {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

std::string format_double(double value) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{})
        throw Error("could not format number");
    return std::string(buf.data(), end);
}

double parse_double(std::string_view text) {
    // from_chars rejects a leading '+', which hand-written inputs do use
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty())
        throw ParseError("not a number: '" + std::string(text) + "'");
    return value;
}

std::string write_trajectory_csv(const Trajectory& traj) {
    const auto names = Trajectory::columns(traj.kind);
    std::vector<const std::vector<double>*> cols;
    std::string out;
    for (std::size_t c = 0; c < names.size(); ++c) {
        cols.push_back(&traj.column(names[c]));
        if (cols.back()->size() != traj.size())
            throw Error("trajectory column '" + std::string(names[c]) + "' has the wrong length");
        if (c) out += ',';
        out += names[c];
    }
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out += '\n';
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) out += ',';
            out += format_double((*cols[c])[i]);
        }
    }
    return out;
}

Trajectory read_trajectory_csv(std::string_view text) {
    if (!text.empty() && text.back() == '\n')
        text.remove_suffix(1);
    const auto lines = split(text, '\n');
    const auto header = split(lines.front(), ',');

    Trajectory traj;
    bool matched = false;
    for (auto kind : {ScenarioKind::basic, ScenarioKind::controlled, ScenarioKind::chaotic}) {
        const auto names = Trajectory::columns(kind);
        if (std::equal(names.begin(), names.end(), header.begin(), header.end())) {
            traj.kind = kind;
            matched = true;
            break;
        }
    }
    if (!matched)
        throw ParseError("unrecognised trajectory header '" + std::string(lines.front()) + "'");

    const auto names = Trajectory::columns(traj.kind);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto fields = split(lines[li], ',');
        if (fields.size() != names.size())
            throw ParseError("row " + std::to_string(li) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(names.size()));
        for (std::size_t c = 0; c < names.size(); ++c)
            traj.column(names[c]).push_back(parse_double(fields[c]));
    }
    return traj;
}

} // namespace capedu
