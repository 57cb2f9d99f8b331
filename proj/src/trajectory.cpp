#include "capedu/trajectory.hpp"

#include "capedu/errors.hpp"

#include <stdexcept>
#include <string>

namespace capedu {

std::string_view to_string(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::basic: return "basic";
    case ScenarioKind::chaotic: return "chaotic";
    case ScenarioKind::controlled: return "controlled";
    }
    return "basic";
}

ScenarioKind parse_kind(std::string_view name) {
    if (name == "basic") return ScenarioKind::basic;
    if (name == "chaotic") return ScenarioKind::chaotic;
    if (name == "controlled") return ScenarioKind::controlled;
    throw ParseError("unknown scenario kind '" + std::string(name) +
                     "' (expected basic, chaotic or controlled)");
}

std::vector<std::string_view> Trajectory::columns(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::basic: return {"t", "K", "E", "Y", "C", "I_k", "I_r"};
    case ScenarioKind::controlled: return {"t", "K", "E", "s_r", "Y", "C", "I_k", "I_r"};
    case ScenarioKind::chaotic: return {"t", "K", "E", "x", "y", "z", "Y", "C", "I_k", "I_r"};
    }
    return {};
}

std::vector<double>& Trajectory::column(std::string_view name) {
    for (auto c : columns(kind)) {
        if (c != name) continue;
        if (name == "t") return t;
        if (name == "K") return K;
        if (name == "E") return E;
        if (name == "s_r") return s_r;
        if (name == "x") return x;
        if (name == "y") return y;
        if (name == "z") return z;
        if (name == "Y") return Y;
        if (name == "C") return C;
        if (name == "I_k") return I_k;
        if (name == "I_r") return I_r;
    }
    throw std::out_of_range("no column '" + std::string(name) + "' in a " +
                            std::string(to_string(kind)) + " trajectory");
}

const std::vector<double>& Trajectory::column(std::string_view name) const {
    return const_cast<Trajectory*>(this)->column(name);
}

} // namespace capedu
