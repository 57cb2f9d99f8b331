#pragma once

#include "capedu/model.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace capedu {

enum class ScenarioKind { basic, chaotic, controlled };

std::string_view to_string(ScenarioKind kind);
/// Throws ParseError on an unknown name.
ScenarioKind parse_kind(std::string_view name);

struct TrajectoryFlags {
    /// controlled runs: s_r left [s_r_floor, 1 - s_k] at some sample
    bool constraint_violation = false;
    /// chaotic runs: minimum over samples of s_k + c x(t)
    std::optional<double> min_effective_sk;
};

/// Sampled run with derived economic series. Columns that do not belong to the
/// kind stay empty.
struct Trajectory {
    ScenarioKind kind = ScenarioKind::basic;
    std::vector<double> t, K, E;
    std::vector<double> s_r;     // controlled
    std::vector<double> x, y, z; // chaotic
    std::vector<double> Y, C, I_k, I_r;
    TrajectoryFlags flags;

    std::size_t size() const noexcept { return t.size(); }

    /// Column order used for serialization.
    static std::vector<std::string_view> columns(ScenarioKind kind);
    /// Throws std::out_of_range for a name not present in this kind.
    const std::vector<double>& column(std::string_view name) const;
    std::vector<double>& column(std::string_view name);
};

} // namespace capedu
