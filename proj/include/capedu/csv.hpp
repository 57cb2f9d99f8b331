#pragma once

#include "capedu/trajectory.hpp"

#include <string>
#include <string_view>

namespace capedu {

/// Shortest decimal that parses back to exactly `value`; locale independent.
std::string format_double(double value);

/// Locale-independent parse of the whole of `text`; throws ParseError.
double parse_double(std::string_view text);

/// Header plus one row per sample, columns fixed per kind, rows separated by
/// "\n" with no separator after the last row.
std::string write_trajectory_csv(const Trajectory& traj);

/// Inverse of write_trajectory_csv; the kind is recognised from the header.
/// Flags are not part of the format and come back defaulted.
Trajectory read_trajectory_csv(std::string_view text);

} // namespace capedu
