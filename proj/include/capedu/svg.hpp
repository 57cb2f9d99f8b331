#pragma once

#include <span>
#include <string>
#include <vector>

namespace capedu {

/// One labelled curve; `times` is the horizontal coordinate.
struct Series {
    std::string label;
    std::vector<double> times;
    std::vector<double> values;
};

struct SvgOptions {
    std::string x_label = "t";
    std::string y_label;
    int width = 800;
    int height = 500;
};

/// Standalone SVG line chart with axes, ticks, one polyline per series and a
/// legend. Output is byte-for-byte deterministic. Throws EmptySeries when
/// there is nothing to draw and Error on mismatched series lengths.
std::string render_svg(std::span<const Series> series, const std::string& title,
                       const SvgOptions& options = {});

} // namespace capedu
