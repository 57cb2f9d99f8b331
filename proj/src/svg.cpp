#include "capedu/svg.hpp"

#include "capedu/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace capedu {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fixed(double v, int digits = 2) {
    std::array<char, 64> buf{};
    const auto [end, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, digits);
    if (ec != std::errc{})
        return "0";
    std::string s(buf.data(), end);
    return s == "-0.00" ? "0.00" : s;
}

std::string tick_label(double v) {
    std::array<char, 64> buf{};
    const auto [end, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 6);
    return ec == std::errc{} ? std::string(buf.data(), end) : "?";
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        } else if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) {
            const double d = std::max(std::abs(hi) * 0.05, 0.5);
            lo -= d;
            hi += d;
        }
    }
};

// 1, 2 or 5 times a power of ten, giving roughly `target` intervals.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

} // namespace

std::string render_svg(std::span<const Series> series, const std::string& title,
                       const SvgOptions& opt) {
    if (series.empty())
        throw EmptySeries("no series to plot");
    Range xr, yr;
    for (const auto& s : series) {
        if (s.times.size() != s.values.size())
            throw Error("series '" + s.label + "' has mismatched lengths");
        if (s.times.empty())
            throw EmptySeries("series '" + s.label + "' is empty");
        for (double v : s.times) xr.add(v);
        for (double v : s.values) yr.add(v);
    }
    xr.pad();
    yr.pad();

    const double left = 70, right = 20, top = 40, bottom = 50;
    const double pw = opt.width - left - right;
    const double ph = opt.height - top - bottom;
    auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) +
           "\" height=\"" + std::to_string(opt.height) + "\" viewBox=\"0 0 " +
           std::to_string(opt.width) + " " + std::to_string(opt.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fixed(opt.width / 2.0) + "\" y=\"24\" text-anchor=\"middle\" " +
           "font-family=\"sans-serif\" font-size=\"16\">" + escape(title) + "</text>\n";

    // axes
    out += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    out += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top + ph) + "\" x2=\"" +
           fixed(left + pw) + "\" y2=\"" + fixed(top + ph) + "\"/>\n";
    out += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(left) +
           "\" y2=\"" + fixed(top + ph) + "\"/>\n";
    out += "</g>\n";

    out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    const double xs = nice_step(xr.hi - xr.lo, 6);
    for (double v = std::ceil(xr.lo / xs) * xs; v <= xr.hi + 1e-9 * xs; v += xs) {
        const double x = px(v);
        out += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(top + ph) + "\" x2=\"" + fixed(x) +
               "\" y2=\"" + fixed(top + ph + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(top + ph + 18) +
               "\" text-anchor=\"middle\">" + tick_label(std::abs(v) < 1e-12 * xs ? 0.0 : v) +
               "</text>\n";
    }
    const double ys = nice_step(yr.hi - yr.lo, 5);
    for (double v = std::ceil(yr.lo / ys) * ys; v <= yr.hi + 1e-9 * ys; v += ys) {
        const double y = py(v);
        out += "<line x1=\"" + fixed(left - 5) + "\" y1=\"" + fixed(y) + "\" x2=\"" +
               fixed(left) + "\" y2=\"" + fixed(y) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fixed(left - 8) + "\" y=\"" + fixed(y + 4) +
               "\" text-anchor=\"end\">" + tick_label(std::abs(v) < 1e-12 * ys ? 0.0 : v) +
               "</text>\n";
    }
    out += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"" + fixed(opt.height - 10.0) +
           "\" text-anchor=\"middle\">" + escape(opt.x_label) + "</text>\n";
    if (!opt.y_label.empty())
        out += "<text x=\"16\" y=\"" + fixed(top + ph / 2) +
               "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + fixed(top + ph / 2) +
               ")\">" + escape(opt.y_label) + "</text>\n";
    out += "</g>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        out += "<polyline fill=\"none\" stroke=\"" + std::string(kPalette[i % kPalette.size()]) +
               "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < s.times.size(); ++k) {
            if (!std::isfinite(s.times[k]) || !std::isfinite(s.values[k])) continue;
            if (k) out += ' ';
            out += fixed(px(s.times[k])) + "," + fixed(py(s.values[k]));
        }
        out += "\"/>\n";
    }

    // legend
    out += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double y = top + 14 + 18.0 * static_cast<double>(i);
        const double x = left + pw - 150;
        out += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(y - 4) + "\" x2=\"" +
               fixed(x + 24) + "\" y2=\"" + fixed(y - 4) + "\" stroke=\"" +
               kPalette[i % kPalette.size()] + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + fixed(x + 30) + "\" y=\"" + fixed(y) + "\">" +
               escape(series[i].label) + "</text>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

} // namespace capedu
