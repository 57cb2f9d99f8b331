#pragma once

#include "capedu/model.hpp"
#include "oracles.hpp"

namespace testing {

inline capedu::ModelParams to_model(const oracle::Params& p) {
    return {p.s_k, p.s_r, p.delta_k, p.delta_r, p.alpha, p.beta, 0.0};
}

inline capedu::ModelParams fig1() { return to_model(oracle::kFig1); }

/// Reference parameters with delta_r = 0.15, used by the chaotic runs.
inline capedu::ModelParams fig4() {
    auto p = fig1();
    p.delta_r = 0.15;
    return p;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace testing
