#pragma once

#include "capedu/integrator.hpp"
#include "capedu/model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace capedu {

struct PhaseGrid {
    std::size_t nK = 9;
    std::size_t nE = 9;
};

struct FieldSample {
    double K, E, dK, dE;
};

struct PhaseOrbit {
    EconState start;
    std::vector<double> t, K, E;
    std::string error; ///< why integration stopped early; empty when it reached the horizon

    bool ok() const noexcept { return error.empty(); }
};

struct PhasePortrait {
    std::vector<FieldSample> field; ///< row-major over E, then K
    std::vector<PhaseOrbit> orbits;
    std::optional<EconState> equilibrium; ///< absent when alpha + beta == 1
};

/**
 * Samples the basic vector field on an nK x nE grid over the given ranges and
 * integrates one orbit from each corner of the region and from each edge
 * midpoint (8 orbits). Orbits that fail are kept with their error message so
 * diverging or collapsing parameter sets still produce a picture.
 *
 * Throws DomainError for non-positive range bounds and ValidationError for an
 * empty range or a grid smaller than 2 x 2.
 */
PhasePortrait phase_portrait(const ModelParams& params, std::pair<double, double> K_range,
                             std::pair<double, double> E_range, PhaseGrid grid, double horizon,
                             const IntegratorSettings& settings = {}, double sample_step = 0.5);

/// record,index,t,K,E,dK,dE with record "field" (t empty) or "orbit" (dK, dE empty).
std::string write_phase_csv(const PhasePortrait& portrait);

} // namespace capedu
