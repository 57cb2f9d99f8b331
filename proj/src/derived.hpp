#pragma once

#include "capedu/model.hpp"
#include "capedu/trajectory.hpp"

#include <vector>

namespace capedu::detail {

/// Fills Y, C, I_k, I_r from the K and E columns. A null `effective_sk`
/// means the constant params.s_k; a null `s_r` means the constant params.s_r.
inline void attach_derived(const ModelParams& params, Trajectory& traj,
                           const std::vector<double>* effective_sk,
                           const std::vector<double>* s_r) {
    const std::size_t n = traj.size();
    traj.Y.resize(n);
    traj.C.resize(n);
    traj.I_k.resize(n);
    traj.I_r.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        ModelParams local = params;
        if (effective_sk) local.s_k = (*effective_sk)[i];
        if (s_r) local.s_r = (*s_r)[i];
        const double Y = production(local, {traj.K[i], traj.E[i]});
        const Investments inv = investments(local, Y);
        traj.Y[i] = Y;
        traj.I_k[i] = inv.I_k;
        traj.I_r[i] = inv.I_r;
        traj.C[i] = consumption(local, local.s_r, Y);
    }
}

} // namespace capedu::detail
