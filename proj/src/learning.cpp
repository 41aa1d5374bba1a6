#include "lffc/learning.hpp"

#include <cmath>
#include <stdexcept>

namespace lffc {

Trajectory lpf_apply(const Trajectory& u, double tau, double h) {
    if (tau < 0.0) throw std::invalid_argument("low-pass tau must be >= 0");
    if (!(h > 0.0)) throw std::invalid_argument("low-pass h must be positive");
    if (u.channels() != 1) {
        throw std::invalid_argument("lpf_apply expects a 1-channel trajectory");
    }
    if (tau == 0.0) return u;
    Trajectory out = u;
    double a = std::exp(-h / tau);
    const auto& in = u.values[0];
    auto& y = out.values[0];
    y[0] = in[0];
    for (size_t k = 1; k < in.size(); ++k) {
        y[k] = a * y[k - 1] + (1.0 - a) * in[k];
    }
    return out;
}

Trajectory lffc_update(const MemoryBank& memory, const LearningConfig& cfg,
                       double h) {
    const Trajectory& u_F = memory.u_F_prev;
    const Trajectory& u_C = memory.u_C_prev;
    if (!u_F.grid.same_as(u_C.grid) || u_F.channels() != 2 || u_C.channels() != 2) {
        throw std::invalid_argument(
            "memory bank needs two 2-channel trajectories on one grid");
    }
    Trajectory out = u_F;
    for (int ch = 0; ch < 2; ++ch) {
        Trajectory one;
        one.grid = u_C.grid;
        one.values = {u_C.values[ch]};
        if (cfg.filter == FilterKind::Identity) {
            for (int k = 0; k < out.grid.n; ++k) {
                out.values[ch][k] += cfg.gamma * one.values[0][k];
            }
        } else if (cfg.filter == FilterKind::LowPass) {
            Trajectory filtered = lpf_apply(one, cfg.tau, h);
            for (int k = 0; k < out.grid.n; ++k) {
                out.values[ch][k] += cfg.gamma * filtered.values[0][k];
            }
        } else if (cfg.filter == FilterKind::Bsn) {
            // Fresh weights each iteration: the network is the projection
            // filter, not a carried state.
            BsnWeights w = bsn_learn(cfg.bsn[ch], zero_weights(cfg.bsn[ch]),
                                     one, cfg.gamma);
            for (int k = 0; k < out.grid.n; ++k) {
                double t = out.grid.t(k);
                double inc = cfg.bsn_normalized
                                 ? bsn_eval_normalized(cfg.bsn[ch], w, t)
                                 : bsn_eval(cfg.bsn[ch], w, t);
                out.values[ch][k] += inc;
            }
        } else {
            throw std::invalid_argument("unknown learning filter kind");
        }
    }
    return out;
}

std::array<double, 2> compose_control(const std::array<double, 2>& u_C,
                                      const std::array<double, 2>& u_F) {
    return {u_C[0] + u_F[0], u_C[1] + u_F[1]};
}

}  // namespace lffc
