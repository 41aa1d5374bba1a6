#pragma once

#include <array>

#include "lffc/bsn.hpp"
#include "lffc/signals.hpp"

namespace lffc {

// Signals stored between repetitive operations: the previous iteration's
// feedforward and feedback trajectories. Iteration 0 means no episode has
// run yet and u_F_prev must be all zero.
struct MemoryBank {
    int iteration = 0;
    Trajectory u_F_prev;  // 2 channels
    Trajectory u_C_prev;  // 2 channels
};

enum class FilterKind { Identity, LowPass, Bsn };

struct LearningConfig {
    double gamma = 0.1;
    FilterKind filter = FilterKind::LowPass;
    double tau = 0.0;                    // LowPass time constant, >= 0
    std::array<BsnConfig, 2> bsn{};     // per-channel geometry (shared by default)
    bool bsn_normalized = true;          // evaluate Bsn increments as eval/dilation
};

// Causal first-order low-pass y_k = a*y_{k-1} + (1-a)*u_k with
// a = exp(-h/tau); tau = 0 is the exact identity. y_0 = u_0.
Trajectory lpf_apply(const Trajectory& u, double tau, double h);

// One learning step of u_F_new = u_F_prev + gamma * F(u_C_prev), where F is
// the identity, the low-pass filter, or a fresh-weights BSN projection of
// u_C_prev (weights are not carried across iterations).
Trajectory lffc_update(const MemoryBank& memory, const LearningConfig& cfg,
                       double h);

// Elementwise sum; saturation is the plant's job.
std::array<double, 2> compose_control(const std::array<double, 2>& u_C,
                                      const std::array<double, 2>& u_F);

}  // namespace lffc
