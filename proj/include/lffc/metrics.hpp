#pragma once

#include <array>

#include "lffc/signals.hpp"

namespace lffc {

// One scored transient: ITAE is accumulated over [t_c, t_c + t_s) on the
// given output channel (0-based internally; 1-based in config files).
struct RitaeEvent {
    int channel = 0;
    double t_c = 0.0;
    double t_s = 0.0;
};

struct IndexWeights {
    std::array<double, 8> w{1, 1, 1, 1, 1, 1, 1, 1};  // nonnegative, sum > 0
};

// Ratios candidate/reference in the order RIAE1, RIAE2, RITAE x4,
// RIAVU1, RIAVU2, plus the weighted combined index.
struct IndexReport {
    std::array<double, 2> riae{};
    std::array<double, 4> ritae{};
    std::array<double, 2> riavu{};
    double J = 0.0;

    std::array<double, 8> ratios() const {
        return {riae[0],  riae[1],  ritae[0], ritae[1],
                ritae[2], ritae[3], riavu[0], riavu[1]};
    }
};

// Left-endpoint rectangle quadrature of |e|; the last sample carries no
// rectangle.
double iae(const Trajectory& e, int channel = 0);

// Sum of (t_k - t_c)*|e_k|*h over samples inside the event window.
double itae(const Trajectory& e, int channel, const RitaeEvent& ev);

// Total variation sum |u_k - u_{k-1}|; needs at least 2 samples.
double iavu(const Trajectory& u, int channel = 0);

double relative_index(double candidate, double reference);

// J = sum(w_i * R_i) / sum(w_i) over the 8 ratios.
double combined_index(const std::array<double, 8>& ratios,
                      const IndexWeights& weights);

// Candidate and reference episodes must share a grid; e has 2 channels,
// u has 2 channels.
IndexReport build_report(const Trajectory& e_cand, const Trajectory& u_cand,
                         const Trajectory& e_ref, const Trajectory& u_ref,
                         const std::array<RitaeEvent, 4>& events,
                         const IndexWeights& weights);

}  // namespace lffc
