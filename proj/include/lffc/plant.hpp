#pragma once

#include <array>
#include <vector>

#include "lffc/signals.hpp"

namespace lffc {

// First-order-plus-dead-time channel K*exp(-L*s)/(tau*s + 1).
struct FoptdChannel {
    double K = 0.0;
    double tau = 1.0;   // must be > 0
    double L = 0.0;     // must be >= 0 and an integer multiple of h
};

struct InputLimits {
    double lo = 0.0;
    double hi = 0.0;
};

// Linear deviation model around an operating point: 2 inputs (N, A_v),
// 2 disturbances (evaporator / condenser secondary inlet temperatures),
// 2 outputs (T_sec_evap_out, TSH). Row i of G/Gd feeds output i.
struct PlantConfig {
    std::array<double, 2> op_u{};
    std::array<double, 2> op_y{};
    std::array<double, 2> op_d{};
    std::array<std::array<FoptdChannel, 2>, 2> G{};
    std::array<std::array<FoptdChannel, 2>, 2> Gd{};
    std::array<InputLimits, 2> limits{};
};

// One lag state and one delay line per (output, source) pair; sources are
// ordered u0, u1, d0, d1.
struct PlantState {
    std::array<std::array<double, 4>, 2> lag{};
    std::array<std::array<std::vector<double>, 4>, 2> delay_bufs;
    std::array<std::array<int, 4>, 2> pos{};
};

std::array<double, 2> saturate(const std::array<double, 2>& u_raw,
                               const std::array<InputLimits, 2>& limits);

PlantState plant_reset(const PlantConfig& config, const Grid& grid);

// Advances one sample: saturates u_raw, pushes deviations through the delay
// lines, applies the exact zero-order-hold lag update, and returns
// (saturated u, output y). Saturation precedes dynamics.
struct PlantStepResult {
    std::array<double, 2> u;
    std::array<double, 2> y;
};

PlantStepResult plant_step(PlantState& state, const PlantConfig& config,
                           const std::array<double, 2>& u_raw,
                           const std::array<double, 2>& d, double h);

// Output at the current state without advancing (op_y plus lag sums).
std::array<double, 2> plant_output(const PlantState& state,
                                   const PlantConfig& config);

// Surrogate defaults; every test expectation against them is derivable
// from the closed-form FOPTD step response.
PlantConfig default_plant();

}  // namespace lffc
