#pragma once

#include <array>

#include "lffc/plant.hpp"

namespace lffc {

// Discrete PID gains. Signs are free: the surrogate plant has negative
// input gains, so stabilizing loops use negative Kp/Ki. Nf sets the
// derivative filter constant Kd/(Kp*Nf).
struct PidGains {
    double Kp = 0.0;
    double Ki = 0.0;       // per second
    double Kd = 0.0;       // seconds
    double Nf = 10.0;      // must be > 0
    double u_bias = 0.0;
    InputLimits limits{};
};

struct PidState {
    double integ = 0.0;
    double deriv_f = 0.0;
    double e_prev = 0.0;
    bool saturated_hi = false;
    bool saturated_lo = false;
};

// Static decoupler applied to the PID outputs before the plant.
struct Decoupler {
    std::array<std::array<double, 2>, 2> D{{{1.0, 0.0}, {0.0, 1.0}}};
};

// One PID step with conditional-integration anti-windup: the integrator is
// frozen only while the unsaturated output exceeds a limit and the integral
// push Ki*e drives it further past that limit (reduces to the plain
// "saturated high and e > 0" rule when Ki >= 0). Set conditional = false
// for the unconditional-integration comparison variant.
double pid_step(const PidGains& gains, PidState& state, double r, double y,
                double h, bool conditional = true);

// Loop 1 drives N from the T_sec_evap_out error, loop 2 drives A_v from the
// TSH error; each loop is an independent pid_step.
std::array<double, 2> decentralized_step(const PidGains& pid_N,
                                         const PidGains& pid_Av,
                                         PidState& state_N, PidState& state_Av,
                                         const std::array<double, 2>& r,
                                         const std::array<double, 2>& y,
                                         double h);

// PID outputs are computed unclamped, mixed through D, and saturated at the
// actuator limits. The anti-windup freeze is keyed to the post-decoupler
// saturation mapped back through D: a channel counts as saturated when its
// demanded output differs from the realizable equivalent D^-1 * sat(D*v).
std::array<double, 2> multivariable_step(const Decoupler& dec,
                                         const std::array<PidGains, 2>& pids,
                                         std::array<PidState, 2>& states,
                                         const std::array<double, 2>& r,
                                         const std::array<double, 2>& y,
                                         double h);

}  // namespace lffc
