#include "lffc/feedback.hpp"

#include <cmath>
#include <stdexcept>

namespace lffc {

namespace {

// Demanded-vs-realizable tolerance for the mapped-back saturation test.
constexpr double kSatTol = 1e-12;

double deriv_term(const PidGains& g, PidState& st, double e, double h) {
    if (g.Kd == 0.0 || g.Kp == 0.0) {
        st.e_prev = e;
        return 0.0;
    }
    double tf = std::abs(g.Kd / (g.Kp * g.Nf));
    double beta = tf / (tf + h);
    double de = (e - st.e_prev) / h;
    st.deriv_f = beta * st.deriv_f + (1.0 - beta) * de;
    st.e_prev = e;
    return g.Kd * st.deriv_f;
}

void advance_integrator(const PidGains& g, PidState& st, double e, double h,
                        bool conditional, bool sat_hi, bool sat_lo) {
    double push = g.Ki * e;
    bool freeze = conditional && ((sat_hi && push > 0.0) || (sat_lo && push < 0.0));
    if (!freeze) st.integ += g.Ki * e * h;
    st.saturated_hi = sat_hi;
    st.saturated_lo = sat_lo;
}

}  // namespace

double pid_step(const PidGains& gains, PidState& state, double r, double y,
                double h, bool conditional) {
    if (!std::isfinite(r) || !std::isfinite(y)) {
        throw std::invalid_argument("pid_step needs finite setpoint and measurement");
    }
    if (!(gains.Nf > 0.0)) {
        throw std::invalid_argument("derivative filter ratio Nf must be positive");
    }
    double e = r - y;
    double deriv = deriv_term(gains, state, e, h);
    double u_unsat = gains.u_bias + gains.Kp * e + state.integ + deriv;
    double u = std::min(std::max(u_unsat, gains.limits.lo), gains.limits.hi);
    advance_integrator(gains, state, e, h, conditional,
                       u_unsat > gains.limits.hi, u_unsat < gains.limits.lo);
    return u;
}

std::array<double, 2> decentralized_step(const PidGains& pid_N,
                                         const PidGains& pid_Av,
                                         PidState& state_N, PidState& state_Av,
                                         const std::array<double, 2>& r,
                                         const std::array<double, 2>& y,
                                         double h) {
    return {pid_step(pid_N, state_N, r[0], y[0], h),
            pid_step(pid_Av, state_Av, r[1], y[1], h)};
}

std::array<double, 2> multivariable_step(const Decoupler& dec,
                                         const std::array<PidGains, 2>& pids,
                                         std::array<PidState, 2>& states,
                                         const std::array<double, 2>& r,
                                         const std::array<double, 2>& y,
                                         double h) {
    const auto& D = dec.D;
    double det = D[0][0] * D[1][1] - D[0][1] * D[1][0];
    if (std::abs(det) <= 1e-12) {
        throw std::invalid_argument("decoupler matrix is singular");
    }
    std::array<double, 2> e{r[0] - y[0], r[1] - y[1]};
    std::array<double, 2> v;
    for (int i = 0; i < 2; ++i) {
        double deriv = deriv_term(pids[i], states[i], e[i], h);
        v[i] = pids[i].u_bias + pids[i].Kp * e[i] + states[i].integ + deriv;
    }
    std::array<double, 2> w{D[0][0] * v[0] + D[0][1] * v[1],
                            D[1][0] * v[0] + D[1][1] * v[1]};
    std::array<double, 2> w_sat;
    for (int i = 0; i < 2; ++i) {
        w_sat[i] = std::min(std::max(w[i], pids[i].limits.lo), pids[i].limits.hi);
    }
    std::array<double, 2> v_eq{(D[1][1] * w_sat[0] - D[0][1] * w_sat[1]) / det,
                               (-D[1][0] * w_sat[0] + D[0][0] * w_sat[1]) / det};
    for (int i = 0; i < 2; ++i) {
        advance_integrator(pids[i], states[i], e[i], h, true,
                           v[i] > v_eq[i] + kSatTol, v[i] < v_eq[i] - kSatTol);
    }
    return w_sat;
}

}  // namespace lffc
