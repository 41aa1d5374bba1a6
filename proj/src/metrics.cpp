#include "lffc/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace lffc {

namespace {

void check_channel(const Trajectory& traj, int channel) {
    if (channel < 0 || channel >= traj.channels()) {
        throw std::invalid_argument("trajectory channel index out of range");
    }
}

void check_event(const Grid& grid, const RitaeEvent& ev) {
    if (!(ev.t_s > 0.0)) {
        throw std::invalid_argument("event window length must be positive");
    }
    if (ev.t_c < grid.t0 || ev.t_c + ev.t_s > grid.tf + 1e-9) {
        throw std::invalid_argument("event window lies outside the grid");
    }
}

}  // namespace

double iae(const Trajectory& e, int channel) {
    check_channel(e, channel);
    const auto& v = e.values[channel];
    double sum = 0.0;
    for (int k = 0; k + 1 < e.grid.n; ++k) sum += std::abs(v[k]) * e.grid.h;
    return sum;
}

double itae(const Trajectory& e, int channel, const RitaeEvent& ev) {
    check_channel(e, channel);
    check_event(e.grid, ev);
    const auto& v = e.values[channel];
    double sum = 0.0;
    for (int k = 0; k < e.grid.n; ++k) {
        double t = e.grid.t(k);
        if (t >= ev.t_c && t < ev.t_c + ev.t_s) {
            sum += (t - ev.t_c) * std::abs(v[k]) * e.grid.h;
        }
    }
    return sum;
}

double iavu(const Trajectory& u, int channel) {
    check_channel(u, channel);
    const auto& v = u.values[channel];
    if (v.size() < 2) {
        throw std::invalid_argument("iavu needs at least 2 samples");
    }
    double sum = 0.0;
    for (size_t k = 1; k < v.size(); ++k) sum += std::abs(v[k] - v[k - 1]);
    return sum;
}

double relative_index(double candidate, double reference) {
    if (!(reference > 0.0)) {
        throw std::invalid_argument("relative index needs a positive reference");
    }
    return candidate / reference;
}

double combined_index(const std::array<double, 8>& ratios,
                      const IndexWeights& weights) {
    double wsum = 0.0;
    double acc = 0.0;
    for (int i = 0; i < 8; ++i) {
        if (weights.w[i] < 0.0) {
            throw std::invalid_argument("index weights must be nonnegative");
        }
        wsum += weights.w[i];
        acc += weights.w[i] * ratios[i];
    }
    if (!(wsum > 0.0)) {
        throw std::invalid_argument("index weights must not all be zero");
    }
    return acc / wsum;
}

IndexReport build_report(const Trajectory& e_cand, const Trajectory& u_cand,
                         const Trajectory& e_ref, const Trajectory& u_ref,
                         const std::array<RitaeEvent, 4>& events,
                         const IndexWeights& weights) {
    if (!e_cand.grid.same_as(e_ref.grid) || !u_cand.grid.same_as(u_ref.grid) ||
        !e_cand.grid.same_as(u_cand.grid)) {
        throw std::invalid_argument("episodes must share one grid");
    }
    IndexReport rep;
    for (int i = 0; i < 2; ++i) {
        rep.riae[i] = relative_index(iae(e_cand, i), iae(e_ref, i));
    }
    for (int i = 0; i < 4; ++i) {
        rep.ritae[i] = relative_index(itae(e_cand, events[i].channel, events[i]),
                                      itae(e_ref, events[i].channel, events[i]));
    }
    for (int i = 0; i < 2; ++i) {
        rep.riavu[i] = relative_index(iavu(u_cand, i), iavu(u_ref, i));
    }
    rep.J = combined_index(rep.ratios(), weights);
    return rep;
}

}  // namespace lffc
