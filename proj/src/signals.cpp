#include "lffc/signals.hpp"

#include <cmath>

namespace lffc {

Grid make_grid(double t0, double tf, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("grid step h must be positive, got " +
                                    std::to_string(h));
    }
    if (!(tf > t0)) {
        throw std::invalid_argument("grid span must be positive: t0=" +
                                    std::to_string(t0) + " tf=" +
                                    std::to_string(tf));
    }
    double span = (tf - t0) / h;
    double rounded = std::round(span);
    if (std::abs(span - rounded) > 1e-9) {
        throw std::invalid_argument(
            "grid span (tf - t0) must be an integer multiple of h; (tf-t0)/h = " +
            std::to_string(span));
    }
    Grid g;
    g.t0 = t0;
    g.tf = tf;
    g.h = h;
    g.n = static_cast<int>(rounded) + 1;
    return g;
}

Trajectory make_trajectory(const Grid& grid, int channels) {
    Trajectory traj;
    traj.grid = grid;
    traj.values.assign(channels, std::vector<double>(grid.n, 0.0));
    return traj;
}

Trajectory render_profile(const StepProfile& profile, const Grid& grid) {
    if (profile.segments.empty()) {
        throw std::invalid_argument("cannot render an empty step profile");
    }
    for (size_t i = 1; i < profile.segments.size(); ++i) {
        if (!(profile.segments[i].t_start > profile.segments[i - 1].t_start)) {
            throw std::invalid_argument(
                "step profile segment times must be strictly increasing");
        }
    }
    Trajectory traj = make_trajectory(grid, 1);
    size_t seg = 0;
    double value = profile.segments.front().value;
    for (int k = 0; k < grid.n; ++k) {
        double t = grid.t(k);
        while (seg < profile.segments.size() &&
               profile.segments[seg].t_start <= t) {
            value = profile.segments[seg].value;
            ++seg;
        }
        traj.values[0][k] = value;
    }
    return traj;
}

}  // namespace lffc
