#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lffc {

// Uniform closed sampling grid: samples at t0 + k*h for k = 0..n-1.
struct Grid {
    double t0 = 0.0;
    double tf = 0.0;
    double h = 1.0;
    int n = 0;

    double t(int k) const { return t0 + k * h; }
    bool same_as(const Grid& o) const {
        return t0 == o.t0 && tf == o.tf && h == o.h && n == o.n;
    }
};

// Sampled multi-channel signal on a grid, channel-major.
struct Trajectory {
    Grid grid;
    std::vector<std::vector<double>> values;  // [channel][sample]

    int channels() const { return static_cast<int>(values.size()); }
};

// Piecewise-constant profile: value holds from each t_start until the next.
struct ProfileSegment {
    double t_start = 0.0;
    double value = 0.0;
};

struct StepProfile {
    std::vector<ProfileSegment> segments;  // t_start strictly increasing
};

Grid make_grid(double t0, double tf, double h);

Trajectory make_trajectory(const Grid& grid, int channels);

// Right-continuous rendering: the sample at exactly t_start takes the new value.
Trajectory render_profile(const StepProfile& profile, const Grid& grid);

}  // namespace lffc
