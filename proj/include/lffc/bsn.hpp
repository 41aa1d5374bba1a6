#pragma once

#include <vector>

#include "lffc/signals.hpp"

namespace lffc {

// Second-order (triangular) dilated B-spline network over time.
// Support width d = 2*m*h, center spacing d/(2*dilation), and one extra
// support of padding centers on each side of the domain. Interior points
// lie in the support of exactly 2*dilation splines, so memberships sum to
// the dilation factor.
struct BsnConfig {
    int m = 9;           // half the samples per spline support, >= 1
    int dilation = 2;    // >= 1
    double h = 1.0;
    double t0 = 0.0;
    double tf = 1200.0;

    double d() const { return 2.0 * m * h; }
    double spacing() const { return d() / (2.0 * dilation); }
    int padding() const { return 2 * dilation; }
    int center_count() const;
    double center(int i) const { return t0 + (i - padding()) * spacing(); }
};

struct BsnWeights {
    std::vector<double> w;  // one per center
};

// Triangular memberships mu_i(t) = max(0, 1 - |t - c_i|/(d/2)) over all
// centers (zero outside each support).
std::vector<double> bsn_memberships(const BsnConfig& config, double t);

// Network output sum_i w_i * mu_i(t). With all-equal weights c this equals
// c * dilation on the interior; divide by the dilation for a unit-gain
// reading (see bsn_eval_normalized).
double bsn_eval(const BsnConfig& config, const BsnWeights& weights, double t);

// bsn_eval / dilation: keeps the effective learning gain equal to gamma
// regardless of dilation. The campaign default; selectable in config.
double bsn_eval_normalized(const BsnConfig& config, const BsnWeights& weights,
                           double t);

// Membership-weighted mean update: each weight moves by gamma times the
// weighted mean of u over its support. Splines with zero membership mass
// are left unchanged.
BsnWeights bsn_learn(const BsnConfig& config, const BsnWeights& weights,
                     const Trajectory& u_C, double gamma);

BsnWeights zero_weights(const BsnConfig& config);

// Magnitude of the equivalent learning filter, (sin(wd/4)/(wd/4))^2,
// with the limit value 1 at w = 0.
double bsn_filter_magnitude(double d, double omega);

}  // namespace lffc
