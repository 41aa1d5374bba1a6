#include "lffc/bsn.hpp"

#include <cmath>
#include <stdexcept>

namespace lffc {

namespace {

void check_config(const BsnConfig& config) {
    if (config.m < 1) throw std::invalid_argument("bsn m must be >= 1");
    if (config.dilation < 1) throw std::invalid_argument("bsn dilation must be >= 1");
    if (!(config.h > 0.0)) throw std::invalid_argument("bsn h must be positive");
    if (!(config.tf > config.t0)) {
        throw std::invalid_argument("bsn domain must have positive span");
    }
}

void check_domain(const BsnConfig& config, double t) {
    double pad_span = config.d();
    if (t < config.t0 - pad_span || t > config.tf + pad_span) {
        throw std::invalid_argument("t outside the padded bsn domain");
    }
}

struct CenterWindow {
    int first;
    int last;  // inclusive
};

CenterWindow active_centers(const BsnConfig& config, double t) {
    int i0 = static_cast<int>(std::floor((t - config.t0) / config.spacing())) +
             config.padding();
    int reach = 2 * config.dilation;
    int first = std::max(0, i0 - reach);
    int last = std::min(config.center_count() - 1, i0 + reach + 1);
    return {first, last};
}

double membership(const BsnConfig& config, int i, double t) {
    double half = config.d() / 2.0;
    return std::max(0.0, 1.0 - std::abs(t - config.center(i)) / half);
}

}  // namespace

int BsnConfig::center_count() const {
    int nspan = static_cast<int>(std::ceil((tf - t0) / spacing() - 1e-12));
    return nspan + 2 * padding() + 1;
}

std::vector<double> bsn_memberships(const BsnConfig& config, double t) {
    check_config(config);
    check_domain(config, t);
    std::vector<double> mu(config.center_count(), 0.0);
    CenterWindow win = active_centers(config, t);
    for (int i = win.first; i <= win.last; ++i) {
        mu[i] = membership(config, i, t);
    }
    return mu;
}

double bsn_eval(const BsnConfig& config, const BsnWeights& weights, double t) {
    check_config(config);
    check_domain(config, t);
    if (static_cast<int>(weights.w.size()) != config.center_count()) {
        throw std::invalid_argument("weight count does not match center count");
    }
    double out = 0.0;
    CenterWindow win = active_centers(config, t);
    for (int i = win.first; i <= win.last; ++i) {
        out += weights.w[i] * membership(config, i, t);
    }
    return out;
}

double bsn_eval_normalized(const BsnConfig& config, const BsnWeights& weights,
                           double t) {
    return bsn_eval(config, weights, t) / config.dilation;
}

BsnWeights zero_weights(const BsnConfig& config) {
    check_config(config);
    return {std::vector<double>(config.center_count(), 0.0)};
}

BsnWeights bsn_learn(const BsnConfig& config, const BsnWeights& weights,
                     const Trajectory& u_C, double gamma) {
    check_config(config);
    if (static_cast<int>(weights.w.size()) != config.center_count()) {
        throw std::invalid_argument("weight count does not match center count");
    }
    if (u_C.channels() != 1) {
        throw std::invalid_argument("bsn_learn expects a 1-channel trajectory");
    }
    const Grid& grid = u_C.grid;
    if (grid.t0 > config.t0 || grid.tf < config.tf ||
        std::abs(grid.h - config.h) > 1e-12) {
        throw std::invalid_argument("trajectory grid does not span the bsn domain");
    }
    std::vector<double> mass(config.center_count(), 0.0);
    std::vector<double> weighted(config.center_count(), 0.0);
    for (int k = 0; k < grid.n; ++k) {
        double t = grid.t(k);
        CenterWindow win = active_centers(config, t);
        for (int i = win.first; i <= win.last; ++i) {
            double mu = membership(config, i, t);
            mass[i] += mu;
            weighted[i] += mu * u_C.values[0][k];
        }
    }
    BsnWeights out = weights;
    for (int i = 0; i < config.center_count(); ++i) {
        if (mass[i] > 0.0) out.w[i] += gamma * weighted[i] / mass[i];
    }
    return out;
}

double bsn_filter_magnitude(double d, double omega) {
    if (!(d > 0.0)) throw std::invalid_argument("support width d must be positive");
    double x = omega * d / 4.0;
    if (x == 0.0) return 1.0;
    double s = std::sin(x) / x;
    return s * s;
}

}  // namespace lffc
