#include "lffc/plant.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lffc {

namespace {

const FoptdChannel& channel_at(const PlantConfig& config, int out, int src) {
    return src < 2 ? config.G[out][src] : config.Gd[out][src - 2];
}

int delay_samples(const FoptdChannel& ch, double h) {
    double ratio = ch.L / h;
    double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9) {
        throw std::invalid_argument(
            "dead time " + std::to_string(ch.L) +
            " is not an integer multiple of the grid step " + std::to_string(h));
    }
    return static_cast<int>(rounded);
}

}  // namespace

std::array<double, 2> saturate(const std::array<double, 2>& u_raw,
                               const std::array<InputLimits, 2>& limits) {
    std::array<double, 2> u;
    for (int i = 0; i < 2; ++i) {
        u[i] = std::min(std::max(u_raw[i], limits[i].lo), limits[i].hi);
    }
    return u;
}

PlantState plant_reset(const PlantConfig& config, const Grid& grid) {
    PlantState state;
    for (int out = 0; out < 2; ++out) {
        for (int src = 0; src < 4; ++src) {
            const FoptdChannel& ch = channel_at(config, out, src);
            if (!(ch.tau > 0.0)) {
                throw std::invalid_argument("channel lag tau must be positive");
            }
            if (ch.L < 0.0) {
                throw std::invalid_argument("channel dead time must be nonnegative");
            }
            state.delay_bufs[out][src].assign(delay_samples(ch, grid.h), 0.0);
            state.lag[out][src] = 0.0;
            state.pos[out][src] = 0;
        }
    }
    return state;
}

std::array<double, 2> plant_output(const PlantState& state,
                                   const PlantConfig& config) {
    std::array<double, 2> y;
    for (int out = 0; out < 2; ++out) {
        double sum = 0.0;
        for (int src = 0; src < 4; ++src) sum += state.lag[out][src];
        y[out] = config.op_y[out] + sum;
    }
    return y;
}

PlantStepResult plant_step(PlantState& state, const PlantConfig& config,
                           const std::array<double, 2>& u_raw,
                           const std::array<double, 2>& d, double h) {
    for (int i = 0; i < 2; ++i) {
        if (!std::isfinite(u_raw[i]) || !std::isfinite(d[i])) {
            throw std::invalid_argument("plant inputs must be finite");
        }
    }
    std::array<double, 2> u = saturate(u_raw, config.limits);
    std::array<double, 4> dev = {u[0] - config.op_u[0], u[1] - config.op_u[1],
                                 d[0] - config.op_d[0], d[1] - config.op_d[1]};
    for (int out = 0; out < 2; ++out) {
        for (int src = 0; src < 4; ++src) {
            const FoptdChannel& ch = channel_at(config, out, src);
            double v_delayed = dev[src];
            auto& buf = state.delay_bufs[out][src];
            if (!buf.empty()) {
                int& p = state.pos[out][src];
                v_delayed = buf[p];
                buf[p] = dev[src];
                p = (p + 1) % static_cast<int>(buf.size());
            }
            double a = std::exp(-h / ch.tau);
            state.lag[out][src] =
                a * state.lag[out][src] + (1.0 - a) * ch.K * v_delayed;
        }
    }
    return {u, plant_output(state, config)};
}

PlantConfig default_plant() {
    PlantConfig cfg;
    cfg.op_u = {40.0, 50.0};
    cfg.op_y = {-22.0, 15.0};
    cfg.op_d = {-20.0, 30.0};
    cfg.G[0][0] = {-0.3, 40.0, 10.0};
    cfg.G[0][1] = {-0.05, 30.0, 5.0};
    cfg.G[1][0] = {0.2, 25.0, 5.0};
    cfg.G[1][1] = {-0.1, 20.0, 3.0};
    cfg.Gd[0][0] = {0.5, 30.0, 0.0};
    cfg.Gd[0][1] = {0.2, 60.0, 0.0};
    cfg.Gd[1][0] = {0.5, 30.0, 0.0};
    cfg.Gd[1][1] = {0.2, 60.0, 0.0};
    cfg.limits[0] = {30.0, 50.0};
    cfg.limits[1] = {10.0, 100.0};
    return cfg;
}

}  // namespace lffc
