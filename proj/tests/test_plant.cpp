#include "doctest.h"

#include <cmath>
#include <vector>

#include "lffc/plant.hpp"

using namespace lffc;

namespace {

// Closed-form first-order-plus-dead-time step response used as an oracle:
// deviation after n steps equals K*(1 - exp(-(n-L/h)*h/tau)) for n > L/h.
double foptd_step(const FoptdChannel& ch, int n, double h, double amp) {
    int dl = static_cast<int>(std::round(ch.L / h));
    if (n <= dl) return 0.0;
    return ch.K * amp * (1.0 - std::exp(-static_cast<double>(n - dl) * h / ch.tau));
}

}  // namespace

TEST_CASE("saturate clamps to the actuator ranges") {
    PlantConfig cfg = default_plant();
    CHECK_EQ(saturate({40.0, 120.0}, cfg.limits)[1], 100.0);
    CHECK_EQ(saturate({25.0, 50.0}, cfg.limits)[0], 30.0);
    CHECK_EQ(saturate({40.0, 50.0}, cfg.limits)[0], 40.0);
    CHECK_EQ(saturate({40.0, 50.0}, cfg.limits)[1], 50.0);
}

TEST_CASE("plant_reset zeroes lags and sizes delay buffers from dead time") {
    PlantConfig cfg = default_plant();
    Grid g = make_grid(0.0, 100.0, 1.0);
    PlantState st = plant_reset(cfg, g);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 4; ++j) CHECK_EQ(st.lag[i][j], 0.0);
    }
    CHECK_EQ(st.delay_bufs[0][0].size(), 10u);
    CHECK_EQ(st.delay_bufs[0][1].size(), 5u);
    CHECK_EQ(st.delay_bufs[1][1].size(), 3u);
    CHECK_EQ(st.delay_bufs[0][2].size(), 0u);

    Grid coarse = make_grid(0.0, 99.0, 3.0);
    CHECK_THROWS_AS(plant_reset(cfg, coarse), std::invalid_argument);
}

TEST_CASE("operating-point inputs hold the operating-point outputs") {
    PlantConfig cfg = default_plant();
    Grid g = make_grid(0.0, 200.0, 1.0);
    PlantState st = plant_reset(cfg, g);
    for (int k = 0; k < g.n; ++k) {
        PlantStepResult r = plant_step(st, cfg, cfg.op_u, cfg.op_d, g.h);
        CHECK_EQ(r.y[0], cfg.op_y[0]);
        CHECK_EQ(r.y[1], cfg.op_y[1]);
    }
}

TEST_CASE("every transfer channel's step response matches the closed form") {
    PlantConfig cfg = default_plant();
    Grid g = make_grid(0.0, 400.0, 1.0);
    // sources: inputs 0..1 stepped by +1 from op, disturbances 2..3 likewise
    for (int src = 0; src < 4; ++src) {
        PlantState st = plant_reset(cfg, g);
        std::array<double, 2> u = cfg.op_u;
        std::array<double, 2> d = cfg.op_d;
        if (src < 2) u[src] += 1.0;
        else d[src - 2] += 1.0;
        for (int n = 1; n <= 400; ++n) {
            PlantStepResult r = plant_step(st, cfg, u, d, g.h);
            for (int out = 0; out < 2; ++out) {
                const FoptdChannel& ch =
                    src < 2 ? cfg.G[out][src] : cfg.Gd[out][src - 2];
                double want = cfg.op_y[out] + foptd_step(ch, n, g.h, 1.0);
                CHECK(std::abs(r.y[out] - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("worked sample: slow channel reaches K(1-1/e) one lag past dead time") {
    PlantConfig cfg = default_plant();
    Grid g = make_grid(0.0, 60.0, 1.0);
    PlantState st = plant_reset(cfg, g);
    std::array<double, 2> u = {cfg.op_u[0] + 1.0, cfg.op_u[1]};
    double y1 = 0.0;
    for (int n = 1; n <= 50; ++n) y1 = plant_step(st, cfg, u, cfg.op_d, g.h).y[0];
    double dev = y1 - cfg.op_y[0];
    CHECK(std::abs(dev - (-0.3) * (1.0 - std::exp(-1.0))) < 1e-12);
    CHECK(dev == doctest::Approx(-0.18964).epsilon(1e-4));
}

TEST_CASE("output deviation is exactly zero until the dead time elapses") {
    PlantConfig cfg = default_plant();
    Grid g = make_grid(0.0, 60.0, 1.0);
    PlantState st = plant_reset(cfg, g);
    std::array<double, 2> u = {cfg.op_u[0] + 5.0, cfg.op_u[1]};
    for (int n = 1; n <= 60; ++n) {
        double y2 = plant_step(st, cfg, u, cfg.op_d, g.h).y[1];
        if (n <= 5) CHECK_EQ(y2, cfg.op_y[1]);  // G21 dead time is 5 s
        else CHECK(y2 != cfg.op_y[1]);
    }
}

TEST_CASE("step response converges to K times the step size") {
    PlantConfig cfg = default_plant();
    Grid g = make_grid(0.0, 400.0, 1.0);
    PlantState st = plant_reset(cfg, g);
    std::array<double, 2> u = {cfg.op_u[0], cfg.op_u[1] + 2.0};
    double y1 = 0.0;
    int horizon = static_cast<int>(cfg.G[0][1].L + 5.0 * cfg.G[0][1].tau);
    for (int n = 1; n <= horizon; ++n) {
        y1 = plant_step(st, cfg, u, cfg.op_d, g.h).y[0];
    }
    double target = cfg.G[0][1].K * 2.0;
    // G11 path is untouched, so only the G12 share moves output 1.
    CHECK(std::abs((y1 - cfg.op_y[0]) - target) < 0.01 * std::abs(target));
}

TEST_CASE("deviation responses superpose") {
    PlantConfig cfg = default_plant();
    Grid g = make_grid(0.0, 300.0, 1.0);
    PlantState a = plant_reset(cfg, g);
    PlantState b = plant_reset(cfg, g);
    PlantState c = plant_reset(cfg, g);
    std::array<double, 2> du1 = {1.0, 0.0};
    std::array<double, 2> du2 = {0.0, 2.0};
    for (int n = 1; n <= 300; ++n) {
        auto ya = plant_step(a, cfg,
                             {cfg.op_u[0] + du1[0], cfg.op_u[1] + du1[1]},
                             cfg.op_d, g.h).y;
        auto yb = plant_step(b, cfg,
                             {cfg.op_u[0] + du2[0], cfg.op_u[1] + du2[1]},
                             cfg.op_d, g.h).y;
        auto yc = plant_step(c, cfg,
                             {cfg.op_u[0] + du1[0] + du2[0],
                              cfg.op_u[1] + du1[1] + du2[1]},
                             cfg.op_d, g.h).y;
        for (int i = 0; i < 2; ++i) {
            double dev_sum = (ya[i] - cfg.op_y[i]) + (yb[i] - cfg.op_y[i]);
            CHECK(std::abs((yc[i] - cfg.op_y[i]) - dev_sum) < 1e-9);
        }
    }
}

TEST_CASE("inputs beyond the limits behave exactly like the limit value") {
    PlantConfig cfg = default_plant();
    Grid g = make_grid(0.0, 100.0, 1.0);
    PlantState a = plant_reset(cfg, g);
    PlantState b = plant_reset(cfg, g);
    for (int n = 1; n <= 100; ++n) {
        auto ya = plant_step(a, cfg, {cfg.op_u[0], 120.0}, cfg.op_d, g.h).y;
        auto yb = plant_step(b, cfg, {cfg.op_u[0], 100.0}, cfg.op_d, g.h).y;
        CHECK_EQ(ya[0], yb[0]);
        CHECK_EQ(ya[1], yb[1]);
    }
}

TEST_CASE("identical input sequences give bit-identical outputs") {
    PlantConfig cfg = default_plant();
    Grid g = make_grid(0.0, 150.0, 1.0);
    std::vector<std::array<double, 2>> trace_a, trace_b;
    for (int run = 0; run < 2; ++run) {
        PlantState st = plant_reset(cfg, g);
        auto& trace = run == 0 ? trace_a : trace_b;
        for (int n = 1; n <= 150; ++n) {
            double wob = 0.37 * std::sin(0.05 * n);
            trace.push_back(plant_step(st, cfg,
                                       {cfg.op_u[0] + wob, cfg.op_u[1] - wob},
                                       cfg.op_d, g.h).y);
        }
    }
    CHECK(trace_a == trace_b);
}

TEST_CASE("plant_step rejects non-finite inputs") {
    PlantConfig cfg = default_plant();
    Grid g = make_grid(0.0, 10.0, 1.0);
    PlantState st = plant_reset(cfg, g);
    CHECK_THROWS_AS(
        plant_step(st, cfg, {std::nan(""), 50.0}, cfg.op_d, g.h),
        std::invalid_argument);
}
