#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lffc/signals.hpp"

using namespace lffc;

TEST_CASE("make_grid counts both endpoints") {
    Grid g = make_grid(0.0, 1200.0, 1.0);
    CHECK_EQ(g.n, 1201);
    CHECK_EQ(g.t(0), 0.0);
    CHECK_EQ(g.t(1200), 1200.0);

    CHECK_EQ(make_grid(0.0, 10.0, 1.0).n, 11);
}

TEST_CASE("make_grid rejects bad steps and spans") {
    CHECK_THROWS_AS(make_grid(0.0, 10.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 10.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 10.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(10.0, 10.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(10.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("make_trajectory allocates zeroed channels on the grid") {
    Grid g = make_grid(0.0, 5.0, 1.0);
    Trajectory tr = make_trajectory(g, 2);
    CHECK_EQ(tr.channels(), 2);
    REQUIRE_EQ(tr.values[0].size(), 6);
    for (double v : tr.values[1]) CHECK_EQ(v, 0.0);
}

TEST_CASE("render_profile holds a constant segment everywhere") {
    Grid g = make_grid(0.0, 10.0, 1.0);
    StepProfile p{{{0.0, 5.0}}};
    Trajectory tr = render_profile(p, g);
    for (int k = 0; k < g.n; ++k) CHECK_EQ(tr.values[0][k], 5.0);
}

TEST_CASE("render_profile switches value at the step instant") {
    Grid g = make_grid(0.0, 10.0, 1.0);
    StepProfile p{{{0.0, 0.0}, {5.0, 1.0}}};
    Trajectory tr = render_profile(p, g);
    for (int k = 0; k < g.n; ++k) {
        CHECK_EQ(tr.values[0][k], g.t(k) < 5.0 ? 0.0 : 1.0);
    }
}

TEST_CASE("render_profile backfills samples before the first segment") {
    Grid g = make_grid(0.0, 10.0, 1.0);
    StepProfile p{{{4.0, 7.0}}};
    Trajectory tr = render_profile(p, g);
    CHECK_EQ(tr.values[0][0], 7.0);
    CHECK_EQ(tr.values[0][10], 7.0);
}

TEST_CASE("render_profile rejects empty and unsorted profiles") {
    Grid g = make_grid(0.0, 10.0, 1.0);
    CHECK_THROWS_AS(render_profile(StepProfile{}, g), std::invalid_argument);
    StepProfile bad{{{5.0, 1.0}, {5.0, 2.0}}};
    CHECK_THROWS_AS(render_profile(bad, g), std::invalid_argument);
}

TEST_CASE("rendering a profile rebuilt from its samples is idempotent") {
    Grid g = make_grid(0.0, 20.0, 1.0);
    StepProfile p{{{0.0, -1.0}, {3.0, 2.5}, {11.0, 0.25}}};
    Trajectory first = render_profile(p, g);

    StepProfile rebuilt;
    for (int k = 0; k < g.n; ++k) {
        if (k == 0 || first.values[0][k] != first.values[0][k - 1]) {
            rebuilt.segments.push_back({g.t(k), first.values[0][k]});
        }
    }
    Trajectory second = render_profile(rebuilt, g);
    CHECK_EQ(rebuilt.segments.size(), 3);
    for (int k = 0; k < g.n; ++k) {
        CHECK_EQ(second.values[0][k], first.values[0][k]);
    }
}
