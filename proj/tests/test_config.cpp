#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lffc/config.hpp"

using namespace lffc;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "lffc_config_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string write_cfg(const std::string& name, const std::string& text) {
    auto path = scratch(name);
    std::ofstream(path) << text;
    return path.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool same_profile(const StepProfile& a, const StepProfile& b) {
    if (a.segments.size() != b.segments.size()) return false;
    for (size_t i = 0; i < a.segments.size(); ++i) {
        if (a.segments[i].t_start != b.segments[i].t_start) return false;
        if (a.segments[i].value != b.segments[i].value) return false;
    }
    return true;
}

bool same_gains(const PidGains& a, const PidGains& b) {
    return a.Kp == b.Kp && a.Ki == b.Ki && a.Kd == b.Kd && a.Nf == b.Nf &&
           a.u_bias == b.u_bias && a.limits.lo == b.limits.lo &&
           a.limits.hi == b.limits.hi;
}

}  // namespace

TEST_CASE("the shipped defaults validate and carry the documented values") {
    ScenarioConfig sc = default_scenario();
    validate_scenario(sc);
    CHECK_EQ(sc.grid.n, 1201);
    CHECK_EQ(sc.controller.pids[0].Kp, -0.4);
    CHECK_EQ(sc.controller.pids[0].Ki, -0.06);
    CHECK_EQ(sc.controller.pids[1].Kp, -3.5);
    CHECK_EQ(sc.controller.pids[1].Ki, -0.25);
    CHECK_EQ(sc.learning.gamma, 0.1);
    CHECK(sc.learning.filter == FilterKind::LowPass);
    CHECK_EQ(sc.learning.tau, 0.0);
    CHECK_EQ(sc.events[1].channel, 1);
    CHECK_EQ(sc.events[1].t_c, 400.0);
    CHECK_EQ(sc.output_dir, "out");
}

TEST_CASE("save and load round trip the full scenario") {
    ScenarioConfig sc = default_scenario();
    sc.learning.filter = FilterKind::Bsn;
    sc.learning.gamma = 0.07;
    sc.controller.kind = ControllerKind::Multivariable;
    sc.controller.decoupler.D = {{{1.0, 0.2}, {-0.1, 1.0}}};
    sc.weights.w = {1, 2, 3, 4, 5, 6, 7, 0.5};
    auto path = scratch("roundtrip.cfg").string();
    save_config(path, sc);
    ScenarioConfig back = load_config(path);

    CHECK(back.grid.same_as(sc.grid));
    for (int i = 0; i < 2; ++i) {
        CHECK(same_profile(back.ref_profiles[i], sc.ref_profiles[i]));
        CHECK(same_profile(back.dist_profiles[i], sc.dist_profiles[i]));
        CHECK(same_gains(back.controller.pids[i], sc.controller.pids[i]));
        CHECK_EQ(back.plant.limits[i].lo, sc.plant.limits[i].lo);
        CHECK_EQ(back.plant.limits[i].hi, sc.plant.limits[i].hi);
    }
    CHECK(back.controller.kind == sc.controller.kind);
    CHECK_EQ(back.controller.decoupler.D[0][1], 0.2);
    CHECK(back.learning.filter == FilterKind::Bsn);
    CHECK_EQ(back.learning.gamma, 0.07);
    CHECK_EQ(back.learning.bsn[0].m, sc.learning.bsn[0].m);
    CHECK_EQ(back.learning.bsn[1].dilation, sc.learning.bsn[1].dilation);
    CHECK_EQ(back.weights.w[7], 0.5);
    CHECK_EQ(back.output_dir, sc.output_dir);
    for (int i = 0; i < 4; ++i) {
        CHECK_EQ(back.events[i].channel, sc.events[i].channel);
        CHECK_EQ(back.events[i].t_c, sc.events[i].t_c);
        CHECK_EQ(back.events[i].t_s, sc.events[i].t_s);
    }

    // a second save of the loaded scenario reproduces the file verbatim
    auto path2 = scratch("roundtrip2.cfg").string();
    save_config(path2, back);
    CHECK_EQ(slurp(path), slurp(path2));
}

TEST_CASE("partial configs override only what they mention") {
    auto path = write_cfg("partial.cfg",
                          "# shorter run, hotter learning\n"
                          "[grid]\n"
                          "tf = 600\n"
                          "; keep everything else stock\n"
                          "[learning]\n"
                          "gamma = 0.2\n"
                          "[events]\n"
                          "event_3 = 1, 450, 60\n"
                          "event_4 = 2, 500, 60\n");
    ScenarioConfig sc = load_config(path);
    CHECK_EQ(sc.grid.tf, 600.0);
    CHECK_EQ(sc.grid.n, 601);
    CHECK_EQ(sc.learning.gamma, 0.2);
    // untouched defaults survive
    CHECK_EQ(sc.controller.pids[1].Kp, -3.5);
    CHECK_EQ(sc.ref_profiles[0].segments.size(), 3u);
    // the spline geometry follows the overridden grid
    CHECK_EQ(sc.learning.bsn[0].tf, 600.0);
    // events are written 1-based and stored 0-based
    CHECK_EQ(sc.events[2].channel, 0);
    CHECK_EQ(sc.events[3].channel, 1);
    CHECK_EQ(sc.events[3].t_c, 500.0);
}

TEST_CASE("unknown keys and sections are rejected with their location") {
    auto bad_key = write_cfg("bad_key.cfg", "[grid]\nstep = 1\n");
    CHECK_THROWS_WITH_AS(load_config(bad_key),
                         doctest::Contains("unknown key 'step'"), InputError);

    auto bad_section = write_cfg("bad_section.cfg", "[gird]\nt0 = 0\n");
    CHECK_THROWS_WITH_AS(load_config(bad_section),
                         doctest::Contains("unknown section"), InputError);

    auto no_section = write_cfg("no_section.cfg", "t0 = 0\n");
    CHECK_THROWS_WITH_AS(load_config(no_section),
                         doctest::Contains("before any [section]"), InputError);

    auto no_eq = write_cfg("no_eq.cfg", "[grid]\nt0 0\n");
    CHECK_THROWS_AS(load_config(no_eq), InputError);

    auto unterminated = write_cfg("unterminated.cfg", "[grid\nt0 = 0\n");
    CHECK_THROWS_AS(load_config(unterminated), InputError);

    auto bad_float = write_cfg("bad_float.cfg", "[grid]\nt0 = zero\n");
    CHECK_THROWS_AS(load_config(bad_float), InputError);

    CHECK_THROWS_AS(load_config(scratch("missing.cfg").string()), InputError);
}

TEST_CASE("line numbers point at the offending entry") {
    auto path = write_cfg("lineno.cfg", "[grid]\nt0 = 0\nbogus = 1\n");
    try {
        load_config(path);
        FAIL("expected InputError");
    } catch (const InputError& err) {
        CHECK(std::string(err.what()).find(":3") != std::string::npos);
    }
}

TEST_CASE("documented invariants are enforced after parsing") {
    auto ev_out = write_cfg("ev_out.cfg", "[events]\nevent_1 = 1, 1190, 60\n");
    CHECK_THROWS_AS(load_config(ev_out), ConfigError);

    auto neg_gamma = write_cfg("neg_gamma.cfg", "[learning]\ngamma = -0.5\n");
    CHECK_THROWS_AS(load_config(neg_gamma), ConfigError);

    auto bad_limits = write_cfg("bad_limits.cfg", "[plant]\nlimits_1 = 50, 30\n");
    CHECK_THROWS_AS(load_config(bad_limits), ConfigError);

    auto bad_dead = write_cfg("bad_dead.cfg", "[plant]\ng11 = -0.3, 40, 10.5\n");
    CHECK_THROWS_AS(load_config(bad_dead), ConfigError);

    auto bad_profile =
        write_cfg("bad_profile.cfg", "[reference_1]\nprofile = 100:-24, 0:-22\n");
    CHECK_THROWS_AS(load_config(bad_profile), ConfigError);

    auto singular = write_cfg("singular.cfg",
                              "[controller]\nkind = multivariable\n"
                              "decoupler = 1, 2, 2, 4\n");
    CHECK_THROWS_AS(load_config(singular), ConfigError);

    auto zero_w = write_cfg("zero_w.cfg", "[weights]\nw = 0,0,0,0,0,0,0,0\n");
    CHECK_THROWS_AS(load_config(zero_w), ConfigError);
}

TEST_CASE("event channels outside 1..2 are rejected while parsing") {
    auto path = write_cfg("ev_ch.cfg", "[events]\nevent_1 = 3, 100, 60\n");
    CHECK_THROWS_AS(load_config(path), InputError);
}

TEST_CASE("relative config paths honor LFFC_CONFIG_DIR") {
    auto dir = std::filesystem::temp_directory_path() / "lffc_config_dir";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "env.cfg") << "[grid]\ntf = 1100\n";
    setenv("LFFC_CONFIG_DIR", dir.string().c_str(), 1);
    ScenarioConfig sc = load_config("env.cfg");
    CHECK_EQ(sc.grid.tf, 1100.0);

    // absolute paths bypass the search directory
    auto abs_path = write_cfg("abs.cfg", "[grid]\ntf = 1190\n");
    ScenarioConfig sc2 = load_config(abs_path);
    CHECK_EQ(sc2.grid.tf, 1190.0);
    unsetenv("LFFC_CONFIG_DIR");

    // without the variable the bare name no longer resolves
    CHECK_THROWS_AS(load_config("env.cfg"), InputError);
}

TEST_CASE("boolean and enum values must be spelled exactly") {
    auto bad_bool =
        write_cfg("bad_bool.cfg", "[learning]\nbsn_normalized = yes\n");
    CHECK_THROWS_AS(load_config(bad_bool), InputError);

    auto bad_filter = write_cfg("bad_filter.cfg", "[learning]\nfilter = fir\n");
    CHECK_THROWS_AS(load_config(bad_filter), InputError);

    auto bad_kind = write_cfg("bad_kind.cfg", "[controller]\nkind = mpc\n");
    CHECK_THROWS_AS(load_config(bad_kind), InputError);
}
