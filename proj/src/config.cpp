#include "lffc/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lffc/csv.hpp"

namespace fs = std::filesystem;

namespace lffc {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    size_t e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double to_double(const std::string& s, const std::string& where) {
    double v = 0.0;
    std::string t = trim(s);
    const char* b = t.data();
    auto res = std::from_chars(b, b + t.size(), v);
    if (res.ec != std::errc() || res.ptr != b + t.size()) {
        throw InputError(where + ": not a number: '" + t + "'");
    }
    return v;
}

int to_int(const std::string& s, const std::string& where) {
    int v = 0;
    std::string t = trim(s);
    const char* b = t.data();
    auto res = std::from_chars(b, b + t.size(), v);
    if (res.ec != std::errc() || res.ptr != b + t.size()) {
        throw InputError(where + ": not an integer: '" + t + "'");
    }
    return v;
}

bool to_bool(const std::string& s, const std::string& where) {
    std::string t = trim(s);
    if (t == "true") return true;
    if (t == "false") return false;
    throw InputError(where + ": expected true or false, got '" + t + "'");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string field;
    for (char c : s) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

std::vector<double> to_doubles(const std::string& s, size_t count,
                               const std::string& where) {
    auto parts = split_list(s);
    if (parts.size() != count) {
        throw InputError(where + ": expected " + std::to_string(count) +
                         " comma-separated values");
    }
    std::vector<double> out;
    for (const auto& p : parts) out.push_back(to_double(p, where));
    return out;
}

// Profiles are written as comma-separated t:value pairs, e.g.
// "0:-22, 100:-24, 600:-23".
StepProfile to_profile(const std::string& s, const std::string& where) {
    StepProfile prof;
    for (const auto& part : split_list(s)) {
        std::string p = trim(part);
        size_t colon = p.find(':');
        if (colon == std::string::npos) {
            throw InputError(where + ": expected t:value pairs");
        }
        prof.segments.push_back({to_double(p.substr(0, colon), where),
                                 to_double(p.substr(colon + 1), where)});
    }
    return prof;
}

FoptdChannel to_channel(const std::string& s, const std::string& where) {
    auto v = to_doubles(s, 3, where);
    return {v[0], v[1], v[2]};
}

std::string profile_text(const StepProfile& prof) {
    std::string out;
    for (size_t i = 0; i < prof.segments.size(); ++i) {
        if (i) out += ", ";
        out += format_double(prof.segments[i].t_start) + ":" +
               format_double(prof.segments[i].value);
    }
    return out;
}

std::string channel_text(const FoptdChannel& ch) {
    return format_double(ch.K) + ", " + format_double(ch.tau) + ", " +
           format_double(ch.L);
}

void apply_key(ScenarioConfig& sc, const std::string& section,
               const std::string& key, const std::string& value,
               const std::string& where) {
    auto& pl = sc.plant;
    auto& ctl = sc.controller;
    auto& lr = sc.learning;
    if (section == "grid") {
        if (key == "t0") sc.grid.t0 = to_double(value, where);
        else if (key == "tf") sc.grid.tf = to_double(value, where);
        else if (key == "h") sc.grid.h = to_double(value, where);
        else throw InputError(where + ": unknown key '" + key + "'");
    } else if (section == "reference_1" || section == "reference_2" ||
               section == "disturbance_1" || section == "disturbance_2") {
        if (key != "profile") {
            throw InputError(where + ": unknown key '" + key + "'");
        }
        int idx = section.back() == '1' ? 0 : 1;
        if (section[0] == 'r') sc.ref_profiles[idx] = to_profile(value, where);
        else sc.dist_profiles[idx] = to_profile(value, where);
    } else if (section == "plant") {
        auto pair2 = [&](std::array<double, 2>& dst) {
            auto v = to_doubles(value, 2, where);
            dst = {v[0], v[1]};
        };
        if (key == "op_u") pair2(pl.op_u);
        else if (key == "op_y") pair2(pl.op_y);
        else if (key == "op_d") pair2(pl.op_d);
        else if (key == "limits_1" || key == "limits_2") {
            auto v = to_doubles(value, 2, where);
            pl.limits[key.back() - '1'] = {v[0], v[1]};
        } else if (key == "g11") pl.G[0][0] = to_channel(value, where);
        else if (key == "g12") pl.G[0][1] = to_channel(value, where);
        else if (key == "g21") pl.G[1][0] = to_channel(value, where);
        else if (key == "g22") pl.G[1][1] = to_channel(value, where);
        else if (key == "gd11") pl.Gd[0][0] = to_channel(value, where);
        else if (key == "gd12") pl.Gd[0][1] = to_channel(value, where);
        else if (key == "gd21") pl.Gd[1][0] = to_channel(value, where);
        else if (key == "gd22") pl.Gd[1][1] = to_channel(value, where);
        else throw InputError(where + ": unknown key '" + key + "'");
    } else if (section == "controller") {
        auto per_loop = [&](auto setter) {
            auto v = to_doubles(value, 2, where);
            setter(ctl.pids[0], v[0]);
            setter(ctl.pids[1], v[1]);
        };
        if (key == "kind") {
            std::string t = trim(value);
            if (t == "decentralized") ctl.kind = ControllerKind::Decentralized;
            else if (t == "multivariable") ctl.kind = ControllerKind::Multivariable;
            else throw InputError(where + ": unknown controller kind '" + t + "'");
        } else if (key == "kp") per_loop([](PidGains& g, double v) { g.Kp = v; });
        else if (key == "ki") per_loop([](PidGains& g, double v) { g.Ki = v; });
        else if (key == "kd") per_loop([](PidGains& g, double v) { g.Kd = v; });
        else if (key == "nf") per_loop([](PidGains& g, double v) { g.Nf = v; });
        else if (key == "bias") per_loop([](PidGains& g, double v) { g.u_bias = v; });
        else if (key == "decoupler") {
            auto v = to_doubles(value, 4, where);
            ctl.decoupler.D = {{{v[0], v[1]}, {v[2], v[3]}}};
        } else throw InputError(where + ": unknown key '" + key + "'");
    } else if (section == "learning") {
        if (key == "gamma") lr.gamma = to_double(value, where);
        else if (key == "filter") {
            std::string t = trim(value);
            if (t == "identity") lr.filter = FilterKind::Identity;
            else if (t == "lowpass") lr.filter = FilterKind::LowPass;
            else if (t == "bsn") lr.filter = FilterKind::Bsn;
            else throw InputError(where + ": unknown filter '" + t + "'");
        } else if (key == "tau") lr.tau = to_double(value, where);
        else if (key == "bsn_m") {
            lr.bsn[0].m = lr.bsn[1].m = to_int(value, where);
        } else if (key == "bsn_dilation") {
            lr.bsn[0].dilation = lr.bsn[1].dilation = to_int(value, where);
        } else if (key == "bsn_normalized") {
            lr.bsn_normalized = to_bool(value, where);
        } else throw InputError(where + ": unknown key '" + key + "'");
    } else if (section == "events") {
        if (key.rfind("event_", 0) != 0 || key.size() != 7 || key[6] < '1' ||
            key[6] > '4') {
            throw InputError(where + ": unknown key '" + key + "'");
        }
        auto v = to_doubles(value, 3, where);
        int ch = static_cast<int>(v[0]);
        if (v[0] != ch || (ch != 1 && ch != 2)) {
            throw InputError(where + ": event channel must be 1 or 2");
        }
        sc.events[key[6] - '1'] = {ch - 1, v[1], v[2]};
    } else if (section == "weights") {
        if (key != "w") throw InputError(where + ": unknown key '" + key + "'");
        auto v = to_doubles(value, 8, where);
        for (int i = 0; i < 8; ++i) sc.weights.w[i] = v[i];
    } else if (section == "output") {
        if (key != "dir") throw InputError(where + ": unknown key '" + key + "'");
        sc.output_dir = trim(value);
    } else {
        throw InputError(where + ": unknown section '" + section + "'");
    }
}

}  // namespace

ScenarioConfig default_scenario() {
    ScenarioConfig sc;
    sc.grid = make_grid(0.0, 1200.0, 1.0);
    sc.ref_profiles[0].segments = {{0.0, -22.0}, {100.0, -24.0}, {600.0, -23.0}};
    sc.ref_profiles[1].segments = {{0.0, 15.0}, {400.0, 17.0}};
    sc.dist_profiles[0].segments = {{0.0, -20.0}, {800.0, -17.0}};
    sc.dist_profiles[1].segments = {{0.0, 30.0}, {1000.0, 25.0}};
    sc.plant = default_plant();

    sc.controller.kind = ControllerKind::Decentralized;
    sc.controller.pids[0] = {-0.4, -0.06, 0.0, 10.0, sc.plant.op_u[0],
                             sc.plant.limits[0]};
    sc.controller.pids[1] = {-3.5, -0.25, 0.0, 10.0, sc.plant.op_u[1],
                             sc.plant.limits[1]};

    sc.learning.gamma = 0.1;
    sc.learning.filter = FilterKind::LowPass;
    sc.learning.tau = 0.0;
    for (int i = 0; i < 2; ++i) {
        sc.learning.bsn[i] = {9, 2, sc.grid.h, sc.grid.t0, sc.grid.tf};
    }
    sc.learning.bsn_normalized = true;

    sc.events = {{{0, 100.0, 60.0}, {1, 400.0, 60.0}, {0, 800.0, 60.0},
                  {1, 1000.0, 60.0}}};
    sc.weights = IndexWeights{};
    sc.output_dir = "out";
    return sc;
}

std::string resolve_config_path(const std::string& path) {
    if (path.empty() || fs::path(path).is_absolute()) return path;
    const char* dir = std::getenv("LFFC_CONFIG_DIR");
    if (!dir || !*dir) return path;
    return (fs::path(dir) / path).string();
}

ScenarioConfig load_config(const std::string& path) {
    std::string resolved = resolve_config_path(path);
    std::ifstream in(resolved);
    if (!in) throw InputError("cannot open config file: " + resolved);

    ScenarioConfig sc = default_scenario();
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        std::string where = resolved + ":" + std::to_string(lineno);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw InputError(where + ": unterminated section");
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos) {
            throw InputError(where + ": expected key = value");
        }
        std::string key = trim(s.substr(0, eq));
        std::string value = s.substr(eq + 1);
        if (section.empty()) {
            throw InputError(where + ": key before any [section]");
        }
        apply_key(sc, section, key, value, where);
    }

    // The grid may have been overridden, so rebuild it and keep the spline
    // geometry anchored to it.
    sc.grid = make_grid(sc.grid.t0, sc.grid.tf, sc.grid.h);
    for (int i = 0; i < 2; ++i) {
        sc.learning.bsn[i].h = sc.grid.h;
        sc.learning.bsn[i].t0 = sc.grid.t0;
        sc.learning.bsn[i].tf = sc.grid.tf;
    }
    validate_scenario(sc);
    return sc;
}

void save_config(const std::string& path, const ScenarioConfig& sc) {
    std::ostringstream out;
    out << "[grid]\n";
    out << "t0 = " << format_double(sc.grid.t0) << "\n";
    out << "tf = " << format_double(sc.grid.tf) << "\n";
    out << "h = " << format_double(sc.grid.h) << "\n\n";

    const char* profile_sections[4] = {"reference_1", "reference_2",
                                       "disturbance_1", "disturbance_2"};
    for (int i = 0; i < 4; ++i) {
        const StepProfile& p =
            i < 2 ? sc.ref_profiles[i] : sc.dist_profiles[i - 2];
        out << "[" << profile_sections[i] << "]\n";
        out << "profile = " << profile_text(p) << "\n\n";
    }

    const auto& pl = sc.plant;
    out << "[plant]\n";
    out << "op_u = " << format_double(pl.op_u[0]) << ", "
        << format_double(pl.op_u[1]) << "\n";
    out << "op_y = " << format_double(pl.op_y[0]) << ", "
        << format_double(pl.op_y[1]) << "\n";
    out << "op_d = " << format_double(pl.op_d[0]) << ", "
        << format_double(pl.op_d[1]) << "\n";
    out << "limits_1 = " << format_double(pl.limits[0].lo) << ", "
        << format_double(pl.limits[0].hi) << "\n";
    out << "limits_2 = " << format_double(pl.limits[1].lo) << ", "
        << format_double(pl.limits[1].hi) << "\n";
    out << "g11 = " << channel_text(pl.G[0][0]) << "\n";
    out << "g12 = " << channel_text(pl.G[0][1]) << "\n";
    out << "g21 = " << channel_text(pl.G[1][0]) << "\n";
    out << "g22 = " << channel_text(pl.G[1][1]) << "\n";
    out << "gd11 = " << channel_text(pl.Gd[0][0]) << "\n";
    out << "gd12 = " << channel_text(pl.Gd[0][1]) << "\n";
    out << "gd21 = " << channel_text(pl.Gd[1][0]) << "\n";
    out << "gd22 = " << channel_text(pl.Gd[1][1]) << "\n\n";

    const auto& ctl = sc.controller;
    out << "[controller]\n";
    out << "kind = "
        << (ctl.kind == ControllerKind::Decentralized ? "decentralized"
                                                      : "multivariable")
        << "\n";
    auto per_loop = [&](const char* key, auto getter) {
        out << key << " = " << format_double(getter(ctl.pids[0])) << ", "
            << format_double(getter(ctl.pids[1])) << "\n";
    };
    per_loop("kp", [](const PidGains& g) { return g.Kp; });
    per_loop("ki", [](const PidGains& g) { return g.Ki; });
    per_loop("kd", [](const PidGains& g) { return g.Kd; });
    per_loop("nf", [](const PidGains& g) { return g.Nf; });
    per_loop("bias", [](const PidGains& g) { return g.u_bias; });
    out << "decoupler = " << format_double(ctl.decoupler.D[0][0]) << ", "
        << format_double(ctl.decoupler.D[0][1]) << ", "
        << format_double(ctl.decoupler.D[1][0]) << ", "
        << format_double(ctl.decoupler.D[1][1]) << "\n\n";

    const auto& lr = sc.learning;
    out << "[learning]\n";
    out << "gamma = " << format_double(lr.gamma) << "\n";
    out << "filter = "
        << (lr.filter == FilterKind::Identity
                ? "identity"
                : lr.filter == FilterKind::LowPass ? "lowpass" : "bsn")
        << "\n";
    out << "tau = " << format_double(lr.tau) << "\n";
    out << "bsn_m = " << lr.bsn[0].m << "\n";
    out << "bsn_dilation = " << lr.bsn[0].dilation << "\n";
    out << "bsn_normalized = " << (lr.bsn_normalized ? "true" : "false")
        << "\n\n";

    out << "[events]\n";
    for (int i = 0; i < 4; ++i) {
        out << "event_" << i + 1 << " = " << sc.events[i].channel + 1 << ", "
            << format_double(sc.events[i].t_c) << ", "
            << format_double(sc.events[i].t_s) << "\n";
    }
    out << "\n[weights]\n";
    out << "w =";
    for (int i = 0; i < 8; ++i) {
        out << (i ? ", " : " ") << format_double(sc.weights.w[i]);
    }
    out << "\n\n[output]\n";
    out << "dir = " << sc.output_dir << "\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << out.str();
    if (!f) throw std::runtime_error("write failed: " + path);
}

void validate_scenario(const ScenarioConfig& sc) {
    if (!(sc.grid.h > 0.0) || !(sc.grid.tf > sc.grid.t0)) {
        throw ConfigError("grid needs h > 0 and tf > t0");
    }
    double span = (sc.grid.tf - sc.grid.t0) / sc.grid.h;
    if (std::abs(span - std::round(span)) > 1e-9 ||
        sc.grid.n != static_cast<int>(std::round(span)) + 1) {
        throw ConfigError("grid span must be an integer number of steps");
    }

    auto check_profile = [](const StepProfile& p, const std::string& name) {
        if (p.segments.empty()) {
            throw ConfigError(name + " profile must have at least one segment");
        }
        for (size_t i = 1; i < p.segments.size(); ++i) {
            if (!(p.segments[i].t_start > p.segments[i - 1].t_start)) {
                throw ConfigError(name + " profile times must strictly increase");
            }
        }
    };
    check_profile(sc.ref_profiles[0], "reference_1");
    check_profile(sc.ref_profiles[1], "reference_2");
    check_profile(sc.dist_profiles[0], "disturbance_1");
    check_profile(sc.dist_profiles[1], "disturbance_2");

    for (int out = 0; out < 2; ++out) {
        for (int src = 0; src < 4; ++src) {
            const FoptdChannel& ch =
                src < 2 ? sc.plant.G[out][src] : sc.plant.Gd[out][src - 2];
            if (!(ch.tau > 0.0)) throw ConfigError("plant lag tau must be > 0");
            if (ch.L < 0.0) throw ConfigError("plant dead time must be >= 0");
            double ratio = ch.L / sc.grid.h;
            if (std::abs(ratio - std::round(ratio)) > 1e-9) {
                throw ConfigError(
                    "plant dead times must be integer multiples of the grid step");
            }
        }
    }
    for (int i = 0; i < 2; ++i) {
        if (!(sc.plant.limits[i].lo < sc.plant.limits[i].hi)) {
            throw ConfigError("input limits need lo < hi");
        }
        if (!(sc.controller.pids[i].Nf > 0.0)) {
            throw ConfigError("derivative filter ratio nf must be > 0");
        }
    }
    if (sc.controller.kind == ControllerKind::Multivariable) {
        const auto& D = sc.controller.decoupler.D;
        if (std::abs(D[0][0] * D[1][1] - D[0][1] * D[1][0]) <= 1e-12) {
            throw ConfigError("decoupler matrix must be invertible");
        }
    }

    if (!(sc.learning.gamma > 0.0) || !std::isfinite(sc.learning.gamma)) {
        throw ConfigError("learning gain gamma must be > 0");
    }
    if (sc.learning.filter == FilterKind::LowPass && sc.learning.tau < 0.0) {
        throw ConfigError("low-pass tau must be >= 0");
    }
    if (sc.learning.filter == FilterKind::Bsn) {
        for (int i = 0; i < 2; ++i) {
            const BsnConfig& b = sc.learning.bsn[i];
            if (b.m < 1 || b.dilation < 1) {
                throw ConfigError("spline network needs m >= 1 and dilation >= 1");
            }
            if (b.h != sc.grid.h || b.t0 != sc.grid.t0 || b.tf != sc.grid.tf) {
                throw ConfigError("spline domain must match the scenario grid");
            }
        }
    }

    for (const RitaeEvent& ev : sc.events) {
        if (ev.channel != 0 && ev.channel != 1) {
            throw ConfigError("event channel out of range");
        }
        if (!(ev.t_s > 0.0)) throw ConfigError("event window length must be > 0");
        if (ev.t_c < sc.grid.t0 || ev.t_c + ev.t_s > sc.grid.tf) {
            throw ConfigError("event window must lie inside the grid");
        }
    }
    double wsum = 0.0;
    for (double w : sc.weights.w) {
        if (w < 0.0) throw ConfigError("index weights must be nonnegative");
        wsum += w;
    }
    if (!(wsum > 0.0)) throw ConfigError("index weights must not all be zero");
}

}  // namespace lffc
