#include "lffc/harness.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "lffc/config.hpp"
#include "lffc/csv.hpp"

namespace fs = std::filesystem;

namespace lffc {

namespace {

std::array<double, 2> solve2(const std::array<std::array<double, 2>, 2>& D,
                             const std::array<double, 2>& b) {
    double det = D[0][0] * D[1][1] - D[0][1] * D[1][0];
    if (std::abs(det) <= 1e-12) {
        throw std::invalid_argument("decoupler matrix is singular");
    }
    return {(D[1][1] * b[0] - D[0][1] * b[1]) / det,
            (-D[1][0] * b[0] + D[0][0] * b[1]) / det};
}

Trajectory zero_feedforward(const Grid& grid) { return make_trajectory(grid, 2); }

std::string memory_name(int iteration) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "memory_%03d.csv", iteration);
    return buf;
}

std::string episode_name(int iteration) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "episode_%03d", iteration);
    return buf;
}

std::string report_name(int iteration) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "report_%03d.csv", iteration);
    return buf;
}

std::string filter_name(FilterKind kind) {
    switch (kind) {
        case FilterKind::Identity: return "identity";
        case FilterKind::LowPass: return "lowpass";
        case FilterKind::Bsn: return "bsn";
    }
    return "unknown";
}

void write_manifest(const std::string& dir, const ScenarioConfig& sc,
                    int iterations_done) {
    std::string path = dir + "/manifest.txt";
    std::string tmp = path + ".tmp";
    std::string text;
    text += "iterations_done = " + std::to_string(iterations_done) + "\n";
    text += "gamma = " + format_double(sc.learning.gamma) + "\n";
    text += "filter = " + filter_name(sc.learning.filter) + "\n";
    text += "tau = " + format_double(sc.learning.tau) + "\n";
    text += "bsn_m = " + std::to_string(sc.learning.bsn[0].m) + "\n";
    text += "bsn_dilation = " + std::to_string(sc.learning.bsn[0].dilation) + "\n";
    text += std::string("bsn_normalized = ") +
            (sc.learning.bsn_normalized ? "true" : "false") + "\n";
    FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write manifest: " + tmp);
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
    fs::rename(tmp, path);
}

struct Manifest {
    int iterations_done = 0;
    double gamma = 0.0;
    std::string filter;
    double tau = 0.0;
    int bsn_m = 0;
    int bsn_dilation = 0;
    bool bsn_normalized = true;
};

Manifest read_manifest(const std::string& path);

}  // namespace

EpisodeResult simulate_episode(const ScenarioConfig& scenario,
                               const Trajectory& u_F_in) {
    validate_scenario(scenario);
    const Grid& grid = scenario.grid;
    Trajectory u_F = u_F_in.values.empty() ? zero_feedforward(grid) : u_F_in;
    if (!u_F.grid.same_as(grid) || u_F.channels() != 2) {
        throw std::invalid_argument(
            "feedforward trajectory must be 2 channels on the scenario grid");
    }

    Trajectory r = make_trajectory(grid, 2);
    Trajectory d = make_trajectory(grid, 2);
    for (int i = 0; i < 2; ++i) {
        r.values[i] = render_profile(scenario.ref_profiles[i], grid).values[0];
        d.values[i] = render_profile(scenario.dist_profiles[i], grid).values[0];
    }

    const ControllerConfig& ctl = scenario.controller;
    bool multivariable = ctl.kind == ControllerKind::Multivariable;

    // Equilibrium start: the feedback must cancel the scheduled feedforward
    // at t0 so y holds the operating point until the first event.
    std::array<double, 2> uf0{u_F.values[0][0], u_F.values[1][0]};
    std::array<double, 2> integ0 =
        multivariable
            ? solve2(ctl.decoupler.D, {-uf0[0], -uf0[1]})
            : std::array<double, 2>{-uf0[0], -uf0[1]};
    std::array<PidState, 2> states{};
    states[0].integ = integ0[0];
    states[1].integ = integ0[1];

    PlantState plant = plant_reset(scenario.plant, grid);
    std::array<double, 2> y = plant_output(plant, scenario.plant);

    EpisodeResult ep;
    ep.y = make_trajectory(grid, 2);
    ep.u = make_trajectory(grid, 2);
    ep.u_C = make_trajectory(grid, 2);
    ep.u_F = u_F;
    ep.e = make_trajectory(grid, 2);

    for (int k = 0; k < grid.n; ++k) {
        std::array<double, 2> rk{r.values[0][k], r.values[1][k]};
        std::array<double, 2> dk{d.values[0][k], d.values[1][k]};
        std::array<double, 2> ufk{u_F.values[0][k], u_F.values[1][k]};

        // The actuator range available to the feedback is the plant range
        // minus the scheduled feedforward share.
        std::array<PidGains, 2> gains = ctl.pids;
        for (int i = 0; i < 2; ++i) {
            gains[i].limits.lo -= ufk[i];
            gains[i].limits.hi -= ufk[i];
        }
        std::array<double, 2> uc =
            multivariable
                ? multivariable_step(ctl.decoupler, gains, states, rk, y, grid.h)
                : decentralized_step(gains[0], gains[1], states[0], states[1],
                                     rk, y, grid.h);

        std::array<double, 2> u_raw = compose_control(uc, ufk);
        for (int i = 0; i < 2; ++i) {
            ep.y.values[i][k] = y[i];
            ep.e.values[i][k] = rk[i] - y[i];
            ep.u_C.values[i][k] = uc[i];
        }
        PlantStepResult step = plant_step(plant, scenario.plant, u_raw, dk, grid.h);
        ep.u.values[0][k] = step.u[0];
        ep.u.values[1][k] = step.u[1];
        y = step.y;
    }
    return ep;
}

EpisodeResult simulate_feedback_only(const ScenarioConfig& scenario) {
    return simulate_episode(scenario, zero_feedforward(scenario.grid));
}

IndexReport compare(const EpisodeResult& candidate,
                    const EpisodeResult& reference,
                    const std::array<RitaeEvent, 4>& events,
                    const IndexWeights& weights) {
    return build_report(candidate.e, candidate.u, reference.e, reference.u,
                        events, weights);
}

std::array<double, 2> feedback_effort(const EpisodeResult& episode) {
    std::array<double, 2> eff{};
    for (int i = 0; i < 2; ++i) {
        for (double v : episode.u_C.values[i]) eff[i] += std::abs(v);
    }
    return eff;
}

namespace {

Manifest read_manifest(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot read manifest: " + path);
    Manifest m;
    char line[256];
    while (std::fgets(line, sizeof(line), f)) {
        std::string s(line);
        auto eq = s.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string v) {
            size_t b = v.find_first_not_of(" \t\r\n");
            size_t e = v.find_last_not_of(" \t\r\n");
            return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
        };
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key == "iterations_done") m.iterations_done = std::stoi(val);
        else if (key == "gamma") m.gamma = std::strtod(val.c_str(), nullptr);
        else if (key == "filter") m.filter = val;
        else if (key == "tau") m.tau = std::strtod(val.c_str(), nullptr);
        else if (key == "bsn_m") m.bsn_m = std::stoi(val);
        else if (key == "bsn_dilation") m.bsn_dilation = std::stoi(val);
        else if (key == "bsn_normalized") m.bsn_normalized = (val == "true");
    }
    std::fclose(f);
    return m;
}

}  // namespace

LearningRecord run_learning(const ScenarioConfig& scenario, int n_iter,
                            bool persist) {
    if (n_iter < 1) throw std::invalid_argument("n_iter must be >= 1");
    validate_scenario(scenario);
    const std::string& dir = scenario.output_dir;
    if (persist && dir.empty()) {
        throw std::invalid_argument("persistent campaigns need an output directory");
    }

    int done = 0;
    MemoryBank memory;
    std::vector<SummaryRow> summary;
    if (persist) {
        fs::create_directories(dir);
        std::string manifest_path = dir + "/manifest.txt";
        if (fs::exists(manifest_path)) {
            Manifest m = read_manifest(manifest_path);
            if (m.gamma != scenario.learning.gamma ||
                m.filter != filter_name(scenario.learning.filter)) {
                throw ConfigError(
                    "campaign directory was produced with different learning "
                    "parameters; use a fresh output directory");
            }
            done = m.iterations_done;
            if (done > 0) {
                memory = read_memory_csv(dir + "/" + memory_name(done),
                                         scenario.grid, done);
                summary = read_summary_csv(dir + "/summary.csv");
            }
        }
    }

    // The comparison reference is always the iteration-1 feedback-only
    // episode; deterministic, so a resumed campaign re-simulates it.
    EpisodeResult reference = simulate_feedback_only(scenario);

    LearningRecord record;
    for (const SummaryRow& row : summary) {
        if (row.iteration > done) continue;
        IterationRecord ir;
        ir.iteration = row.iteration;
        ir.J = row.J;
        ir.feedback_effort = {row.effort_N, row.effort_Av};
        ir.memory_path = persist ? dir + "/" + memory_name(row.iteration) : "";
        record.iterations.push_back(ir);
    }

    for (int j = done + 1; j <= n_iter; ++j) {
        EpisodeResult ep;
        if (j == 1) {
            ep = reference;
        } else {
            Trajectory u_F = lffc_update(memory, scenario.learning, scenario.grid.h);
            ep = simulate_episode(scenario, u_F);
        }
        memory.iteration = j;
        memory.u_F_prev = ep.u_F;
        memory.u_C_prev = ep.u_C;

        IterationRecord ir;
        ir.iteration = j;
        ir.J = j == 1 ? 1.0
                      : compare(ep, reference, scenario.events, scenario.weights).J;
        ir.feedback_effort = feedback_effort(ep);

        if (persist) {
            write_memory_csv(dir + "/" + memory_name(j), memory);
            write_episode(dir + "/" + episode_name(j), ep);
            if (j > 1) {
                write_report_csv(
                    dir + "/" + report_name(j),
                    compare(ep, reference, scenario.events, scenario.weights));
            }
            ir.memory_path = dir + "/" + memory_name(j);
            summary.push_back({j, ir.J, ir.feedback_effort[0], ir.feedback_effort[1]});
            write_summary_csv(dir + "/summary.csv", summary);
            write_manifest(dir, scenario, j);
        }
        record.iterations.push_back(ir);
    }
    return record;
}

}  // namespace lffc
