#include "lffc/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lffc/config.hpp"
#include "lffc/csv.hpp"
#include "lffc/harness.hpp"
#include "lffc/metrics.hpp"
#include "lffc/plots.hpp"

namespace fs = std::filesystem;

namespace lffc {

namespace {

void run_simulate(const std::string& config_path, std::string out) {
    ScenarioConfig sc = load_config(config_path);
    if (out.empty()) out = sc.output_dir;
    EpisodeResult ep = simulate_feedback_only(sc);
    write_episode(out, ep);
    std::cout << "episode written to " << out << "\n";
}

void run_learn(const std::string& config_path, int iterations,
               std::string out) {
    ScenarioConfig sc = load_config(config_path);
    if (!out.empty()) sc.output_dir = out;
    LearningRecord record = run_learning(sc, iterations, true);
    std::cout << "iteration        J   effort_N  effort_Av\n";
    for (const IterationRecord& it : record.iterations) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%9d %8.6f %10.3f %10.3f\n",
                      it.iteration, it.J, it.feedback_effort[0],
                      it.feedback_effort[1]);
        std::cout << buf;
    }
    std::cout << "campaign written to " << sc.output_dir << "\n";
}

void run_compare(const std::string& candidate_dir,
                 const std::string& reference_dir,
                 const std::string& config_path, const std::string& out) {
    ScenarioConfig sc = load_config(config_path);
    EpisodeResult cand = read_episode(candidate_dir, sc.grid);
    EpisodeResult ref = read_episode(reference_dir, sc.grid);
    IndexReport report = compare(cand, ref, sc.events, sc.weights);
    std::cout << report_table(report);
    if (!out.empty()) {
        write_report_csv(out, report);
        std::cout << "report written to " << out << "\n";
    }
}

// Accepts either an episode directory (absolute indices of its error and
// input trajectories) or a single error-trajectory CSV.
void run_indices(const std::string& episode_path,
                 const std::string& config_path) {
    ScenarioConfig sc = load_config(config_path);
    auto line = [](const std::string& name, double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "  %-8s %14.6f\n", name.c_str(), v);
        std::cout << buf;
    };
    if (fs::is_directory(episode_path)) {
        EpisodeResult ep = read_episode(episode_path, sc.grid);
        line("IAE_1", iae(ep.e, 0));
        line("IAE_2", iae(ep.e, 1));
        for (int i = 0; i < 4; ++i) {
            const RitaeEvent& ev = sc.events[i];
            line("ITAE_" + std::to_string(i + 1), itae(ep.e, ev.channel, ev));
        }
        line("IAVU_1", iavu(ep.u, 0));
        line("IAVU_2", iavu(ep.u, 1));
        return;
    }
    Trajectory e = read_trajectory_csv(episode_path);
    for (int ch = 0; ch < e.channels(); ++ch) {
        line("IAE_" + std::to_string(ch + 1), iae(e, ch));
    }
    for (int i = 0; i < 4; ++i) {
        const RitaeEvent& ev = sc.events[i];
        if (ev.channel < e.channels()) {
            line("ITAE_" + std::to_string(i + 1), itae(e, ev.channel, ev));
        }
    }
}

void run_plot(const std::string& campaign_dir, std::string out) {
    if (out.empty()) out = campaign_dir;
    std::string rename_to;
    std::string out_dir = out;
    if (fs::path(out).extension() == ".svg") {
        rename_to = out;
        out_dir = fs::path(out).parent_path().string();
        if (out_dir.empty()) out_dir = ".";
    }
    std::vector<std::string> files = emit_plots(campaign_dir, out_dir);
    if (!rename_to.empty() && files[0] != rename_to) {
        fs::rename(files[0], rename_to);
        files[0] = rename_to;
    }
    for (const std::string& f : files) std::cout << f << "\n";
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"Learning feedforward control simulation toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out;
    int iterations = 10;
    std::string candidate_dir;
    std::string reference_dir;
    std::string episode_path;
    std::string campaign_dir;

    CLI::App* sim = app.add_subcommand(
        "simulate", "Run one feedback-only episode and write its CSVs");
    sim->add_option("--config", config_path, "scenario config file")->required();
    sim->add_option("--out", out, "output directory (default from config)");

    CLI::App* learn = app.add_subcommand(
        "learn", "Run a learning campaign with per-iteration persistence");
    learn->add_option("--config", config_path, "scenario config file")->required();
    learn->add_option("--iterations", iterations, "iteration count, >= 1")
        ->required()
        ->check(CLI::Range(1, 1000000));
    learn->add_option("--out", out, "campaign directory (default from config)");

    CLI::App* cmp = app.add_subcommand(
        "compare", "Relative index report of one episode against another");
    cmp->add_option("--candidate", candidate_dir, "candidate episode directory")
        ->required();
    cmp->add_option("--reference", reference_dir, "reference episode directory")
        ->required();
    cmp->add_option("--config", config_path, "scenario config file")->required();
    cmp->add_option("--out", out, "optional report CSV path");

    CLI::App* idx = app.add_subcommand(
        "indices", "Absolute indices of an episode directory or error CSV");
    idx->add_option("episode", episode_path, "episode directory or CSV file")
        ->required();
    idx->add_option("--config", config_path, "scenario config file")->required();

    CLI::App* plot = app.add_subcommand(
        "plot", "Render campaign SVG plots from persisted CSVs");
    plot->add_option("campaign", campaign_dir, "campaign directory")->required();
    plot->add_option("--out", out, "output directory or J-plot .svg path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) run_simulate(config_path, out);
        else if (learn->parsed()) run_learn(config_path, iterations, out);
        else if (cmp->parsed()) run_compare(candidate_dir, reference_dir,
                                            config_path, out);
        else if (idx->parsed()) run_indices(episode_path, config_path);
        else if (plot->parsed()) run_plot(campaign_dir, out);
        return 0;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace lffc
