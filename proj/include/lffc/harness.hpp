#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lffc/feedback.hpp"
#include "lffc/learning.hpp"
#include "lffc/metrics.hpp"
#include "lffc/plant.hpp"
#include "lffc/signals.hpp"

namespace lffc {

enum class ControllerKind { Decentralized, Multivariable };

struct ControllerConfig {
    ControllerKind kind = ControllerKind::Decentralized;
    std::array<PidGains, 2> pids{};  // [0] = N loop, [1] = A_v loop
    Decoupler decoupler{};
};

struct ScenarioConfig {
    Grid grid;
    std::array<StepProfile, 2> ref_profiles;   // T_sec_evap_out, TSH setpoints
    std::array<StepProfile, 2> dist_profiles;  // T_e,sec,in and T_c,sec,in
    PlantConfig plant;
    ControllerConfig controller;
    LearningConfig learning;
    std::array<RitaeEvent, 4> events{};
    IndexWeights weights{};
    std::string output_dir;
};

// All five trajectories share the scenario grid; u is the post-saturation
// actuator command and equals clamp(u_C + u_F) sample-wise.
struct EpisodeResult {
    Trajectory y;
    Trajectory u;
    Trajectory u_C;
    Trajectory u_F;
    Trajectory e;
};

struct IterationRecord {
    int iteration = 0;
    double J = 1.0;
    std::array<double, 2> feedback_effort{};  // sum |u_C| per channel
    std::string memory_path;
};

struct LearningRecord {
    std::vector<IterationRecord> iterations;
};

// Runs one episode against the configured feedback controller with the given
// feedforward schedule. Each episode starts at the operating equilibrium:
// integrators are initialized to -u_F(t0) and the per-step feedback limits
// are the actuator range minus the scheduled feedforward, so anti-windup
// keys on true actuator saturation of the composed command.
EpisodeResult simulate_episode(const ScenarioConfig& scenario,
                               const Trajectory& u_F);

EpisodeResult simulate_feedback_only(const ScenarioConfig& scenario);

// Iteration 1 is the feedback-only episode; each later iteration applies
// lffc_update to the stored memory and re-runs the episode. J is always
// computed against the iteration-1 episode. Per-iteration memory, episode
// trajectories, reports, and the campaign summary are persisted under
// scenario.output_dir when persist is true. A campaign whose output
// directory already holds a manifest resumes after its last completed
// iteration.
LearningRecord run_learning(const ScenarioConfig& scenario, int n_iter,
                            bool persist = true);

IndexReport compare(const EpisodeResult& candidate,
                    const EpisodeResult& reference,
                    const std::array<RitaeEvent, 4>& events,
                    const IndexWeights& weights);

std::array<double, 2> feedback_effort(const EpisodeResult& episode);

}  // namespace lffc
