#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "coglab/agents.hpp"
#include "coglab/environment.hpp"
#include "coglab/metrics.hpp"

namespace coglab::engine {

/// Complete configuration for one simulation run. A run is a pure
/// function of this struct; the seed included.
struct SimConfig {
    env::EnvSpec environment;
    agents::DynamicsConfig dynamics;
    agents::RegimeSpec regime = agents::make_regime(agents::RegimeKind::Mixed);
    int n_agents = 1000;
    std::array<std::int64_t, 3> phase_ticks{100, 2000, 500};
    std::int64_t eval_interval = 100; // ticks between AI-off windows
    int eval_tasks = 50;              // tasks per agent per AI-off evaluation
    int probe_tasks = 50;             // tasks per agent per robustness probe
    double final_window_fraction = 0.2;
    std::uint64_t seed = 1;

    void validate() const;
};

/// One evaluation window snapshot. q_ha and ai_use_rate aggregate normal
/// operation since the previous sample; the probe scores are instantaneous.
struct EvalSample {
    std::int64_t time = 0;
    double q_h = 0.0;       // AI-off score on the operating distribution
    double q_h_pert = 0.0;  // AI-off score under doubled perturbation
    double q_h_novel = 0.0; // AI-off score on the novelty distribution
    double q_ha = 0.0;      // mean hybrid task score since last sample
    double ai_use_rate = 0.0;
    double skill_mean = 0.0;
    double dependency_mean = 0.0;
};

struct RunSummary {
    double q_h = 0.0;
    double q_ha = 0.0;
    double skill_mean = 0.0;
    double ai_use_rate = 0.0;
    double q_h_pert = 0.0;
    double q_h_novel = 0.0;
    double dependency_mean = 0.0;
    metrics::MetricSet metric_set{};
    metrics::RegimeLabel regime_label{};
};

struct RunResult {
    std::vector<EvalSample> samples;
    RunSummary summary;
};

struct World {
    std::vector<agents::AgentState> population;
    std::int64_t tick = 0;
};

struct TickRecord {
    double mean_score = 0.0;
    double ai_use_fraction = 0.0;
    double score_sum = 0.0;       // exact per-task sum behind mean_score
    std::uint64_t ai_count = 0;   // exact count behind ai_use_fraction
};

/// Advance the world one tick: every agent draws a task, decides on AI
/// use (forced off when unavailable), scores it, learns at the mode's
/// rate, atrophies on AI-used tasks and updates its reliance state.
TickRecord step(World& world, bool ai_available, const env::EnvSpec& env_now,
                const agents::DynamicsConfig& dyn, const agents::RegimeSpec& regime, Rng& rng);

/// Population-mean autonomous score over n_tasks fresh tasks per agent.
/// Pure probe: the world is untouched.
double ai_off_eval(const World& world, const env::EnvSpec& env_now,
                   const agents::DynamicsConfig& dyn, int n_tasks, Rng& rng);

/// AI-off evaluation with the perturbation bound doubled.
double perturbation_probe(const World& world, const env::EnvSpec& env_now,
                          const agents::DynamicsConfig& dyn, int n_tasks, Rng& rng);

/// AI-off evaluation on the novelty distribution derived from env_now.
double novelty_probe(const World& world, const env::EnvSpec& env_now,
                     const agents::DynamicsConfig& dyn, int n_tasks, Rng& rng);

/// Execute the three-phase protocol: baseline without AI, assisted
/// interaction with periodic evaluation windows, then the shifted
/// environment stress phase. Returns the sample series plus the
/// final-window summary.
RunResult run(const SimConfig& config);

/// Final-window means plus the metric set. The drift rate is fitted over
/// the assisted-phase (phase 2) sample series; the stress phase changes
/// the operating distribution and would alias into the slope otherwise.
RunSummary summarize(const std::vector<EvalSample>& samples, const SimConfig& config);

/// FNV-1a hash over the raw population state; used by purity tests.
std::uint64_t world_hash(const World& world);

} // namespace coglab::engine
