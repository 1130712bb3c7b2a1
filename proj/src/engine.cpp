#include "coglab/engine.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace coglab::engine {

namespace {

constexpr std::uint64_t kEvalStreamTag = 0xE7A1u;

double population_eval(const World& world, const env::EnvSpec& probe_env,
                       const agents::DynamicsConfig& dyn, int n_tasks, Rng& rng) {
    if (n_tasks < 1) {
        throw std::invalid_argument("ai_off_eval: n_tasks must be >= 1");
    }
    if (world.population.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& agent : world.population) {
        for (int i = 0; i < n_tasks; ++i) {
            const env::Task task = env::sample_task(probe_env, rng);
            sum += agents::perform_self(agent.skills, task, dyn);
        }
    }
    return sum / (static_cast<double>(world.population.size()) * n_tasks);
}

double population_skill_mean(const World& world) {
    if (world.population.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    std::size_t dims = 0;
    for (const auto& agent : world.population) {
        for (double s : agent.skills) {
            sum += s;
        }
        dims += agent.skills.size();
    }
    return dims == 0 ? 0.0 : sum / static_cast<double>(dims);
}

double population_dependency_mean(const World& world) {
    if (world.population.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& agent : world.population) {
        sum += agent.dependency;
    }
    return sum / static_cast<double>(world.population.size());
}

} // namespace

void SimConfig::validate() const {
    environment.validate();
    dynamics.validate();
    if (n_agents <= 0) {
        throw std::invalid_argument("engine.n_agents: must be positive");
    }
    for (auto ticks : phase_ticks) {
        if (ticks <= 0) {
            throw std::invalid_argument("engine.phase_ticks: all phases must be positive");
        }
    }
    if (eval_interval <= 0) {
        throw std::invalid_argument("engine.eval_interval: must be positive");
    }
    if (phase_ticks[1] < 2 * eval_interval) {
        throw std::invalid_argument(
            "engine.phase2_ticks: need at least two evaluation windows in phase 2");
    }
    if (eval_tasks <= 0 || probe_tasks <= 0) {
        throw std::invalid_argument("engine.eval_tasks/probe_tasks: must be positive");
    }
    if (!(final_window_fraction > 0.0) || final_window_fraction > 1.0) {
        throw std::invalid_argument("engine.final_window_fraction: must lie in (0,1]");
    }
}

TickRecord step(World& world, bool ai_available, const env::EnvSpec& env_now,
                const agents::DynamicsConfig& dyn, const agents::RegimeSpec& regime, Rng& rng) {
    double score_sum = 0.0;
    std::uint64_t ai_used = 0;

    for (auto& agent : world.population) {
        const env::Task task = env::sample_task(env_now, rng);
        const double m = env::mismatch(agent.skills, task);
        const double e = env::effort(m, task.perturbed_difficulty, env_now);
        const bool use_ai = agents::decide_ai_use(agent, e, regime, dyn, ai_available, rng);

        score_sum += use_ai ? agents::perform_hybrid(dyn)
                            : agents::perform_self(agent.skills, task, dyn);
        agents::learn(agent.skills, task, use_ai ? dyn.alpha_ai : dyn.alpha_self);
        if (use_ai) {
            if (dyn.atrophy_global) {
                agents::atrophy_all(agent.skills, dyn.delta);
            } else {
                agents::atrophy(agent.skills, task, dyn.delta);
            }
            ++agent.ai_use_count;
        }
        agent.dependency = agents::update_dependency(agent.dependency, use_ai, dyn);
        ++agent.task_count;
        if (use_ai) {
            ++ai_used;
        }
    }

    ++world.tick;
    TickRecord rec;
    rec.score_sum = score_sum;
    rec.ai_count = ai_used;
    if (!world.population.empty()) {
        const double n = static_cast<double>(world.population.size());
        rec.mean_score = score_sum / n;
        rec.ai_use_fraction = static_cast<double>(ai_used) / n;
    }
    return rec;
}

double ai_off_eval(const World& world, const env::EnvSpec& env_now,
                   const agents::DynamicsConfig& dyn, int n_tasks, Rng& rng) {
    return population_eval(world, env_now, dyn, n_tasks, rng);
}

double perturbation_probe(const World& world, const env::EnvSpec& env_now,
                          const agents::DynamicsConfig& dyn, int n_tasks, Rng& rng) {
    return population_eval(world, env::perturbation_env(env_now), dyn, n_tasks, rng);
}

double novelty_probe(const World& world, const env::EnvSpec& env_now,
                     const agents::DynamicsConfig& dyn, int n_tasks, Rng& rng) {
    return population_eval(world, env::novelty_env(env_now), dyn, n_tasks, rng);
}

RunResult run(const SimConfig& config) {
    config.validate();

    Rng rng(config.seed);
    World world;
    world.population = agents::init_population(config.n_agents, config.environment.k, rng);

    const env::EnvSpec base = config.environment;
    const env::EnvSpec stressed = env::phase3_env(base);

    const std::int64_t p1 = config.phase_ticks[0];
    const std::int64_t p2 = config.phase_ticks[1];
    const std::int64_t p3 = config.phase_ticks[2];

    // Phase 1: autonomous baseline, no assistance, no evaluation windows.
    for (std::int64_t t = 0; t < p1; ++t) {
        step(world, false, base, config.dynamics, config.regime, rng);
    }

    RunResult result;
    double score_sum = 0.0;
    std::uint64_t ai_used = 0;
    std::uint64_t tasks = 0;
    std::uint64_t sample_index = 0;

    // Phases 2 and 3: assistance available, periodic AI-off windows.
    for (std::int64_t t = 0; t < p2 + p3; ++t) {
        const bool stress = t >= p2;
        const env::EnvSpec& env_now = stress ? stressed : base;
        const TickRecord rec = step(world, true, env_now, config.dynamics, config.regime, rng);

        score_sum += rec.score_sum;
        ai_used += rec.ai_count;
        tasks += world.population.size();

        if ((t + 1) % config.eval_interval == 0) {
            ++sample_index;
            Rng eval_rng(mix_seed(config.seed, kEvalStreamTag, sample_index));

            EvalSample sample;
            sample.time = world.tick;
            sample.q_h = ai_off_eval(world, env_now, config.dynamics, config.eval_tasks, eval_rng);
            sample.q_h_pert =
                perturbation_probe(world, env_now, config.dynamics, config.probe_tasks, eval_rng);
            sample.q_h_novel =
                novelty_probe(world, env_now, config.dynamics, config.probe_tasks, eval_rng);
            sample.q_ha = tasks == 0 ? 0.0 : score_sum / static_cast<double>(tasks);
            sample.ai_use_rate =
                tasks == 0 ? 0.0 : static_cast<double>(ai_used) / static_cast<double>(tasks);
            sample.skill_mean = population_skill_mean(world);
            sample.dependency_mean = population_dependency_mean(world);
            result.samples.push_back(sample);

            score_sum = 0.0;
            ai_used = 0;
            tasks = 0;
        }
    }

    result.summary = summarize(result.samples, config);
    return result;
}

RunSummary summarize(const std::vector<EvalSample>& samples, const SimConfig& config) {
    if (samples.size() < 2) {
        throw std::invalid_argument("summarize: need at least 2 samples");
    }

    const auto n = samples.size();
    auto window = static_cast<std::size_t>(
        std::llround(config.final_window_fraction * static_cast<double>(n)));
    window = std::clamp<std::size_t>(window, 1, n);

    RunSummary summary;
    for (std::size_t i = n - window; i < n; ++i) {
        summary.q_h += samples[i].q_h;
        summary.q_ha += samples[i].q_ha;
        summary.skill_mean += samples[i].skill_mean;
        summary.ai_use_rate += samples[i].ai_use_rate;
        summary.q_h_pert += samples[i].q_h_pert;
        summary.q_h_novel += samples[i].q_h_novel;
        summary.dependency_mean += samples[i].dependency_mean;
    }
    const double w = static_cast<double>(window);
    summary.q_h /= w;
    summary.q_ha /= w;
    summary.skill_mean /= w;
    summary.ai_use_rate /= w;
    summary.q_h_pert /= w;
    summary.q_h_novel /= w;
    summary.dependency_mean /= w;

    // Drift series: assisted-phase samples only (see header).
    const std::int64_t phase2_end = config.phase_ticks[0] + config.phase_ticks[1];
    std::vector<metrics::DriftSample> drift;
    drift.reserve(n);
    for (const auto& s : samples) {
        if (s.time <= phase2_end) {
            drift.push_back({s.time, s.q_h});
        }
    }
    if (drift.size() < 2) {
        for (const auto& s : samples) {
            drift.push_back({s.time, s.q_h});
        }
    }

    const metrics::PerformanceTriple triple{summary.q_h, config.dynamics.q_a, summary.q_ha};
    summary.metric_set = metrics::make_metric_set(triple, metrics::hcdr(drift));
    summary.regime_label = metrics::classify_regime(summary.metric_set);
    return summary;
}

std::uint64_t world_hash(const World& world) {
    std::uint64_t h = 1469598103934665603ull; // FNV-1a 64 offset basis
    auto feed = [&h](const void* data, std::size_t size) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < size; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ull;
        }
    };
    feed(&world.tick, sizeof(world.tick));
    for (const auto& agent : world.population) {
        feed(agent.skills.data(), agent.skills.size() * sizeof(double));
        feed(&agent.dependency, sizeof(agent.dependency));
        feed(&agent.ai_use_count, sizeof(agent.ai_use_count));
        feed(&agent.task_count, sizeof(agent.task_count));
    }
    return h;
}

} // namespace coglab::engine
