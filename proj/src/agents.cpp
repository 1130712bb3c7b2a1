#include "coglab/agents.hpp"

#include <algorithm>
#include <stdexcept>

namespace coglab::agents {

namespace {
constexpr double kInitSkillLo = 0.25;
constexpr double kInitSkillHi = 0.55;
} // namespace

RegimeSpec make_regime(RegimeKind kind) {
    switch (kind) {
        case RegimeKind::FullDelegation: return {kind, 1.0};
        case RegimeKind::MinimalAI: return {kind, 0.0};
        case RegimeKind::Mixed: return {kind, 0.5};
    }
    throw std::invalid_argument("make_regime: unknown regime kind");
}

void DynamicsConfig::validate() const {
    if (alpha_self <= 0.0 || alpha_self > 1.0) {
        throw std::invalid_argument("dynamics.alpha_self: must lie in (0,1]");
    }
    if (alpha_ai <= 0.0 || alpha_ai >= alpha_self) {
        throw std::invalid_argument("dynamics.alpha_ai: need 0 < alpha_ai < alpha_self");
    }
    if (delta < 0.0 || delta > 1.0) {
        throw std::invalid_argument("dynamics.delta: must lie in [0,1]");
    }
    if (sensitivity < 0.0) {
        throw std::invalid_argument("dynamics.sensitivity: must be nonnegative");
    }
    if (w_effort < 0.0) {
        throw std::invalid_argument("dynamics.w_effort: must be nonnegative");
    }
    if (eta_dep < 0.0 || eta_dep > 1.0) {
        throw std::invalid_argument("dynamics.eta_dep: must lie in [0,1]");
    }
    if (kappa_dep < 0.0 || kappa_dep > 1.0) {
        throw std::invalid_argument("dynamics.kappa_dep: must lie in [0,1]");
    }
    if (gamma_diff < 0.0 || gamma_diff > 1.0) {
        throw std::invalid_argument("dynamics.gamma_diff: must lie in [0,1]");
    }
    if (q_a < 0.0 || q_a > 1.0) {
        throw std::invalid_argument("dynamics.q_a: must lie in [0,1]");
    }
}

std::vector<AgentState> init_population(int n, int k, Rng& rng) {
    if (n < 0 || k <= 0) {
        throw std::invalid_argument("init_population: n must be >= 0 and k positive");
    }
    std::vector<AgentState> population(static_cast<std::size_t>(n));
    for (auto& agent : population) {
        agent.skills.resize(static_cast<std::size_t>(k));
        for (auto& s : agent.skills) {
            s = rng.uniform(kInitSkillLo, kInitSkillHi);
        }
    }
    return population;
}

bool decide_ai_use(const AgentState& agent, double effort, const RegimeSpec& regime,
                   const DynamicsConfig& cfg, bool ai_available, Rng& rng) {
    if (!ai_available) {
        return false;
    }
    const double boost =
        1.0 + cfg.sensitivity * agent.dependency + cfg.w_effort * std::min(effort, 1.0);
    const double p_eff = std::clamp(regime.p_base * boost, 0.0, 1.0);
    return rng.bernoulli(p_eff);
}

void learn(std::vector<double>& skills, const env::Task& task, double rate) {
    if (skills.size() != task.requirements.size()) {
        throw std::invalid_argument("learn: skill/requirement dimension mismatch");
    }
    for (int j : task.active) {
        auto& s = skills[static_cast<std::size_t>(j)];
        s += rate * (1.0 - s) * task.requirements[static_cast<std::size_t>(j)];
    }
}

void atrophy(std::vector<double>& skills, const env::Task& task, double delta) {
    for (int j : task.active) {
        skills[static_cast<std::size_t>(j)] *= (1.0 - delta);
    }
}

void atrophy_all(std::vector<double>& skills, double delta) {
    for (auto& s : skills) {
        s *= (1.0 - delta);
    }
}

double update_dependency(double d, bool used_ai, const DynamicsConfig& cfg) {
    if (used_ai) {
        return d + cfg.eta_dep * (1.0 - d);
    }
    return d * (1.0 - cfg.kappa_dep);
}

double perform_self(std::span<const double> skills, const env::Task& task,
                    const DynamicsConfig& cfg) {
    const double m = env::mismatch(skills, task);
    const double score = (1.0 - m) * (1.0 - cfg.gamma_diff * task.perturbed_difficulty);
    return std::clamp(score, 0.0, 1.0);
}

double perform_hybrid(const DynamicsConfig& cfg) {
    return cfg.q_a;
}

const char* to_string(RegimeKind kind) {
    switch (kind) {
        case RegimeKind::FullDelegation: return "full_delegation";
        case RegimeKind::MinimalAI: return "minimal_ai";
        case RegimeKind::Mixed: return "mixed";
    }
    return "?";
}

} // namespace coglab::agents
