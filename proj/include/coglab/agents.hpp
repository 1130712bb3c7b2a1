#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coglab/environment.hpp"
#include "coglab/rng.hpp"

namespace coglab::agents {

struct AgentState {
    std::vector<double> skills;   // per-dimension proficiency, each in [0,1]
    double dependency = 0.0;      // behavioral reliance state in [0,1]
    std::uint64_t ai_use_count = 0;
    std::uint64_t task_count = 0;
};

enum class RegimeKind { FullDelegation, MinimalAI, Mixed };

/// Base AI-use policy. p_base is tied to the regime kind: 1.0 for full
/// delegation, 0.0 for minimal AI, 0.5 for mixed reliance.
struct RegimeSpec {
    RegimeKind kind = RegimeKind::Mixed;
    double p_base = 0.5;
};

RegimeSpec make_regime(RegimeKind kind);

struct DynamicsConfig {
    double alpha_self = 0.05;    // autonomous learning rate
    double alpha_ai = 0.00105;   // assisted learning rate, << alpha_self
    double delta = 0.002;        // atrophy rate on AI-used tasks
    double sensitivity = 0.4;    // dependency-use-sensitivity (sigma)
    double w_effort = 0.3;       // effort coupling in the AI-use decision
    double eta_dep = 0.05;       // dependency growth per AI use
    double kappa_dep = 0.01;     // dependency decay per autonomous task
    double gamma_diff = 0.3;     // difficulty penalty on autonomous scores
    double q_a = 1.0;            // fixed AI reliability baseline
    bool atrophy_global = true;  // decay all dimensions (disuse) vs. activated only

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// n agents with skills uniform in [0.25, 0.55], zero dependency and
/// zeroed counters.
std::vector<AgentState> init_population(int n, int k, Rng& rng);

/// AI-use decision. Returns false when assistance is unavailable;
/// otherwise true with probability
///   clamp01(p_base * (1 + sensitivity * dependency + w_effort * min(effort, 1))).
/// Full delegation therefore always engages the AI and minimal AI never does.
bool decide_ai_use(const AgentState& agent, double effort, const RegimeSpec& regime,
                   const DynamicsConfig& cfg, bool ai_available, Rng& rng);

/// Saturating skill update on the task's activated dimensions:
/// s_j += rate * (1 - s_j) * r_j.
void learn(std::vector<double>& skills, const env::Task& task, double rate);

/// Multiplicative decay s_j *= (1 - delta) on the task's activated
/// dimensions. Callers apply this only on AI-used tasks.
void atrophy(std::vector<double>& skills, const env::Task& task, double delta);

/// Disuse variant: decay every dimension.
void atrophy_all(std::vector<double>& skills, double delta);

/// Reliance state update: grows toward 1 on AI use, decays otherwise.
double update_dependency(double d, bool used_ai, const DynamicsConfig& cfg);

/// Autonomous task score, clamp01((1 - mismatch) * (1 - gamma_diff * c_tilde)).
/// Deterministic given skills and task.
double perform_self(std::span<const double> skills, const env::Task& task,
                    const DynamicsConfig& cfg);

/// Assisted task score: the fixed AI baseline, independent of agent state.
double perform_hybrid(const DynamicsConfig& cfg);

const char* to_string(RegimeKind kind);

} // namespace coglab::agents
