#pragma once

#include <array>
#include <span>
#include <vector>

#include "coglab/rng.hpp"

namespace coglab::env {

enum class FamilyKind { Analytical, Diagnostic, Sequential, Mixed };

/// Task family template. The three pure families activate fixed disjoint
/// dimension blocks; the mixed family draws a fresh 3-dimension subset per
/// task (activation_mask empty here).
struct TaskFamily {
    FamilyKind kind;
    std::vector<int> activation_mask;
    double base_difficulty;
};

struct Task {
    FamilyKind family;
    std::vector<int> active;          // activated skill dimensions
    std::vector<double> requirements; // length k, zero off-mask
    double nominal_difficulty;        // C
    double perturbed_difficulty;      // C-tilde
};

struct EnvSpec {
    int k = 6;
    std::array<TaskFamily, 4> families{}; // analytical, diagnostic, sequential, mixed
    std::array<double, 4> family_weights{0.30, 0.30, 0.30, 0.10};
    double requirement_lo = 0.30;
    double requirement_hi = 0.90;
    double difficulty_jitter = 0.15;
    double epsilon_max = 0.20;
    double lambda_m = 1.0; // mismatch effort weight
    double lambda_c = 0.5; // difficulty effort weight

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Environment with default family structure for k dimensions (k >= 3):
/// analytical/diagnostic/sequential split the dimension range into thirds,
/// mixed draws 3 dimensions per task with the highest base difficulty.
EnvSpec make_env(int k = 6);

/// Copy of env with family_weights replaced; all other fields unchanged.
/// Throws on an invalid weight vector.
EnvSpec shifted_env(const EnvSpec& base, const std::array<double, 4>& weights);

/// Stress-phase distribution: composite (mixed) tasks become dominant.
EnvSpec phase3_env(const EnvSpec& base);

/// Novelty-probe distribution: analytical and sequential masks swapped,
/// heavily reweighted toward mixed tasks.
EnvSpec novelty_env(const EnvSpec& base);

/// Probe distribution with the perturbation bound doubled (clamped to 1).
EnvSpec perturbation_env(const EnvSpec& base);

/// Nominal difficulty plus a one-sided uniform perturbation in
/// [0, epsilon_max], clamped to [0,1].
double perturb(double c, const EnvSpec& env, Rng& rng);

Task sample_task(const EnvSpec& env, Rng& rng);

/// Mean positive requirement shortfall, (1/k) * sum_j max(0, r_j - s_j).
/// Throws std::invalid_argument on dimension mismatch.
double mismatch(std::span<const double> skills, const Task& task);

/// Perceived engagement cost, lambda_m * m + lambda_c * c_tilde.
double effort(double m, double c_tilde, const EnvSpec& env);

const char* to_string(FamilyKind f);

} // namespace coglab::env
