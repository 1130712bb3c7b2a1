#include "coglab/environment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace coglab::env {

namespace {

constexpr double kWeightTolerance = 1e-9;

double clamp01(double x) {
    return std::clamp(x, 0.0, 1.0);
}

void check_weights(const std::array<double, 4>& w) {
    double sum = 0.0;
    for (double x : w) {
        if (x < 0.0) {
            throw std::invalid_argument("family_weights: entries must be nonnegative");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > kWeightTolerance) {
        throw std::invalid_argument("family_weights: must sum to 1 (got " + std::to_string(sum) + ")");
    }
}

std::vector<int> dim_block(int k, int third) {
    const int lo = k * third / 3;
    const int hi = k * (third + 1) / 3;
    std::vector<int> dims;
    for (int j = lo; j < hi; ++j) {
        dims.push_back(j);
    }
    return dims;
}

} // namespace

void EnvSpec::validate() const {
    if (k < 3) {
        throw std::invalid_argument("environment.k: need at least 3 skill dimensions");
    }
    check_weights(family_weights);
    if (requirement_lo < 0.0 || requirement_hi > 1.0 || requirement_lo > requirement_hi) {
        throw std::invalid_argument("environment.requirement_range: need 0 <= lo <= hi <= 1");
    }
    if (difficulty_jitter < 0.0 || difficulty_jitter > 1.0) {
        throw std::invalid_argument("environment.difficulty_jitter: must lie in [0,1]");
    }
    if (epsilon_max < 0.0 || epsilon_max > 1.0) {
        throw std::invalid_argument("environment.epsilon_max: must lie in [0,1]");
    }
    if (lambda_m <= 0.0 || lambda_c <= 0.0) {
        throw std::invalid_argument("environment.lambda_m/lambda_c: effort weights must be positive");
    }
    for (const auto& fam : families) {
        if (fam.kind != FamilyKind::Mixed && fam.activation_mask.empty()) {
            throw std::invalid_argument("environment.families: activation mask empty");
        }
        if (fam.base_difficulty < 0.0 || fam.base_difficulty > 1.0) {
            throw std::invalid_argument("environment.families: base difficulty outside [0,1]");
        }
    }
}

EnvSpec make_env(int k) {
    EnvSpec env;
    env.k = k;
    env.families[0] = {FamilyKind::Analytical, dim_block(k, 0), 0.40};
    env.families[1] = {FamilyKind::Diagnostic, dim_block(k, 1), 0.50};
    env.families[2] = {FamilyKind::Sequential, dim_block(k, 2), 0.50};
    env.families[3] = {FamilyKind::Mixed, {}, 0.70};
    env.validate();
    return env;
}

EnvSpec shifted_env(const EnvSpec& base, const std::array<double, 4>& weights) {
    check_weights(weights);
    EnvSpec env = base;
    env.family_weights = weights;
    return env;
}

EnvSpec phase3_env(const EnvSpec& base) {
    return shifted_env(base, {0.15, 0.15, 0.20, 0.50});
}

EnvSpec novelty_env(const EnvSpec& base) {
    EnvSpec env = shifted_env(base, {0.10, 0.10, 0.10, 0.70});
    std::swap(env.families[0].activation_mask, env.families[2].activation_mask);
    return env;
}

EnvSpec perturbation_env(const EnvSpec& base) {
    EnvSpec env = base;
    env.epsilon_max = std::min(1.0, 2.0 * base.epsilon_max);
    return env;
}

double perturb(double c, const EnvSpec& env, Rng& rng) {
    return clamp01(c + rng.uniform(0.0, env.epsilon_max));
}

Task sample_task(const EnvSpec& env, Rng& rng) {
    // Family by cumulative weight.
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t fi = env.families.size() - 1;
    for (std::size_t i = 0; i < env.families.size(); ++i) {
        acc += env.family_weights[i];
        if (u < acc) {
            fi = i;
            break;
        }
    }
    const TaskFamily& fam = env.families[fi];

    Task task;
    task.family = fam.kind;
    if (fam.kind == FamilyKind::Mixed) {
        // Partial Fisher-Yates draw of 3 distinct dimensions, then sorted
        // so the emitted task is order-canonical.
        std::vector<int> pool(static_cast<std::size_t>(env.k));
        std::iota(pool.begin(), pool.end(), 0);
        const int take = std::min(3, env.k);
        for (int i = 0; i < take; ++i) {
            const auto j = i + static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(env.k - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        task.active.assign(pool.begin(), pool.begin() + take);
        std::sort(task.active.begin(), task.active.end());
    } else {
        task.active = fam.activation_mask;
    }

    task.requirements.assign(static_cast<std::size_t>(env.k), 0.0);
    for (int j : task.active) {
        task.requirements[static_cast<std::size_t>(j)] =
            rng.uniform(env.requirement_lo, env.requirement_hi);
    }

    task.nominal_difficulty =
        clamp01(fam.base_difficulty + rng.uniform(-env.difficulty_jitter, env.difficulty_jitter));
    task.perturbed_difficulty = perturb(task.nominal_difficulty, env, rng);
    return task;
}

double mismatch(std::span<const double> skills, const Task& task) {
    if (skills.size() != task.requirements.size()) {
        throw std::invalid_argument("mismatch: skill/requirement dimension mismatch");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < skills.size(); ++j) {
        sum += std::max(0.0, task.requirements[j] - skills[j]);
    }
    return sum / static_cast<double>(skills.size());
}

double effort(double m, double c_tilde, const EnvSpec& env) {
    return env.lambda_m * m + env.lambda_c * c_tilde;
}

const char* to_string(FamilyKind f) {
    switch (f) {
        case FamilyKind::Analytical: return "analytical";
        case FamilyKind::Diagnostic: return "diagnostic";
        case FamilyKind::Sequential: return "sequential";
        case FamilyKind::Mixed: return "mixed";
    }
    return "?";
}

} // namespace coglab::env
