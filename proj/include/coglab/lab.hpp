#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coglab/engine.hpp"

namespace coglab::lab {

/// One (sensitivity, atrophy) parameter point of the protocol.
struct ParamConfig {
    std::string label;
    double sensitivity = 0.4;
    double delta = 0.002;
};

/// Regime x configuration x seed experiment grid.
struct SweepSpec {
    engine::SimConfig base;
    std::vector<agents::RegimeSpec> regimes;
    std::vector<ParamConfig> configs;
    std::vector<std::uint64_t> seeds;
};

struct Stat {
    double mean = 0.0;
    double stddev = 0.0; // population denominator over seeds
};

/// Seed-aggregated summary of one (regime, config) cell.
struct CellSummary {
    std::string label;
    agents::RegimeKind regime = agents::RegimeKind::Mixed;
    double delta = 0.0;
    double sensitivity = 0.0;
    int n_seeds = 0;
    Stat cai_star, d, hri, hcdr, q_h, q_ha, skill_mean, ai_use_rate, dependency_mean;
};

struct OptSpec {
    engine::SimConfig base; // regime forced to mixed reliance
    std::vector<double> delta_grid;
    std::vector<std::uint64_t> seeds;
};

struct OptResult {
    std::vector<CellSummary> cells; // grid order
    std::optional<double> best_delta;
    bool feasible = false;
    bool amplification_achieved = false;
};

/// The standard protocol: all three reliance regimes crossed with the
/// P0/P1/P2 parameter points over n_seeds replicate seeds.
SweepSpec default_sweep(const engine::SimConfig& base, int n_seeds);

/// The standard atrophy search: mixed reliance, sensitivity from the base
/// config, descending delta grid 0.0040 .. 0.0000 in steps of 0.0005.
OptSpec default_opt(const engine::SimConfig& base, int n_seeds);

/// Replicate seeds: n consecutive values from the root seed.
std::vector<std::uint64_t> replicate_seeds(std::uint64_t root, int n);

/// Per-run seed for a sweep cell; fixed derivation so partial sweeps
/// reproduce the full sweep's runs.
std::uint64_t run_seed_for(std::uint64_t replicate_seed, int regime_idx, int config_idx);

/// Execute every (regime, config, seed) run and aggregate per cell.
/// Deterministic for any worker count.
std::vector<CellSummary> run_sweep(const SweepSpec& spec, int workers = 1);

/// Constrained selection over delta-keyed cells: feasible set is
/// mean hcdr >= 0, best is the feasible argmax of mean cai_star (ties to
/// the smallest delta). Throws std::invalid_argument on empty input.
OptResult select_best(const std::vector<CellSummary>& cells);

/// Run the delta grid under mixed reliance with everything else fixed,
/// then apply select_best.
OptResult optimize_atrophy(const OptSpec& spec, int workers = 1);

/// Report CSV: header comment, column header, one row per cell with
/// mean/std pairs at 6 decimal places.
std::string render_csv(const std::vector<CellSummary>& cells);

/// Plain-text table mirroring the CSV content.
std::string render_text(const std::vector<CellSummary>& cells);

/// Two-column plot series (delta versus the mean of the named column,
/// "cai_star" or "d").
std::string render_plot_series(const std::vector<CellSummary>& cells, const std::string& column);

/// Inverse of render_csv to formatting precision; used by the report
/// round-trip checks.
std::vector<CellSummary> parse_csv(const std::string& text);

} // namespace coglab::lab
