#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "coglab/engine.hpp"
#include "coglab/lab.hpp"

namespace coglab::config {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sweep/optimize settings carried by the configuration file alongside
/// the single-run SimConfig.
struct LabSettings {
    int sweep_seeds = 20;
    std::vector<agents::RegimeKind> sweep_regimes = {
        agents::RegimeKind::FullDelegation,
        agents::RegimeKind::MinimalAI,
        agents::RegimeKind::Mixed,
    };
    std::vector<lab::ParamConfig> sweep_configs = {
        {"P0", 0.2, 0.004},
        {"P1", 0.6, 0.003},
        {"P2", 0.4, 0.002},
    };
    int opt_seeds = 20;
    std::vector<double> delta_grid = {0.0040, 0.0035, 0.0030, 0.0025, 0.0020,
                                      0.0015, 0.0010, 0.0005, 0.0000};
};

/// A fully resolved configuration: every field has a concrete value.
struct Resolved {
    engine::SimConfig sim;
    LabSettings lab;
};

/// All defaults; equivalent to parsing an empty file. The default run is
/// mixed reliance at the P2 parameter point.
Resolved defaults();

/// Parse a sectioned key=value document. Accepts [section] headers and
/// dotted keys (section.key = value). Unknown sections or keys are hard
/// errors with a line number; module invariants are checked after
/// parsing and violations name the offending field.
Resolved parse_text(const std::string& text, const std::string& origin);

/// parse_text over the contents of path.
Resolved parse_file(const std::string& path);

/// Desk-scale override: 5 seeds, half-length phases.
void apply_fast(Resolved& resolved);

/// Render the fully resolved document. Reparsing the output reproduces
/// the configuration exactly (doubles are emitted round-trip precise).
std::string render(const Resolved& resolved);

lab::SweepSpec sweep_spec(const Resolved& resolved);
lab::OptSpec opt_spec(const Resolved& resolved);

} // namespace coglab::config
