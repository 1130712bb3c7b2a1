#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace coglab::metrics {

/// One joint measurement of standalone and hybrid performance.
/// q_a is a fixed reliability baseline, constant within a run.
struct PerformanceTriple {
    double q_h;  // standalone human score, [0,1]
    double q_a;  // standalone AI baseline, [0,1]
    double q_ha; // measured hybrid score, [0,1]
};

/// The four collaboration metrics. hri == 1 - d by construction; d may
/// exceed 1 when the hybrid underperforms the AI baseline.
struct MetricSet {
    double cai_star; // relative hybrid gain over best standalone agent
    double d;        // dependency ratio q_a / q_ha
    double hri;      // human reliance index, 1 - d
    double hcdr;     // drift of AI-off human performance, score per tick
};

enum class Quadrant {
    Amplification,
    AutomationTrap,
    HumanDominant,
    IneffectiveAutomation,
};

enum class DominanceBand {
    HumanDominant, // d < 0.5
    Balanced,      // 0.5 <= d <= 0.8
    AiDominated,   // d > 0.8
};

struct RegimeLabel {
    Quadrant quadrant;
    bool sustainable; // hcdr >= 0
    DominanceBand dominance_band;
};

/// One AI-off performance sample at a given tick.
struct DriftSample {
    std::int64_t time;
    double q_h;
};

/// Relative performance gain of the hybrid over the best standalone
/// agent: (q_ha - max(q_h, q_a)) / max(q_h, q_a).
/// Throws std::domain_error when max(q_h, q_a) == 0.
double cai_star(const PerformanceTriple& t);

/// Dependency ratio q_a / q_ha. Values above 1 indicate the hybrid fell
/// below the AI baseline (ineffective integration) and are permitted.
/// Throws std::domain_error when q_ha == 0.
double dependency_ratio(const PerformanceTriple& t);

/// Human reliance index, 1 - d.
double hri(double d);

/// Drift rate of q_h over time: ordinary least squares slope of the
/// sample series. For exactly two samples this reduces to the difference
/// quotient. Requires >= 2 samples with strictly increasing times;
/// throws std::invalid_argument otherwise.
double hcdr(std::span<const DriftSample> samples);

/// Idealized synergy model q_h + q_a + alpha * q_h * q_a. Unclamped;
/// a reference curve, not a bounded measurement.
double synergy_model(double q_h, double q_a, double alpha);

/// Phase-diagram classification. The vertical split is cai_star > 0
/// (zero counts as no gain); the horizontal split is d > 0.8; the
/// automation trap additionally requires hcdr < 0.
RegimeLabel classify_regime(const MetricSet& m);

/// Convenience: assemble a MetricSet from a triple and a precomputed
/// drift rate.
MetricSet make_metric_set(const PerformanceTriple& t, double hcdr_value);

const char* to_string(Quadrant q);
const char* to_string(DominanceBand b);

} // namespace coglab::metrics
