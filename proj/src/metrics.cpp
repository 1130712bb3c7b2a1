#include "coglab/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace coglab::metrics {

double cai_star(const PerformanceTriple& t) {
    const double best = std::max(t.q_h, t.q_a);
    if (best <= 0.0) {
        throw std::domain_error("cai_star: degenerate baseline, max(q_h, q_a) must be > 0");
    }
    return (t.q_ha - best) / best;
}

double dependency_ratio(const PerformanceTriple& t) {
    if (t.q_ha <= 0.0) {
        throw std::domain_error("dependency_ratio: q_ha must be > 0");
    }
    return t.q_a / t.q_ha;
}

double hri(double d) {
    return 1.0 - d;
}

double hcdr(std::span<const DriftSample> samples) {
    if (samples.size() < 2) {
        throw std::invalid_argument("hcdr: need at least 2 samples");
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].time <= samples[i - 1].time) {
            throw std::invalid_argument("hcdr: sample times must be strictly increasing");
        }
    }

    const double n = static_cast<double>(samples.size());
    double t_mean = 0.0;
    double q_mean = 0.0;
    for (const auto& s : samples) {
        t_mean += static_cast<double>(s.time);
        q_mean += s.q_h;
    }
    t_mean /= n;
    q_mean /= n;

    double stt = 0.0;
    double stq = 0.0;
    for (const auto& s : samples) {
        const double dt = static_cast<double>(s.time) - t_mean;
        stt += dt * dt;
        stq += dt * (s.q_h - q_mean);
    }
    return stq / stt;
}

double synergy_model(double q_h, double q_a, double alpha) {
    return q_h + q_a + alpha * q_h * q_a;
}

RegimeLabel classify_regime(const MetricSet& m) {
    RegimeLabel label{};
    label.sustainable = m.hcdr >= 0.0;

    if (m.cai_star > 0.0) {
        if (m.d > 0.8 && m.hcdr < 0.0) {
            label.quadrant = Quadrant::AutomationTrap;
        } else {
            label.quadrant = Quadrant::Amplification;
        }
    } else {
        label.quadrant = m.d > 0.8 ? Quadrant::IneffectiveAutomation : Quadrant::HumanDominant;
    }

    if (m.d < 0.5) {
        label.dominance_band = DominanceBand::HumanDominant;
    } else if (m.d <= 0.8) {
        label.dominance_band = DominanceBand::Balanced;
    } else {
        label.dominance_band = DominanceBand::AiDominated;
    }
    return label;
}

MetricSet make_metric_set(const PerformanceTriple& t, double hcdr_value) {
    MetricSet m{};
    m.cai_star = cai_star(t);
    m.d = dependency_ratio(t);
    m.hri = hri(m.d);
    m.hcdr = hcdr_value;
    return m;
}

const char* to_string(Quadrant q) {
    switch (q) {
        case Quadrant::Amplification: return "amplification";
        case Quadrant::AutomationTrap: return "automation_trap";
        case Quadrant::HumanDominant: return "human_dominant";
        case Quadrant::IneffectiveAutomation: return "ineffective_automation";
    }
    return "?";
}

const char* to_string(DominanceBand b) {
    switch (b) {
        case DominanceBand::HumanDominant: return "human_dominant";
        case DominanceBand::Balanced: return "balanced";
        case DominanceBand::AiDominated: return "ai_dominated";
    }
    return "?";
}

} // namespace coglab::metrics
