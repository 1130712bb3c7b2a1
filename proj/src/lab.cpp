#include "coglab/lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace coglab::lab {

namespace {

struct RunKey {
    int cell = 0;
    int regime_idx = 0;
    int config_idx = 0;
    int replicate = 0;
};

double mean_of(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

Stat stat_of(const std::vector<double>& xs) {
    Stat s;
    s.mean = mean_of(xs);
    double var = 0.0;
    for (double x : xs) {
        var += (x - s.mean) * (x - s.mean);
    }
    s.stddev = xs.empty() ? 0.0 : std::sqrt(var / static_cast<double>(xs.size()));
    return s;
}

engine::SimConfig cell_config(const engine::SimConfig& base, const agents::RegimeSpec& regime,
                              const ParamConfig& pc, std::uint64_t run_seed) {
    engine::SimConfig cfg = base;
    cfg.regime = regime;
    cfg.dynamics.sensitivity = pc.sensitivity;
    cfg.dynamics.delta = pc.delta;
    cfg.seed = run_seed;
    return cfg;
}

CellSummary aggregate(const std::string& label, const agents::RegimeSpec& regime,
                      const ParamConfig& pc, const std::vector<engine::RunSummary>& runs) {
    CellSummary cell;
    cell.label = label;
    cell.regime = regime.kind;
    cell.delta = pc.delta;
    cell.sensitivity = pc.sensitivity;
    cell.n_seeds = static_cast<int>(runs.size());

    std::vector<double> v(runs.size());
    auto collect = [&](auto getter) {
        for (std::size_t i = 0; i < runs.size(); ++i) {
            v[i] = getter(runs[i]);
        }
        return stat_of(v);
    };
    cell.cai_star = collect([](const engine::RunSummary& r) { return r.metric_set.cai_star; });
    cell.d = collect([](const engine::RunSummary& r) { return r.metric_set.d; });
    cell.hri = collect([](const engine::RunSummary& r) { return r.metric_set.hri; });
    cell.hcdr = collect([](const engine::RunSummary& r) { return r.metric_set.hcdr; });
    cell.q_h = collect([](const engine::RunSummary& r) { return r.q_h; });
    cell.q_ha = collect([](const engine::RunSummary& r) { return r.q_ha; });
    cell.skill_mean = collect([](const engine::RunSummary& r) { return r.skill_mean; });
    cell.ai_use_rate = collect([](const engine::RunSummary& r) { return r.ai_use_rate; });
    cell.dependency_mean = collect([](const engine::RunSummary& r) { return r.dependency_mean; });
    return cell;
}

/// Pure parallel map over run configs; results land in a pre-sized vector
/// indexed by run, so the outcome is independent of scheduling.
std::vector<engine::RunSummary> run_all(const std::vector<engine::SimConfig>& configs,
                                        int workers) {
    std::vector<engine::RunSummary> results(configs.size());
    if (configs.empty()) {
        return results;
    }
    workers = std::clamp<int>(workers, 1, static_cast<int>(configs.size()));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= configs.size() || failed.load()) {
                return;
            }
            try {
                results[i] = engine::run(configs[i]).summary;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) {
                    const auto& cfg = configs[i];
                    char cell[160];
                    std::snprintf(cell, sizeof(cell),
                                  "cell regime=%s sensitivity=%g delta=%g seed=%llu: ",
                                  agents::to_string(cfg.regime.kind), cfg.dynamics.sensitivity,
                                  cfg.dynamics.delta,
                                  static_cast<unsigned long long>(cfg.seed));
                    error_message = std::string(cell) + e.what();
                }
                return;
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failed.load()) {
        throw std::runtime_error("run_sweep: " + error_message);
    }
    return results;
}

void append_stat(std::string& out, const Stat& s) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), ",%.6f,%.6f", s.mean, s.stddev);
    out += buf;
}

} // namespace

SweepSpec default_sweep(const engine::SimConfig& base, int n_seeds) {
    SweepSpec spec;
    spec.base = base;
    spec.regimes = {agents::make_regime(agents::RegimeKind::FullDelegation),
                    agents::make_regime(agents::RegimeKind::MinimalAI),
                    agents::make_regime(agents::RegimeKind::Mixed)};
    spec.configs = {{"P0", 0.2, 0.004}, {"P1", 0.6, 0.003}, {"P2", 0.4, 0.002}};
    spec.seeds = replicate_seeds(base.seed, n_seeds);
    return spec;
}

OptSpec default_opt(const engine::SimConfig& base, int n_seeds) {
    OptSpec spec;
    spec.base = base;
    spec.base.regime = agents::make_regime(agents::RegimeKind::Mixed);
    spec.delta_grid = {0.0040, 0.0035, 0.0030, 0.0025, 0.0020, 0.0015, 0.0010, 0.0005, 0.0000};
    spec.seeds = replicate_seeds(base.seed, n_seeds);
    return spec;
}

std::vector<std::uint64_t> replicate_seeds(std::uint64_t root, int n) {
    std::vector<std::uint64_t> seeds;
    seeds.reserve(static_cast<std::size_t>(std::max(0, n)));
    for (int i = 0; i < n; ++i) {
        seeds.push_back(root + static_cast<std::uint64_t>(i));
    }
    return seeds;
}

std::uint64_t run_seed_for(std::uint64_t replicate_seed, int regime_idx, int config_idx) {
    return mix_seed(replicate_seed, static_cast<std::uint64_t>(regime_idx),
                    static_cast<std::uint64_t>(config_idx));
}

std::vector<CellSummary> run_sweep(const SweepSpec& spec, int workers) {
    if (spec.regimes.empty() || spec.configs.empty() || spec.seeds.empty()) {
        throw std::invalid_argument("run_sweep: regimes, configs and seeds must be nonempty");
    }

    std::vector<engine::SimConfig> run_configs;
    run_configs.reserve(spec.regimes.size() * spec.configs.size() * spec.seeds.size());
    for (std::size_t r = 0; r < spec.regimes.size(); ++r) {
        for (std::size_t c = 0; c < spec.configs.size(); ++c) {
            for (std::size_t s = 0; s < spec.seeds.size(); ++s) {
                const std::uint64_t seed =
                    run_seed_for(spec.seeds[s], static_cast<int>(r), static_cast<int>(c));
                run_configs.push_back(
                    cell_config(spec.base, spec.regimes[r], spec.configs[c], seed));
            }
        }
    }

    const std::vector<engine::RunSummary> summaries = run_all(run_configs, workers);

    std::vector<CellSummary> cells;
    cells.reserve(spec.regimes.size() * spec.configs.size());
    std::size_t idx = 0;
    for (std::size_t r = 0; r < spec.regimes.size(); ++r) {
        for (std::size_t c = 0; c < spec.configs.size(); ++c) {
            std::vector<engine::RunSummary> runs(summaries.begin() + static_cast<std::ptrdiff_t>(idx),
                                                 summaries.begin() +
                                                     static_cast<std::ptrdiff_t>(idx + spec.seeds.size()));
            idx += spec.seeds.size();
            cells.push_back(aggregate(spec.configs[c].label, spec.regimes[r], spec.configs[c], runs));
        }
    }
    return cells;
}

OptResult select_best(const std::vector<CellSummary>& cells) {
    if (cells.empty()) {
        throw std::invalid_argument("select_best: empty candidate list");
    }

    OptResult result;
    result.cells = cells;

    const CellSummary* best = nullptr;
    for (const auto& cell : cells) {
        if (cell.hcdr.mean < 0.0) {
            continue; // capability-degrading candidates are excluded
        }
        if (best == nullptr || cell.cai_star.mean > best->cai_star.mean ||
            (cell.cai_star.mean == best->cai_star.mean && cell.delta < best->delta)) {
            best = &cell;
        }
    }

    result.feasible = best != nullptr;
    if (best != nullptr) {
        result.best_delta = best->delta;
        result.amplification_achieved = best->cai_star.mean > 0.0;
    }
    return result;
}

OptResult optimize_atrophy(const OptSpec& spec, int workers) {
    if (spec.delta_grid.empty() || spec.seeds.empty()) {
        throw std::invalid_argument("optimize_atrophy: delta grid and seeds must be nonempty");
    }
    for (double delta : spec.delta_grid) {
        if (delta < 0.0) {
            throw std::invalid_argument("optimize_atrophy: delta candidates must be >= 0");
        }
    }

    SweepSpec sweep;
    sweep.base = spec.base;
    sweep.regimes = {agents::make_regime(agents::RegimeKind::Mixed)};
    sweep.seeds = spec.seeds;
    sweep.configs.reserve(spec.delta_grid.size());
    for (double delta : spec.delta_grid) {
        char label[32];
        std::snprintf(label, sizeof(label), "delta=%.4f", delta);
        sweep.configs.push_back({label, spec.base.dynamics.sensitivity, delta});
    }

    return select_best(run_sweep(sweep, workers));
}

std::string render_csv(const std::vector<CellSummary>& cells) {
    if (cells.empty()) {
        throw std::invalid_argument("render_csv: no cells to render");
    }
    std::string out = "# std denominator: population over seeds (N)\n";
    out += "label,regime,delta,sensitivity"
           ",cai_star_mean,cai_star_std,d_mean,d_std,hri_mean,hri_std,hcdr_mean,hcdr_std"
           ",q_h_mean,q_h_std,q_ha_mean,q_ha_std,skill_mean_mean,skill_mean_std"
           ",ai_use_rate_mean,ai_use_rate_std\n";
    for (const auto& cell : cells) {
        char head[128];
        std::snprintf(head, sizeof(head), "%s,%s,%.6f,%.6f", cell.label.c_str(),
                      agents::to_string(cell.regime), cell.delta, cell.sensitivity);
        out += head;
        append_stat(out, cell.cai_star);
        append_stat(out, cell.d);
        append_stat(out, cell.hri);
        append_stat(out, cell.hcdr);
        append_stat(out, cell.q_h);
        append_stat(out, cell.q_ha);
        append_stat(out, cell.skill_mean);
        append_stat(out, cell.ai_use_rate);
        out += "\n";
    }
    return out;
}

std::string render_text(const std::vector<CellSummary>& cells) {
    if (cells.empty()) {
        throw std::invalid_argument("render_text: no cells to render");
    }
    std::string out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-14s %-16s %8s %6s %18s %18s %18s %18s\n", "label",
                  "regime", "delta", "sigma", "CAI* (mean/std)", "D (mean/std)",
                  "HCDR (mean/std)", "skill (mean/std)");
    out += line;
    out += std::string(120, '-') + "\n";
    for (const auto& cell : cells) {
        std::snprintf(line, sizeof(line),
                      "%-14s %-16s %8.4f %6.2f %9.4f/%-8.4f %9.4f/%-8.4f %9.4f/%-8.4f %9.4f/%-8.4f\n",
                      cell.label.c_str(), agents::to_string(cell.regime), cell.delta,
                      cell.sensitivity, cell.cai_star.mean, cell.cai_star.stddev, cell.d.mean,
                      cell.d.stddev, cell.hcdr.mean, cell.hcdr.stddev, cell.skill_mean.mean,
                      cell.skill_mean.stddev);
        out += line;
    }
    return out;
}

std::string render_plot_series(const std::vector<CellSummary>& cells, const std::string& column) {
    if (cells.empty()) {
        throw std::invalid_argument("render_plot_series: no cells to render");
    }
    std::string out = "delta," + column + "\n";
    for (const auto& cell : cells) {
        double value = 0.0;
        if (column == "cai_star") {
            value = cell.cai_star.mean;
        } else if (column == "d") {
            value = cell.d.mean;
        } else {
            throw std::invalid_argument("render_plot_series: unknown column " + column);
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f\n", cell.delta, value);
        out += buf;
    }
    return out;
}

std::vector<CellSummary> parse_csv(const std::string& text) {
    std::vector<CellSummary> cells;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen) {
            header_seen = true; // column header row
            continue;
        }
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 20) {
            throw std::invalid_argument("parse_csv: malformed row: " + line);
        }
        CellSummary cell;
        cell.label = fields[0];
        if (fields[1] == "full_delegation") {
            cell.regime = agents::RegimeKind::FullDelegation;
        } else if (fields[1] == "minimal_ai") {
            cell.regime = agents::RegimeKind::MinimalAI;
        } else if (fields[1] == "mixed") {
            cell.regime = agents::RegimeKind::Mixed;
        } else {
            throw std::invalid_argument("parse_csv: unknown regime: " + fields[1]);
        }
        cell.delta = std::stod(fields[2]);
        cell.sensitivity = std::stod(fields[3]);
        auto stat_at = [&fields](std::size_t i) {
            return Stat{std::stod(fields[i]), std::stod(fields[i + 1])};
        };
        cell.cai_star = stat_at(4);
        cell.d = stat_at(6);
        cell.hri = stat_at(8);
        cell.hcdr = stat_at(10);
        cell.q_h = stat_at(12);
        cell.q_ha = stat_at(14);
        cell.skill_mean = stat_at(16);
        cell.ai_use_rate = stat_at(18);
        cells.push_back(std::move(cell));
    }
    return cells;
}

} // namespace coglab::lab
