// coglab — deterministic human-AI reliance simulator and experiment lab.
//
// Subcommands:
//   run       one (config, seed) simulation -> samples.csv + summary.json
//   sweep     regime x configuration x seed protocol -> cells.json + reports
//   optimize  constrained atrophy-rate search -> opt_result.json + reports
//   report    re-render report files from a bundle's stored JSON
//
// Exit codes: 0 success, 1 simulation/configuration error, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "coglab/bundle.hpp"
#include "coglab/config.hpp"
#include "coglab/engine.hpp"
#include "coglab/lab.hpp"

namespace {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    const char* env = std::getenv("COGLAB_LOG");
    if (env == nullptr) {
        return LogLevel::Info;
    }
    const std::string value(env);
    if (value == "error") {
        return LogLevel::Error;
    }
    if (value == "debug") {
        return LogLevel::Debug;
    }
    return LogLevel::Info;
}

void log_info(const std::string& message) {
    if (log_level() >= LogLevel::Info) {
        std::cerr << "[coglab] " << message << "\n";
    }
}

std::string join_args(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) {
            out += ' ';
        }
        out += argv[i];
    }
    return out;
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
    bool fast = false;
};

coglab::config::Resolved load_config(const CommonOpts& opts, const std::string& default_out) {
    coglab::config::Resolved resolved = opts.config_path.empty()
                                            ? coglab::config::defaults()
                                            : coglab::config::parse_file(opts.config_path);
    if (opts.seed_set) {
        resolved.sim.seed = opts.seed;
    }
    if (opts.fast) {
        coglab::config::apply_fast(resolved);
    }
    (void)default_out;
    return resolved;
}

int effective_workers(int requested) {
    if (requested > 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void add_common(CLI::App* cmd, CommonOpts& opts, const std::string& default_out) {
    cmd->add_option("--config", opts.config_path, "configuration file (sectioned key=value)");
    cmd->add_option("--out", opts.out_dir, "output directory")->default_val(default_out);
    cmd->add_option("--seed", opts.seed, "override engine.seed")->each([&opts](const std::string&) {
        opts.seed_set = true;
    });
    cmd->add_option("--workers", opts.workers, "worker threads (default: hardware)");
    cmd->add_flag("--fast", opts.fast, "desk scale: 5 seeds, half-length phases");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "coglab — deterministic human-AI reliance simulator and experiment lab.\n"
        "Log verbosity: set COGLAB_LOG to error, info or debug.\n"
        "Exit codes: 0 success, 1 simulation/configuration error, 2 usage error."};
    app.require_subcommand(1);

    CommonOpts run_opts, sweep_opts, opt_opts, report_opts;

    auto* cmd_run = app.add_subcommand("run", "execute one (config, seed) simulation");
    add_common(cmd_run, run_opts, "out/run");

    auto* cmd_sweep = app.add_subcommand("sweep", "regime x configuration x seed protocol");
    add_common(cmd_sweep, sweep_opts, "out/sweep");

    auto* cmd_opt = app.add_subcommand("optimize", "constrained search over the atrophy rate");
    add_common(cmd_opt, opt_opts, "out/optimize");

    auto* cmd_report = app.add_subcommand("report", "re-render reports from a stored bundle");
    cmd_report->add_option("--out", report_opts.out_dir, "bundle directory to re-render")
        ->default_val("out/run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command_line = join_args(argc, argv);
    try {
        if (cmd_run->parsed()) {
            const auto resolved = load_config(run_opts, "out/run");
            log_info("run: seed " + std::to_string(resolved.sim.seed));
            const auto result = coglab::engine::run(resolved.sim);
            coglab::bundle::write_run(run_opts.out_dir, resolved, result, command_line);
            {
                const auto& m = result.summary.metric_set;
                char line[160];
                std::snprintf(line, sizeof(line),
                              "run: cai_star=%.4f d=%.4f hri=%.4f hcdr=%.2e (%s)", m.cai_star,
                              m.d, m.hri, m.hcdr,
                              coglab::metrics::to_string(result.summary.regime_label.quadrant));
                log_info(line);
            }
            log_info("run: wrote " + run_opts.out_dir);
        } else if (cmd_sweep->parsed()) {
            const auto resolved = load_config(sweep_opts, "out/sweep");
            const auto spec = coglab::config::sweep_spec(resolved);
            const int workers = effective_workers(sweep_opts.workers);
            log_info("sweep: " + std::to_string(spec.regimes.size()) + " regimes x " +
                     std::to_string(spec.configs.size()) + " configs x " +
                     std::to_string(spec.seeds.size()) + " seeds, " + std::to_string(workers) +
                     " workers");
            const auto cells = coglab::lab::run_sweep(spec, workers);
            coglab::bundle::write_sweep(sweep_opts.out_dir, resolved, cells, command_line);
            log_info("sweep: wrote " + sweep_opts.out_dir);
        } else if (cmd_opt->parsed()) {
            const auto resolved = load_config(opt_opts, "out/optimize");
            const auto spec = coglab::config::opt_spec(resolved);
            const int workers = effective_workers(opt_opts.workers);
            log_info("optimize: " + std::to_string(spec.delta_grid.size()) + " candidates x " +
                     std::to_string(spec.seeds.size()) + " seeds, " + std::to_string(workers) +
                     " workers");
            const auto result = coglab::lab::optimize_atrophy(spec, workers);
            coglab::bundle::write_opt(opt_opts.out_dir, resolved, result, command_line);
            if (result.best_delta.has_value()) {
                log_info("optimize: best delta " + std::to_string(*result.best_delta) +
                         (result.amplification_achieved ? " (amplification achieved)"
                                                        : " (best attainable compromise)"));
            } else {
                log_info("optimize: no feasible candidate");
            }
            log_info("optimize: wrote " + opt_opts.out_dir);
        } else if (cmd_report->parsed()) {
            const auto written = coglab::bundle::rerender(report_opts.out_dir);
            log_info("report: re-rendered " + std::to_string(written.size()) + " file(s) in " +
                     report_opts.out_dir);
        }
    } catch (const std::exception& e) {
        std::cerr << "coglab: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
