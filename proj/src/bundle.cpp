#include "coglab/bundle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace coglab::bundle {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kMetaFile = "meta.txt";

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

ordered_json sample_to_json(const engine::EvalSample& s) {
    return ordered_json{{"time", s.time},
                        {"q_h", s.q_h},
                        {"q_h_pert", s.q_h_pert},
                        {"q_h_novel", s.q_h_novel},
                        {"q_ha", s.q_ha},
                        {"ai_use_rate", s.ai_use_rate},
                        {"skill_mean", s.skill_mean},
                        {"dependency_mean", s.dependency_mean}};
}

engine::EvalSample sample_from_json(const ordered_json& j) {
    engine::EvalSample s;
    s.time = j.at("time").get<std::int64_t>();
    s.q_h = j.at("q_h").get<double>();
    s.q_h_pert = j.at("q_h_pert").get<double>();
    s.q_h_novel = j.at("q_h_novel").get<double>();
    s.q_ha = j.at("q_ha").get<double>();
    s.ai_use_rate = j.at("ai_use_rate").get<double>();
    s.skill_mean = j.at("skill_mean").get<double>();
    s.dependency_mean = j.at("dependency_mean").get<double>();
    return s;
}

ordered_json summary_to_json(const engine::RunSummary& s) {
    return ordered_json{
        {"q_h", s.q_h},
        {"q_ha", s.q_ha},
        {"skill_mean", s.skill_mean},
        {"ai_use_rate", s.ai_use_rate},
        {"q_h_pert", s.q_h_pert},
        {"q_h_novel", s.q_h_novel},
        {"dependency_mean", s.dependency_mean},
        {"metrics",
         ordered_json{{"cai_star", s.metric_set.cai_star},
                      {"d", s.metric_set.d},
                      {"hri", s.metric_set.hri},
                      {"hcdr", s.metric_set.hcdr}}},
        {"regime_label",
         ordered_json{{"quadrant", metrics::to_string(s.regime_label.quadrant)},
                      {"sustainable", s.regime_label.sustainable},
                      {"dominance_band", metrics::to_string(s.regime_label.dominance_band)}}}};
}

engine::RunSummary summary_from_json(const ordered_json& j) {
    engine::RunSummary s;
    s.q_h = j.at("q_h").get<double>();
    s.q_ha = j.at("q_ha").get<double>();
    s.skill_mean = j.at("skill_mean").get<double>();
    s.ai_use_rate = j.at("ai_use_rate").get<double>();
    s.q_h_pert = j.at("q_h_pert").get<double>();
    s.q_h_novel = j.at("q_h_novel").get<double>();
    s.dependency_mean = j.at("dependency_mean").get<double>();
    const auto& m = j.at("metrics");
    s.metric_set = {m.at("cai_star").get<double>(), m.at("d").get<double>(),
                    m.at("hri").get<double>(), m.at("hcdr").get<double>()};
    s.regime_label = metrics::classify_regime(s.metric_set);
    return s;
}

ordered_json stat_to_json(const lab::Stat& s) {
    return ordered_json{{"mean", s.mean}, {"std", s.stddev}};
}

lab::Stat stat_from_json(const ordered_json& j) {
    return {j.at("mean").get<double>(), j.at("std").get<double>()};
}

ordered_json cell_to_json(const lab::CellSummary& c) {
    return ordered_json{{"label", c.label},
                        {"regime", agents::to_string(c.regime)},
                        {"delta", c.delta},
                        {"sensitivity", c.sensitivity},
                        {"n_seeds", c.n_seeds},
                        {"cai_star", stat_to_json(c.cai_star)},
                        {"d", stat_to_json(c.d)},
                        {"hri", stat_to_json(c.hri)},
                        {"hcdr", stat_to_json(c.hcdr)},
                        {"q_h", stat_to_json(c.q_h)},
                        {"q_ha", stat_to_json(c.q_ha)},
                        {"skill_mean", stat_to_json(c.skill_mean)},
                        {"ai_use_rate", stat_to_json(c.ai_use_rate)},
                        {"dependency_mean", stat_to_json(c.dependency_mean)}};
}

lab::CellSummary cell_from_json(const ordered_json& j) {
    lab::CellSummary c;
    c.label = j.at("label").get<std::string>();
    const auto regime = j.at("regime").get<std::string>();
    if (regime == "full_delegation") {
        c.regime = agents::RegimeKind::FullDelegation;
    } else if (regime == "minimal_ai") {
        c.regime = agents::RegimeKind::MinimalAI;
    } else if (regime == "mixed") {
        c.regime = agents::RegimeKind::Mixed;
    } else {
        throw std::runtime_error("unknown regime in cells JSON: " + regime);
    }
    c.delta = j.at("delta").get<double>();
    c.sensitivity = j.at("sensitivity").get<double>();
    c.n_seeds = j.at("n_seeds").get<int>();
    c.cai_star = stat_from_json(j.at("cai_star"));
    c.d = stat_from_json(j.at("d"));
    c.hri = stat_from_json(j.at("hri"));
    c.hcdr = stat_from_json(j.at("hcdr"));
    c.q_h = stat_from_json(j.at("q_h"));
    c.q_ha = stat_from_json(j.at("q_ha"));
    c.skill_mean = stat_from_json(j.at("skill_mean"));
    c.ai_use_rate = stat_from_json(j.at("ai_use_rate"));
    c.dependency_mean = stat_from_json(j.at("dependency_mean"));
    return c;
}

void write_meta(const fs::path& dir, const std::string& command_line) {
    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    std::string meta;
    meta += "created: " + std::string(stamp) + "\n";
    meta += "command: " + command_line + "\n";
    write_file(dir / kMetaFile, meta);
}

void write_reports(const fs::path& dir, const std::vector<lab::CellSummary>& cells,
                   bool with_plots) {
    write_file(dir / "report.csv", lab::render_csv(cells));
    write_file(dir / "report.txt", lab::render_text(cells));
    if (with_plots) {
        write_file(dir / "plot_cai_star.csv", lab::render_plot_series(cells, "cai_star"));
        write_file(dir / "plot_d.csv", lab::render_plot_series(cells, "d"));
    }
}

} // namespace

std::string samples_csv(const engine::RunResult& result) {
    std::string out = "time,q_h,q_h_pert,q_h_novel,q_ha,ai_use_rate,skill_mean,dependency_mean\n";
    char buf[256];
    for (const auto& s : result.samples) {
        std::snprintf(buf, sizeof(buf), "%lld,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                      static_cast<long long>(s.time), s.q_h, s.q_h_pert, s.q_h_novel, s.q_ha,
                      s.ai_use_rate, s.skill_mean, s.dependency_mean);
        out += buf;
    }
    return out;
}

std::string run_result_json(const engine::RunResult& result) {
    ordered_json j;
    j["samples"] = ordered_json::array();
    for (const auto& s : result.samples) {
        j["samples"].push_back(sample_to_json(s));
    }
    j["summary"] = summary_to_json(result.summary);
    return j.dump(2) + "\n";
}

std::string cells_json(const std::vector<lab::CellSummary>& cells) {
    ordered_json j;
    j["cells"] = ordered_json::array();
    for (const auto& c : cells) {
        j["cells"].push_back(cell_to_json(c));
    }
    return j.dump(2) + "\n";
}

std::string opt_result_json(const lab::OptResult& result) {
    ordered_json j;
    j["cells"] = ordered_json::array();
    for (const auto& c : result.cells) {
        j["cells"].push_back(cell_to_json(c));
    }
    if (result.best_delta.has_value()) {
        j["best_delta"] = *result.best_delta;
    } else {
        j["best_delta"] = nullptr;
    }
    j["feasible"] = result.feasible;
    j["amplification_achieved"] = result.amplification_achieved;
    return j.dump(2) + "\n";
}

engine::RunResult parse_run_result_json(const std::string& text) {
    const auto j = ordered_json::parse(text);
    engine::RunResult result;
    for (const auto& s : j.at("samples")) {
        result.samples.push_back(sample_from_json(s));
    }
    result.summary = summary_from_json(j.at("summary"));
    return result;
}

std::vector<lab::CellSummary> parse_cells_json(const std::string& text) {
    const auto j = ordered_json::parse(text);
    std::vector<lab::CellSummary> cells;
    for (const auto& c : j.at("cells")) {
        cells.push_back(cell_from_json(c));
    }
    return cells;
}

lab::OptResult parse_opt_result_json(const std::string& text) {
    const auto j = ordered_json::parse(text);
    lab::OptResult result;
    for (const auto& c : j.at("cells")) {
        result.cells.push_back(cell_from_json(c));
    }
    if (!j.at("best_delta").is_null()) {
        result.best_delta = j.at("best_delta").get<double>();
    }
    result.feasible = j.at("feasible").get<bool>();
    result.amplification_achieved = j.at("amplification_achieved").get<bool>();
    return result;
}

void write_run(const fs::path& dir, const config::Resolved& resolved,
               const engine::RunResult& result, const std::string& command_line) {
    fs::create_directories(dir);
    write_file(dir / "config_resolved.cfg", config::render(resolved));
    write_file(dir / "samples.csv", samples_csv(result));
    write_file(dir / "summary.json", run_result_json(result));
    write_meta(dir, command_line);
}

void write_sweep(const fs::path& dir, const config::Resolved& resolved,
                 const std::vector<lab::CellSummary>& cells, const std::string& command_line) {
    fs::create_directories(dir);
    write_file(dir / "config_resolved.cfg", config::render(resolved));
    write_file(dir / "cells.json", cells_json(cells));
    write_reports(dir, cells, false);
    write_meta(dir, command_line);
}

void write_opt(const fs::path& dir, const config::Resolved& resolved, const lab::OptResult& result,
               const std::string& command_line) {
    fs::create_directories(dir);
    write_file(dir / "config_resolved.cfg", config::render(resolved));
    write_file(dir / "opt_result.json", opt_result_json(result));
    write_reports(dir, result.cells, true);
    write_meta(dir, command_line);
}

std::vector<std::string> rerender(const fs::path& dir) {
    std::vector<std::string> written;
    if (fs::exists(dir / "summary.json")) {
        const auto result = parse_run_result_json(read_file(dir / "summary.json"));
        write_file(dir / "samples.csv", samples_csv(result));
        written.push_back("samples.csv");
        return written;
    }
    if (fs::exists(dir / "opt_result.json")) {
        const auto result = parse_opt_result_json(read_file(dir / "opt_result.json"));
        write_reports(dir, result.cells, true);
        return {"report.csv", "report.txt", "plot_cai_star.csv", "plot_d.csv"};
    }
    if (fs::exists(dir / "cells.json")) {
        const auto cells = parse_cells_json(read_file(dir / "cells.json"));
        write_reports(dir, cells, false);
        return {"report.csv", "report.txt"};
    }
    throw std::runtime_error("report: no summary.json, opt_result.json or cells.json in " +
                             dir.string());
}

std::uint64_t bundle_hash(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().filename() != kMetaFile) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    std::uint64_t h = 1469598103934665603ull;
    auto feed = [&h](const std::string& data) {
        for (unsigned char byte : data) {
            h ^= byte;
            h *= 1099511628211ull;
        }
    };
    for (const auto& path : files) {
        feed(path.filename().string());
        feed(read_file(path));
    }
    return h;
}

} // namespace coglab::bundle
