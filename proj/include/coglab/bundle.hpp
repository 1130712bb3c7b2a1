#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "coglab/config.hpp"
#include "coglab/engine.hpp"
#include "coglab/lab.hpp"

namespace coglab::bundle {

/// Sample series as CSV. Column names and order are fixed:
/// time,q_h,q_h_pert,q_h_novel,q_ha,ai_use_rate,skill_mean,dependency_mean
std::string samples_csv(const engine::RunResult& result);

std::string run_result_json(const engine::RunResult& result);
std::string cells_json(const std::vector<lab::CellSummary>& cells);
std::string opt_result_json(const lab::OptResult& result);

engine::RunResult parse_run_result_json(const std::string& text);
std::vector<lab::CellSummary> parse_cells_json(const std::string& text);
lab::OptResult parse_opt_result_json(const std::string& text);

/// Write a single-run bundle: resolved config snapshot, samples CSV,
/// summary JSON and the metadata file (the only file with timestamps).
void write_run(const std::filesystem::path& dir, const config::Resolved& resolved,
               const engine::RunResult& result, const std::string& command_line);

void write_sweep(const std::filesystem::path& dir, const config::Resolved& resolved,
                 const std::vector<lab::CellSummary>& cells, const std::string& command_line);

void write_opt(const std::filesystem::path& dir, const config::Resolved& resolved,
               const lab::OptResult& result, const std::string& command_line);

/// Re-render the derived report files of an existing bundle from its
/// stored JSON, without re-simulation. Returns the list of files written.
std::vector<std::string> rerender(const std::filesystem::path& dir);

/// FNV-1a content hash of every regular file in the bundle except the
/// metadata file; used by reproducibility checks.
std::uint64_t bundle_hash(const std::filesystem::path& dir);

} // namespace coglab::bundle
