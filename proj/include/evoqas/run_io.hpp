#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "evoqas/analysis.hpp"
#include "evoqas/evolution.hpp"

namespace evoqas {

// Bad or unreadable configuration; the CLI maps it to exit code 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything an `evolve` run needs, read from and written to a single JSON
// file. Unknown keys are rejected; missing keys take the defaults below, and
// the file written into the run directory always carries every key, so a run
// directory's config.json round-trips losslessly.
struct RunConfig {
  EvolutionConfig evo;
  std::string out_dir;  // optional in the file; resolved before the run starts

  bool operator==(const RunConfig&) const = default;
};

RunConfig run_config_from_json(const std::string& text);
std::string run_config_to_json(const RunConfig& cfg);
RunConfig load_run_config(const std::filesystem::path& path);

// Shortest representation that parses back to the same double.
std::string format_double(double v);

std::string history_csv(const EvolutionRecord& record);
std::string ed_sweep_csv(const std::vector<std::pair<std::string, std::vector<EdSweepRow>>>& rows,
                         bool with_model_id);
std::string spectrum_csv(const std::vector<SpectrumResult>& results);
std::string spectrum_summary_csv(const std::vector<SpectrumResult>& results);

void write_file(const std::filesystem::path& path, const std::string& contents);

// config.json, history.csv, best_genotype.json, best_circuit.txt
void write_run_directory(const std::filesystem::path& dir, const RunConfig& cfg,
                         const EvolutionRecord& record);

}  // namespace evoqas
