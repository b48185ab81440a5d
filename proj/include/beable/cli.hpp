#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "beable/experiments.hpp"

namespace beable {

/// Names accepted by --experiment.
const std::vector<std::string>& experiment_names();

struct RunConfig {
  std::string experiment;
  std::vector<std::size_t> dims;  // empty selects the experiment default
  std::uint64_t samples = 0;      // 0 selects the experiment default
  std::uint64_t seed = 1;
  std::optional<double> epsilon;
  std::vector<std::string> formats{"csv", "json"};
  std::string out;  // output stem; empty selects the experiment name
  std::optional<std::string> grid0;
  std::optional<std::string> grid1;
  std::string kind = "real";  // bound experiment only
  unsigned workers = 1;
};

/// Fills every defaulted field. Throws InvalidParameter for an unknown
/// experiment or malformed values.
RunConfig resolve(RunConfig config);

/// Complete effective configuration, as echoed into the JSON summary.
nlohmann::json config_json(const RunConfig& resolved);

/// Runs the experiment without writing anything.
ExperimentResult execute(const RunConfig& resolved);

struct RunOutputs {
  ExperimentResult result;
  std::vector<std::filesystem::path> files;
};

/// resolve + execute + write <out>.csv / <out>.json / <out>.svg as requested.
RunOutputs run(const RunConfig& config);

/// Command-line entry point. Exit status: 0 success, 1 I/O failure,
/// 2 usage or validation error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace beable
