#pragma once

#include <string>

#include "json.hpp"

#include "beable/experiments.hpp"

namespace beable {

/// Column set shared by every experiment.
inline constexpr const char* kCsvHeader = "parameter,mean,stderr,samples,analytic_ref,bound";

/// One line per row, numbers with 17 significant digits, empty fields for
/// missing values.
std::string format_csv(const ExperimentResult& result);

struct RunInfo {
  std::string version;
  std::string timestamp;
  double wall_time_seconds = 0.0;
};

/// Summary document. Everything except the "run" object is a pure function
/// of the result and the configuration.
nlohmann::json summary_json(const ExperimentResult& result, const nlohmann::json& config,
                            const RunInfo& run);

/// Line plot of mean +/- stderr against the parameter, companions included.
std::string render_svg(const ExperimentResult& result, bool log_y);

}  // namespace beable
