#include "beable/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "beable/error.hpp"
#include "beable/grid_io.hpp"
#include "beable/report.hpp"

#ifndef BEABLE_VERSION
#define BEABLE_VERSION "0.1.0"
#endif

namespace beable {

namespace {

constexpr double kCounterexampleStep = 0.005;
constexpr double kCounterexampleExtent = 10.0;
constexpr double kCounterexampleMcStep = 0.001;

std::vector<std::size_t> powers_of_two(std::size_t from, std::size_t to) {
  std::vector<std::size_t> out;
  for (std::size_t n = from; n <= to; n *= 2) out.push_back(n);
  return out;
}

std::vector<std::size_t> default_dims(const std::string& experiment) {
  if (experiment == "figure1" || experiment == "ec-curve") return powers_of_two(2, 1024);
  if (experiment == "integral-f") return powers_of_two(1, 1024);
  if (experiment == "cube-check") return {2, 3, 4, 5, 6, 7, 8};
  if (experiment == "localized") return powers_of_two(1, 64);
  if (experiment == "bound") return powers_of_two(2, 4096);
  if (experiment == "product-decay") return {10};
  return {};
}

std::uint64_t default_samples(const std::string& experiment) {
  if (experiment == "counterexample") return 1'000'000;
  return 100'000;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed while writing " + path.string());
}

std::pair<GridFunction, GridFunction> load_pair(const RunConfig& config) {
  if (!config.grid0 || !config.grid1) {
    throw InvalidParameter("--grid0 and --grid1 must be given together");
  }
  return {parse_grid_file(*config.grid0), parse_grid_file(*config.grid1)};
}

ExperimentResult run_counterexample(const RunConfig& c) {
  ExperimentResult result;
  result.name = "counterexample";
  const double value = counterexample_overlap(kCounterexampleStep, kCounterexampleExtent);
  const auto mc = counterexample_overlap_mc(c.samples, SeedSpec{c.seed, 0}, kCounterexampleMcStep,
                                            kCounterexampleExtent, c.workers);
  ExperimentRow row;
  row.parameter = 2;  // two field-mode beables
  row.estimate = mc;
  row.analytic_reference = value;
  result.rows.push_back(row);
  result.scalars["value"] = value;
  result.scalars["closed_form"] = 0.5 - 1.0 / 3.14159265358979323846;
  result.scalars["mc_mean"] = mc.mean;
  result.scalars["mc_stderr"] = mc.standard_error;
  result.scalars["step"] = kCounterexampleStep;
  result.scalars["extent"] = kCounterexampleExtent;
  return result;
}

ExperimentResult run_overlap(const RunConfig& c) {
  const auto pair = load_pair(c);
  const auto& [f0, f1] = pair;
  ExperimentResult result;
  result.name = "overlap";
  ExperimentRow row;
  row.parameter = 1;
  row.estimate = overlap_product_mc(ProductState{{f0}}, ProductState{{f1}}, c.samples,
                                    SeedSpec{c.seed, 0}, c.workers);
  row.analytic_reference = overlap_grid(f0, f1);
  result.rows.push_back(row);
  result.scalars["overlap_01"] = overlap_grid(f0, f1);
  result.scalars["overlap_10"] = overlap_grid(f1, f0);
  // Geometric diagnostics only exist for unimodal pairs with a single crossing.
  try {
    result.scalars["maxima_distance"] = maxima_distance(ProductState{{f0}}, ProductState{{f1}}).distance;
    const auto ridge = ridge_value(f0, f1, 1);
    result.scalars["ridge_crossing"] = ridge.crossing;
    result.scalars["ridge_value"] = ridge.crossing_value;
  } catch (const AmbiguousMaximum&) {
  } catch (const NoCrossing&) {
  } catch (const AmbiguousCrossing&) {
  }
  return result;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"figure1",        "ec-curve", "integral-f",
                                              "cube-check",     "localized", "bound",
                                              "counterexample", "product-decay", "overlap"};
  return names;
}

RunConfig resolve(RunConfig c) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), c.experiment) == names.end()) {
    throw InvalidParameter("unknown experiment '" + c.experiment + "'");
  }
  if (c.dims.empty()) c.dims = default_dims(c.experiment);
  if (c.samples == 0) c.samples = default_samples(c.experiment);
  if (c.samples < 2) throw InvalidParameter("--samples must be at least 2");
  if (c.workers == 0) throw InvalidParameter("--workers must be at least 1");
  for (std::size_t d : c.dims) {
    if (d == 0) throw InvalidParameter("--dims entries must be positive");
  }
  if (!c.epsilon) {
    if (c.experiment == "localized") c.epsilon = 0.5;
    if (c.experiment == "bound") c.epsilon = 0.1;
  }
  if (c.epsilon && !(*c.epsilon > 0.0 && *c.epsilon < 1.0)) {
    throw InvalidParameter("--epsilon must lie in (0, 1)");
  }
  if (c.kind != "real" && c.kind != "complex") throw InvalidParameter("--kind must be real or complex");
  for (const auto& f : c.formats) {
    if (f != "csv" && f != "json" && f != "svg") throw InvalidParameter("unknown format '" + f + "'");
  }
  if (c.out.empty()) c.out = c.experiment;
  if (c.experiment == "overlap" && (!c.grid0 || !c.grid1)) {
    throw InvalidParameter("the overlap experiment needs --grid0 and --grid1");
  }
  if (c.grid0.has_value() != c.grid1.has_value()) {
    throw InvalidParameter("--grid0 and --grid1 must be given together");
  }
  return c;
}

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  j["experiment"] = c.experiment;
  j["dims"] = c.dims;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["epsilon"] = c.epsilon ? nlohmann::json(*c.epsilon) : nlohmann::json(nullptr);
  j["format"] = c.formats;
  j["out"] = c.out;
  j["grid0"] = c.grid0 ? nlohmann::json(*c.grid0) : nlohmann::json(nullptr);
  j["grid1"] = c.grid1 ? nlohmann::json(*c.grid1) : nlohmann::json(nullptr);
  j["kind"] = c.kind;
  j["workers"] = c.workers;
  if (c.experiment == "counterexample") {
    j["quadrature_step"] = kCounterexampleStep;
    j["extent"] = kCounterexampleExtent;
    j["mc_grid_step"] = kCounterexampleMcStep;
  }
  if (c.experiment == "product-decay" && !c.grid0) {
    j["factor_pair"] = "displaced-gaussian shift=2 grid=[-8,10] step=0.001";
  }
  return j;
}

ExperimentResult execute(const RunConfig& c) {
  const SeedSpec seed{c.seed, 0};
  const auto& e = c.experiment;
  if (e == "figure1") return figure1(c.dims, c.samples, seed, c.workers);
  if (e == "ec-curve") return ec_curve(c.dims, c.samples, seed, c.workers);
  if (e == "integral-f") return integral_f(c.dims, c.samples, seed, c.workers);
  if (e == "cube-check") return cube_check(c.dims, c.samples, seed, c.workers);
  if (e == "localized") return localized_curve(c.dims, *c.epsilon, c.samples, seed, c.workers);
  if (e == "bound") return bound_table(c.dims, *c.epsilon, c.kind == "complex" ? Kind::Complex : Kind::Real);
  if (e == "counterexample") return run_counterexample(c);
  if (e == "product-decay") {
    const auto pair = c.grid0 ? load_pair(c) : displaced_gaussian_pair();
    const std::size_t n_max = *std::max_element(c.dims.begin(), c.dims.end());
    return product_decay(pair, n_max, c.samples, seed, c.workers);
  }
  if (e == "overlap") return run_overlap(c);
  throw InvalidParameter("unknown experiment '" + e + "'");
}

RunOutputs run(const RunConfig& config) {
  const RunConfig c = resolve(config);
  const auto started = std::chrono::steady_clock::now();
  RunOutputs outputs{execute(c), {}};
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  const auto has = [&](const char* f) {
    return std::find(c.formats.begin(), c.formats.end(), f) != c.formats.end();
  };
  const std::filesystem::path stem(c.out);
  const auto with_ext = [&](const char* ext) {
    auto p = stem;
    p += ext;
    return p;
  };
  if (has("csv")) {
    outputs.files.push_back(with_ext(".csv"));
    write_text(outputs.files.back(), format_csv(outputs.result));
  }
  if (has("json")) {
    const RunInfo info{BEABLE_VERSION, utc_timestamp(), wall};
    outputs.files.push_back(with_ext(".json"));
    write_text(outputs.files.back(), summary_json(outputs.result, config_json(c), info).dump(2) + "\n");
  }
  if (has("svg")) {
    outputs.files.push_back(with_ext(".svg"));
    write_text(outputs.files.back(), render_svg(outputs.result, c.experiment == "product-decay"));
  }
  return outputs;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Overlap of wave functions over pilot-wave beable configurations", "beable"};
  app.set_version_flag("--version", BEABLE_VERSION);

  RunConfig config;
  std::vector<std::string> formats;
  std::optional<std::string> grid0;
  std::optional<std::string> grid1;
  std::optional<double> epsilon;
  app.add_option("-e,--experiment", config.experiment, "Experiment to run")->required();
  app.add_option("--dims", config.dims, "Dimensions or system counts (comma separated)")
      ->delimiter(',');
  app.add_option("--samples", config.samples, "Monte Carlo samples per row");
  app.add_option("--seed", config.seed, "Master seed")->capture_default_str();
  app.add_option("--epsilon", epsilon, "Epsilon for localized / bound");
  app.add_option("--format", formats, "Outputs to write: csv, json, svg")->delimiter(',');
  app.add_option("--out", config.out, "Output path stem (extensions are appended)");
  app.add_option("--grid0", grid0, "Grid file for the first factor function");
  app.add_option("--grid1", grid1, "Grid file for the second factor function");
  app.add_option("--kind", config.kind, "Bound kind: real or complex")->capture_default_str();
  app.add_option("--workers", config.workers, "Worker threads (never changes results)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << BEABLE_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return 2;
  }
  if (!formats.empty()) config.formats = formats;
  config.grid0 = grid0;
  config.grid1 = grid1;
  config.epsilon = epsilon;

  try {
    const auto outputs = run(config);
    for (const auto& f : outputs.files) out << "wrote " << f.string() << '\n';
    return 0;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace beable
