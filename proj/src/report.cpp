#include "beable/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

namespace beable {

namespace {

std::string number(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

std::string fixed(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json rows_json(const std::vector<ExperimentRow>& rows) {
  auto out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r;
    r["parameter"] = row.parameter;
    if (row.estimate) {
      r["mean"] = row.estimate->mean;
      r["stderr"] = row.estimate->standard_error;
      r["samples"] = row.estimate->samples;
      r["seed"] = {{"master", row.estimate->seed.master}, {"stream", row.estimate->seed.stream}};
    } else {
      r["mean"] = nullptr;
      r["stderr"] = nullptr;
      r["samples"] = nullptr;
    }
    r["analytic_ref"] = optional_json(row.analytic_reference);
    r["bound"] = optional_json(row.bound);
    out.push_back(std::move(r));
  }
  return out;
}

struct PlotPoint {
  double x;
  double y;
  double err;
};

std::vector<PlotPoint> plot_points(const std::vector<ExperimentRow>& rows) {
  std::vector<PlotPoint> points;
  for (const auto& row : rows) {
    std::optional<double> y;
    double err = 0.0;
    if (row.estimate) {
      y = row.estimate->mean;
      err = row.estimate->standard_error;
    } else if (row.bound) {
      y = row.bound;
    } else if (row.analytic_reference) {
      y = row.analytic_reference;
    }
    if (y) points.push_back({static_cast<double>(row.parameter), *y, err});
  }
  return points;
}

}  // namespace

std::string format_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& row : result.rows) {
    out << row.parameter << ',';
    if (row.estimate) {
      out << number(row.estimate->mean) << ',' << number(row.estimate->standard_error) << ','
          << row.estimate->samples;
    } else {
      out << ",,";
    }
    out << ',';
    if (row.analytic_reference) out << number(*row.analytic_reference);
    out << ',';
    if (row.bound) out << number(*row.bound);
    out << '\n';
  }
  return out.str();
}

nlohmann::json summary_json(const ExperimentResult& result, const nlohmann::json& config,
                            const RunInfo& run) {
  nlohmann::json j;
  j["experiment"] = result.name;
  j["version"] = run.version;
  j["config"] = config;
  j["rows"] = rows_json(result.rows);
  auto companions = nlohmann::json::object();
  for (const auto& [name, rows] : result.companions) companions[name] = rows_json(rows);
  j["companions"] = companions;
  auto scalars = nlohmann::json::object();
  for (const auto& [name, value] : result.scalars) scalars[name] = value;
  j["scalars"] = scalars;
  if (result.fit) {
    j["fit"] = {{"slope", result.fit->slope},
                {"intercept", result.fit->intercept},
                {"slope_stderr", result.fit->slope_standard_error},
                {"r_squared", result.fit->r_squared},
                {"points_used", result.fit->points_used}};
  } else {
    j["fit"] = nullptr;
  }
  j["run"] = {{"timestamp", run.timestamp}, {"wall_time_seconds", run.wall_time_seconds}};
  return j;
}

std::string render_svg(const ExperimentResult& result, bool log_y) {
  constexpr double kWidth = 720.0;
  constexpr double kHeight = 440.0;
  constexpr double kLeft = 70.0;
  constexpr double kRight = 150.0;
  constexpr double kTop = 30.0;
  constexpr double kBottom = 50.0;
  static const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::vector<std::pair<std::string, std::vector<PlotPoint>>> series;
  series.emplace_back(result.name, plot_points(result.rows));
  for (const auto& [name, rows] : result.companions) series.emplace_back(name, plot_points(rows));

  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& [name, points] : series) {
    for (const auto& p : points) {
      x_min = std::min(x_min, p.x);
      x_max = std::max(x_max, p.x);
      const double lo = p.y - p.err;
      if (!log_y || lo > 0.0) y_min = std::min(y_min, lo);
      if (!log_y || p.y > 0.0) y_min = std::min(y_min, p.y);
      y_max = std::max(y_max, p.y + p.err);
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = 0.0;
    x_max = 1.0;
  }
  if (!std::isfinite(y_min) || !std::isfinite(y_max)) {
    y_min = log_y ? 1e-3 : 0.0;
    y_max = 1.0;
  }
  const bool log_x = x_min > 0.0 && x_max / x_min >= 16.0;
  auto tx = [&](double x) { return log_x ? std::log(x) : x; };
  auto ty = [&](double y) { return log_y ? std::log10(std::max(y, y_min)) : y; };
  double ax0 = tx(x_min);
  double ax1 = tx(x_max);
  if (ax1 == ax0) ax1 = ax0 + 1.0;
  double ay0 = ty(y_min);
  double ay1 = ty(y_max);
  if (ay1 == ay0) ay1 = ay0 + 1.0;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (tx(x) - ax0) / (ax1 - ax0) * pw; };
  auto py = [&](double y) { return kTop + ph - (ty(y) - ay0) / (ay1 - ay0) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"18\">" << result.name << (log_y ? " (log y)" : "")
      << (log_x ? " (log x)" : "") << "</text>\n";
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">parameter</text>\n";

  // Axis labels at the extremes.
  svg << "<text x=\"" << kLeft - 5 << "\" y=\"" << fixed(py(y_min)) << "\" text-anchor=\"end\">"
      << number(y_min).substr(0, 8) << "</text>\n";
  svg << "<text x=\"" << kLeft - 5 << "\" y=\"" << fixed(py(y_max)) << "\" text-anchor=\"end\">"
      << number(y_max).substr(0, 8) << "</text>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"" << kTop + ph + 18 << "\">" << number(x_min) << "</text>\n";
  svg << "<text x=\"" << kLeft + pw << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"end\">"
      << number(x_max) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& [name, points] = series[s];
    const char* color = kColors[s % std::size(kColors)];
    if (points.empty()) continue;
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (const auto& p : points) svg << fixed(px(p.x)) << ',' << fixed(py(p.y)) << ' ';
    svg << "\"/>\n";
    for (const auto& p : points) {
      svg << "<circle cx=\"" << fixed(px(p.x)) << "\" cy=\"" << fixed(py(p.y)) << "\" r=\"3\" fill=\""
          << color << "\"/>\n";
      if (p.err > 0.0) {
        svg << "<line x1=\"" << fixed(px(p.x)) << "\" y1=\"" << fixed(py(p.y - p.err)) << "\" x2=\""
            << fixed(px(p.x)) << "\" y2=\"" << fixed(py(p.y + p.err)) << "\" stroke=\"" << color
            << "\"/>\n";
      }
    }
    svg << "<text x=\"" << kWidth - kRight + 10 << "\" y=\"" << kTop + 15 + 18.0 * s << "\" fill=\""
        << color << "\">" << name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace beable
