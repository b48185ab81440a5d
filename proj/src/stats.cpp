#include "beable/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "beable/error.hpp"

namespace beable {

double RunningMoments::variance() const noexcept {
  return count < 2 ? 0.0 : m2 / static_cast<double>(count - 1);
}

double RunningMoments::standard_error() const noexcept {
  if (count < 2) return 0.0;
  const double n = static_cast<double>(count);
  return std::sqrt(m2 / (n * (n - 1.0)));
}

RunningMoments accumulate(RunningMoments moments, double value) noexcept {
  moments.count += 1;
  const double delta = value - moments.mean;
  moments.mean += delta / static_cast<double>(moments.count);
  moments.m2 += delta * (value - moments.mean);
  return moments;
}

RunningMoments merge(const RunningMoments& a, const RunningMoments& b) noexcept {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double n = na + nb;
  const double delta = b.mean - a.mean;
  RunningMoments out;
  out.count = a.count + b.count;
  out.mean = (na * a.mean + nb * b.mean) / n;
  out.m2 = a.m2 + b.m2 + delta * delta * na * nb / n;
  return out;
}

double RatioMoments::ratio_standard_error() const noexcept {
  if (count < 2 || mean_den == 0.0) return 0.0;
  const double n = static_cast<double>(count);
  const double r = ratio();
  // Sum of squared residuals num - r * den; the mean residual is zero.
  const double ssr = std::max(0.0, c_num_num - 2.0 * r * c_num_den + r * r * c_den_den);
  return std::sqrt(ssr / (n * (n - 1.0))) / std::abs(mean_den);
}

RatioMoments accumulate(RatioMoments m, double numerator, double denominator) noexcept {
  m.count += 1;
  const double n = static_cast<double>(m.count);
  const double dx = numerator - m.mean_num;
  const double dy = denominator - m.mean_den;
  m.mean_num += dx / n;
  m.mean_den += dy / n;
  m.c_num_num += dx * (numerator - m.mean_num);
  m.c_den_den += dy * (denominator - m.mean_den);
  m.c_num_den += dx * (denominator - m.mean_den);
  return m;
}

RatioMoments merge(const RatioMoments& a, const RatioMoments& b) noexcept {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double n = na + nb;
  const double dx = b.mean_num - a.mean_num;
  const double dy = b.mean_den - a.mean_den;
  const double w = na * nb / n;
  RatioMoments out;
  out.count = a.count + b.count;
  out.mean_num = (na * a.mean_num + nb * b.mean_num) / n;
  out.mean_den = (na * a.mean_den + nb * b.mean_den) / n;
  out.c_num_num = a.c_num_num + b.c_num_num + dx * dx * w;
  out.c_den_den = a.c_den_den + b.c_den_den + dy * dy * w;
  out.c_num_den = a.c_num_den + b.c_num_den + dx * dy * w;
  return out;
}

FitResult fit_log_linear(std::span<const FitPoint> points) {
  if (points.size() < 2) {
    throw InsufficientData("log-linear fit needs at least 2 points, got " +
                           std::to_string(points.size()));
  }
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!(p.value > 0.0) || !std::isfinite(p.value) || !std::isfinite(p.n)) {
      throw InvalidPoint("fit point " + std::to_string(i) + " has non-positive value " +
                         std::to_string(p.value));
    }
    xs.push_back(p.n);
    ys.push_back(std::log(p.value));
  }

  const double m = static_cast<double>(xs.size());
  double x_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= m;
  y_mean /= m;

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - x_mean;
    const double dy = ys[i] - y_mean;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw InsufficientData("log-linear fit needs at least 2 distinct n values");

  FitResult fit;
  fit.points_used = xs.size();
  fit.slope = sxy / sxx;
  fit.intercept = y_mean - fit.slope * x_mean;

  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    sse += r * r;
  }
  fit.slope_standard_error = xs.size() > 2 ? std::sqrt(sse / (m - 2.0) / sxx) : 0.0;
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 0.0;
  return fit;
}

}  // namespace beable
