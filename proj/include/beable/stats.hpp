#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace beable {

/// Single-pass mean and sum of squared deviations (Welford), mergeable.
struct RunningMoments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  /// Unbiased sample variance; 0 for fewer than two observations.
  double variance() const noexcept;
  /// sqrt(M2 / (count (count - 1))); 0 for fewer than two observations.
  double standard_error() const noexcept;
};

RunningMoments accumulate(RunningMoments moments, double value) noexcept;

/// Chan et al. pairwise combination.
RunningMoments merge(const RunningMoments& a, const RunningMoments& b) noexcept;

/// Joint moments of (numerator, denominator) pairs for ratio estimators.
struct RatioMoments {
  std::uint64_t count = 0;
  double mean_num = 0.0;
  double mean_den = 0.0;
  double c_num_num = 0.0;
  double c_den_den = 0.0;
  double c_num_den = 0.0;

  double ratio() const noexcept { return mean_num / mean_den; }
  /// Delta-method standard error of mean_num / mean_den.
  double ratio_standard_error() const noexcept;
};

RatioMoments accumulate(RatioMoments moments, double numerator, double denominator) noexcept;
RatioMoments merge(const RatioMoments& a, const RatioMoments& b) noexcept;

struct FitPoint {
  double n = 0.0;
  double value = 0.0;
  double error = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_standard_error = 0.0;
  double r_squared = 0.0;
  std::size_t points_used = 0;
};

// Ordinary least squares of log(value) on n. The per-point errors are
// carried for reporting only; the fit is unweighted.
//
// Flat data (zero total sum of squares) reports r^2 = 0. With exactly two
// points the slope error is 0.
FitResult fit_log_linear(std::span<const FitPoint> points);

}  // namespace beable
