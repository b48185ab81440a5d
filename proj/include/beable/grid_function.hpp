#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace beable {

/**
 * Amplitude |psi(q)| tabulated at uniform nodes q_i = start + i * step.
 *
 * Invariants: at least two nodes, step > 0, every value finite and
 * non-negative, and the trapezoidal integral of value^2 equals 1 within 1e-8.
 * Between nodes the amplitude is linearly interpolated; outside the grid it is 0.
 */
class GridFunction {
 public:
  /// Validates the invariants as given; throws InvalidGrid or NotNormalized.
  GridFunction(double start, double step, std::vector<double> values);

  /// Rescales `values` so that the trapezoidal norm is exactly 1.
  static GridFunction normalized(double start, double step, std::vector<double> values);

  /// Tabulates `amplitude` at `nodes` points and normalizes.
  static GridFunction tabulate(double start, double step, std::size_t nodes,
                               const std::function<double(double)>& amplitude);

  double start() const noexcept { return start_; }
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return values_.size(); }
  double node(std::size_t i) const noexcept { return start_ + static_cast<double>(i) * step_; }
  double stop() const noexcept { return node(values_.size() - 1); }
  std::span<const double> values() const noexcept { return values_; }

  /// Linear interpolation of the amplitude; 0 outside [start, stop].
  double operator()(double q) const noexcept;

  /// Maps u in [0, 1) to a point distributed as the tabulated density value^2,
  /// by linear interpolation of the cumulative trapezoid sums.
  double inverse_cdf(double u) const noexcept;

  /// Index of the unique global maximum. Throws AmbiguousMaximum when another
  /// node is within 1e-12 (relative) of the maximal value.
  std::size_t argmax() const;

  bool same_grid(const GridFunction& other) const noexcept;

 private:
  double start_;
  double step_;
  std::vector<double> values_;
  std::vector<double> cumulative_;  // unnormalized trapezoid sums of value^2
};

/// Trapezoidal integral of value^2 over the nodes.
double trapezoid_norm(double step, std::span<const double> values) noexcept;

/// Product of grid functions over independent subsystems.
struct ProductState {
  std::vector<GridFunction> factors;

  std::size_t size() const noexcept { return factors.size(); }
};

/// Two-valued (0 / constant) subsystem states, described by the normalized
/// support fraction of each factor.
struct BinaryState {
  std::vector<double> support_fractions;

  /// Throws InvalidParameter unless every fraction lies in (0, 1].
  explicit BinaryState(std::vector<double> fractions);
  std::size_t size() const noexcept { return support_fractions.size(); }
};

}  // namespace beable
