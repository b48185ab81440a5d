#include "beable/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "beable/error.hpp"

namespace beable {

namespace {

constexpr double kNormTolerance = 1e-8;
constexpr double kArgmaxTolerance = 1e-12;

void validate_layout(double start, double step, std::span<const double> values) {
  if (values.size() < 2) throw InvalidGrid("grid needs at least 2 nodes");
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidGrid("grid step must be positive");
  if (!std::isfinite(start)) throw InvalidGrid("grid start must be finite");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      throw InvalidGrid("grid value at node " + std::to_string(i) +
                        " must be finite and non-negative");
    }
  }
}

}  // namespace

double trapezoid_norm(double step, std::span<const double> values) noexcept {
  if (values.size() < 2) return 0.0;
  double inner = 0.0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) inner += values[i] * values[i];
  const double ends = 0.5 * (values.front() * values.front() + values.back() * values.back());
  return step * (inner + ends);
}

GridFunction::GridFunction(double start, double step, std::vector<double> values)
    : start_(start), step_(step), values_(std::move(values)) {
  validate_layout(start_, step_, values_);
  const double norm = trapezoid_norm(step_, values_);
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    throw NotNormalized("trapezoidal norm is " + std::to_string(norm) + ", expected 1");
  }
  cumulative_.resize(values_.size());
  cumulative_[0] = 0.0;
  for (std::size_t i = 1; i < values_.size(); ++i) {
    const double a = values_[i - 1];
    const double b = values_[i];
    cumulative_[i] = cumulative_[i - 1] + 0.5 * step_ * (a * a + b * b);
  }
}

GridFunction GridFunction::normalized(double start, double step, std::vector<double> values) {
  validate_layout(start, step, values);
  const double norm = trapezoid_norm(step, values);
  if (!(norm > 0.0)) throw NotNormalized("grid function vanishes identically");
  const double scale = 1.0 / std::sqrt(norm);
  for (double& v : values) v *= scale;
  return GridFunction(start, step, std::move(values));
}

GridFunction GridFunction::tabulate(double start, double step, std::size_t nodes,
                                    const std::function<double(double)>& amplitude) {
  std::vector<double> values(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    values[i] = std::abs(amplitude(start + static_cast<double>(i) * step));
  }
  return normalized(start, step, std::move(values));
}

double GridFunction::operator()(double q) const noexcept {
  const double x = (q - start_) / step_;
  if (!(x >= 0.0) || x > static_cast<double>(values_.size() - 1)) return 0.0;
  const auto k = std::min(static_cast<std::size_t>(x), values_.size() - 2);
  const double t = x - static_cast<double>(k);
  return values_[k] + t * (values_[k + 1] - values_[k]);
}

double GridFunction::inverse_cdf(double u) const noexcept {
  const double total = cumulative_.back();
  const double target = std::clamp(u, 0.0, 1.0) * total;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  if (it == cumulative_.end()) return stop();
  if (it == cumulative_.begin()) return start_;
  const auto hi = static_cast<std::size_t>(it - cumulative_.begin());
  const std::size_t lo = hi - 1;
  const double mass = cumulative_[hi] - cumulative_[lo];
  const double t = (target - cumulative_[lo]) / mass;
  return node(lo) + t * step_;
}

std::size_t GridFunction::argmax() const {
  const auto it = std::max_element(values_.begin(), values_.end());
  const auto best = static_cast<std::size_t>(it - values_.begin());
  const double peak = *it;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i != best && values_[i] >= peak * (1.0 - kArgmaxTolerance)) {
      throw AmbiguousMaximum("grid function has several global maxima (nodes " +
                             std::to_string(best) + " and " + std::to_string(i) + ")");
    }
  }
  return best;
}

bool GridFunction::same_grid(const GridFunction& other) const noexcept {
  return values_.size() == other.values_.size() &&
         std::abs(step_ - other.step_) <= 1e-12 * step_ &&
         std::abs(start_ - other.start_) <= 1e-9 * step_;
}

BinaryState::BinaryState(std::vector<double> fractions) : support_fractions(std::move(fractions)) {
  for (double p : support_fractions) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw InvalidParameter("binary support fraction " + std::to_string(p) +
                             " outside (0, 1]");
    }
  }
}

}  // namespace beable
