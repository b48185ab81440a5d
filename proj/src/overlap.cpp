#include "beable/overlap.hpp"

#include <cmath>
#include <string>

#include "beable/error.hpp"
#include "beable/parallel.hpp"

namespace beable {

namespace {

void require_compatible(const ProductState& p0, const ProductState& p1) {
  if (p0.size() != p1.size()) {
    throw IncompatibleStates("product states have " + std::to_string(p0.size()) + " and " +
                             std::to_string(p1.size()) + " factors");
  }
  if (p0.size() == 0) throw IncompatibleStates("product states have no factors");
  for (std::size_t i = 0; i < p0.size(); ++i) {
    if (!p0.factors[i].same_grid(p1.factors[i])) {
      throw IncompatibleStates("factor " + std::to_string(i) + " is tabulated on different grids");
    }
  }
}

constexpr double kCrossingTolerance = 1e-10;

}  // namespace

double overlap_real_amplitudes(std::span<const double> psi0, std::span<const double> psi1) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < psi0.size(); ++i) {
    const double a = std::abs(psi0[i]);
    if (a < std::abs(psi1[i])) sum += a * a;
  }
  return sum;
}

double overlap_squared_moduli(std::span<const double> m0, std::span<const double> m1) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < m0.size(); ++i) {
    if (m0[i] < m1[i]) sum += m0[i];
  }
  return sum;
}

double overlap_discrete(const StateVector& psi0, const StateVector& psi1) {
  if (psi0.dimension() != psi1.dimension()) {
    throw IncompatibleStates("state dimensions differ: " + std::to_string(psi0.dimension()) +
                             " vs " + std::to_string(psi1.dimension()));
  }
  if (psi0.kind() != psi1.kind()) throw IncompatibleStates("cannot compare real and complex states");

  if (psi0.kind() == Kind::Real) return overlap_real_amplitudes(psi0.real_parts(), psi1.real_parts());

  const std::size_t n = psi0.dimension();
  std::vector<double> m0(n);
  std::vector<double> m1(n);
  for (std::size_t i = 0; i < n; ++i) {
    m0[i] = psi0.modulus_squared(i);
    m1[i] = psi1.modulus_squared(i);
  }
  return overlap_squared_moduli(m0, m1);
}

double overlap_grid(const GridFunction& f0, const GridFunction& f1) {
  if (!f0.same_grid(f1)) throw IncompatibleGrids("grid functions are tabulated on different grids");
  const auto v0 = f0.values();
  const auto v1 = f1.values();
  const std::size_t last = v0.size() - 1;
  double sum = 0.0;
  for (std::size_t i = 0; i <= last; ++i) {
    if (!(v0[i] < v1[i])) continue;
    const double w = (i == 0 || i == last) ? 0.5 : 1.0;
    sum += w * v0[i] * v0[i];
  }
  return sum * f0.step();
}

bool product_dominated(const ProductState& p0, const ProductState& p1,
                       std::span<const double> q) noexcept {
  bool zero0 = false;
  bool zero1 = false;
  double log_ratio = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double a = p0.factors[i](q[i]);
    const double b = p1.factors[i](q[i]);
    if (a == 0.0) zero0 = true;
    if (b == 0.0) zero1 = true;
    if (a > 0.0 && b > 0.0) log_ratio += std::log(b) - std::log(a);
  }
  if (zero1) return false;
  if (zero0) return true;
  return log_ratio > 0.0;
}

OverlapEstimate overlap_product_mc(const ProductState& p0, const ProductState& p1,
                                   std::uint64_t samples, SeedSpec seed, unsigned workers) {
  require_compatible(p0, p1);
  if (samples == 0) throw InvalidParameter("sample count must be positive");

  const std::size_t factors = p0.size();
  auto body = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<double> q(factors);
    RunningMoments m;
    for (std::uint64_t s = begin; s < end; ++s) {
      SampleRng rng(seed, s);
      for (std::size_t i = 0; i < factors; ++i) q[i] = p0.factors[i].inverse_cdf(rng.uniform01());
      m = accumulate(m, product_dominated(p0, p1, q) ? 1.0 : 0.0);
    }
    return m;
  };
  const auto moments = reduce_chunks<RunningMoments>(
      samples, workers, body, [](const RunningMoments& a, const RunningMoments& b) { return merge(a, b); });
  return OverlapEstimate::from_moments(moments, seed);
}

double overlap_binary(const BinaryState& b0, const BinaryState& b1,
                      std::span<const double> per_system_overlap) {
  if (b0.size() != b1.size() || b0.size() != per_system_overlap.size()) {
    throw IncompatibleStates("binary states and overlap probabilities must have equal lengths");
  }
  double product = 1.0;
  for (double p : per_system_overlap) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidParameter("overlap probability " + std::to_string(p) + " outside [0, 1]");
    }
    product *= p;
  }
  return product;
}

MaximaDistance maxima_distance(const ProductState& p0, const ProductState& p1) {
  require_compatible(p0, p1);
  MaximaDistance out;
  out.per_factor.reserve(p0.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p0.size(); ++i) {
    const auto a0 = static_cast<double>(p0.factors[i].argmax());
    const auto a1 = static_cast<double>(p1.factors[i].argmax());
    const double delta = std::abs(a1 - a0) * p0.factors[i].step();
    out.per_factor.push_back(delta);
    sum += delta * delta;
  }
  out.distance = std::sqrt(sum);
  return out;
}

RidgeValue ridge_value(const GridFunction& f0, const GridFunction& f1, unsigned n) {
  if (n == 0) throw InvalidParameter("ridge power n must be positive");
  if (!f0.same_grid(f1)) throw IncompatibleGrids("grid functions are tabulated on different grids");

  const std::size_t a0 = f0.argmax();
  const std::size_t a1 = f1.argmax();
  if (a0 == a1) throw AmbiguousCrossing("maxima coincide; no isolated crossing");

  const std::size_t lo = std::min(a0, a1);
  const std::size_t hi = std::max(a0, a1);
  const auto v0 = f0.values();
  const auto v1 = f1.values();

  // Walk the node differences between the maxima, skipping exact zeros, and
  // remember the bracket of the single sign change.
  int last_sign = 0;
  std::size_t last_index = lo;
  std::size_t changes = 0;
  std::size_t bracket_lo = lo;
  std::size_t bracket_hi = hi;
  for (std::size_t k = lo; k <= hi; ++k) {
    const double d = v0[k] - v1[k];
    const int sign = (d > 0.0) - (d < 0.0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) {
      ++changes;
      bracket_lo = last_index;
      bracket_hi = k;
    }
    last_sign = sign;
    last_index = k;
  }
  if (last_sign == 0) throw AmbiguousCrossing("functions coincide between their maxima");
  if (changes == 0) throw NoCrossing("difference keeps its sign between the maxima");
  if (changes > 1) {
    throw AmbiguousCrossing("difference changes sign " + std::to_string(changes) +
                            " times between the maxima");
  }

  auto diff = [&](double q) { return f0(q) - f1(q); };
  double a = f0.node(bracket_lo);
  double b = f0.node(bracket_hi);
  const bool rising = diff(a) < 0.0;
  while (b - a > kCrossingTolerance) {
    const double mid = 0.5 * (a + b);
    const double d = diff(mid);
    if (d == 0.0) {
      a = b = mid;
      break;
    }
    if ((d < 0.0) == rising) {
      a = mid;
    } else {
      b = mid;
    }
  }

  RidgeValue out;
  out.crossing = 0.5 * (a + b);
  out.crossing_value = f0(out.crossing);
  out.ridge_maximum = std::pow(out.crossing_value, static_cast<double>(n));
  return out;
}

}  // namespace beable
