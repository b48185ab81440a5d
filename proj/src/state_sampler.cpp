#include "beable/state_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "beable/error.hpp"

namespace beable {

namespace {

constexpr double kNormTolerance = 1e-12;

void require_dimension(std::size_t dimension) {
  if (dimension == 0) throw InvalidDimension("state dimension must be at least 1");
}

}  // namespace

StateVector::StateVector(Kind kind, std::vector<double> re, std::vector<double> im)
    : kind_(kind), re_(std::move(re)), im_(std::move(im)) {
  require_dimension(re_.size());
  const double n = norm();
  if (!(std::abs(n - 1.0) <= kNormTolerance)) {
    throw InvalidParameter("state is not unit norm (norm " + std::to_string(n) + ")");
  }
}

StateVector StateVector::real(std::vector<double> amplitudes) {
  return StateVector(Kind::Real, std::move(amplitudes), {});
}

StateVector StateVector::complex(std::vector<std::complex<double>> amplitudes) {
  std::vector<double> re(amplitudes.size());
  std::vector<double> im(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    re[i] = amplitudes[i].real();
    im[i] = amplitudes[i].imag();
  }
  return StateVector(Kind::Complex, std::move(re), std::move(im));
}

std::complex<double> StateVector::amplitude(std::size_t i) const {
  return {re_.at(i), kind_ == Kind::Complex ? im_.at(i) : 0.0};
}

double StateVector::modulus_squared(std::size_t i) const {
  const double r = re_.at(i);
  if (kind_ == Kind::Real) return r * r;
  const double m = im_.at(i);
  return r * r + m * m;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (double r : re_) sum += r * r;
  for (double m : im_) sum += m * m;
  return std::sqrt(sum);
}

double CubePoint::max_norm() const noexcept {
  double m = 0.0;
  for (double x : coordinates) m = std::max(m, std::abs(x));
  return m;
}

double CubePoint::l2_norm() const noexcept {
  double sum = 0.0;
  for (double x : coordinates) sum += x * x;
  return std::sqrt(sum);
}

void fill_real_state(std::span<double> out, SampleRng& rng) noexcept {
  double sum = 0.0;
  for (double& x : out) {
    x = rng.normal();
    sum += x * x;
  }
  // Divide rather than multiply by the reciprocal: sqrt(x * x) == |x| exactly,
  // so N = 1 yields exactly +-1.
  const double norm = std::sqrt(sum);
  for (double& x : out) x /= norm;
}

void fill_complex_state(std::span<double> re, std::span<double> im, SampleRng& rng) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < re.size(); ++i) {
    re[i] = rng.normal();
    im[i] = rng.normal();
    sum += re[i] * re[i] + im[i] * im[i];
  }
  const double norm = std::sqrt(sum);
  for (std::size_t i = 0; i < re.size(); ++i) {
    re[i] /= norm;
    im[i] /= norm;
  }
}

void fill_cube_point(std::span<double> out, SampleRng& rng) noexcept {
  for (double& x : out) x = rng.uniform(-1.0, 1.0);
}

StateVector sample_real_state(std::size_t dimension, SeedSpec seed, std::uint64_t index) {
  require_dimension(dimension);
  SampleRng rng(seed, index);
  std::vector<double> amplitudes(dimension);
  fill_real_state(amplitudes, rng);
  return StateVector::real(std::move(amplitudes));
}

StateVector sample_complex_state(std::size_t dimension, SeedSpec seed, std::uint64_t index) {
  require_dimension(dimension);
  SampleRng rng(seed, index);
  std::vector<double> re(dimension);
  std::vector<double> im(dimension);
  fill_complex_state(re, im, rng);
  std::vector<std::complex<double>> amplitudes(dimension);
  for (std::size_t i = 0; i < dimension; ++i) amplitudes[i] = {re[i], im[i]};
  return StateVector::complex(std::move(amplitudes));
}

CubePoint sample_cube_point(std::size_t dimension, SeedSpec seed, std::uint64_t index) {
  require_dimension(dimension);
  SampleRng rng(seed, index);
  CubePoint point{std::vector<double>(dimension)};
  fill_cube_point(point.coordinates, rng);
  return point;
}

}  // namespace beable
