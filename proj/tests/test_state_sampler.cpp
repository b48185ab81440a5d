#include "doctest.h"

#include <cmath>
#include <random>

#include "beable/error.hpp"
#include "beable/state_sampler.hpp"
#include "beable/stats.hpp"

using namespace beable;

namespace {

// Independent resampling oracle: std::mt19937_64 + std::normal_distribution,
// normalized in the same way. Shares no code with the library sampler.
double oracle_first_coordinate_second_moment(std::size_t n, int samples) {
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> normal;
  std::vector<double> x(n);
  double acc = 0.0;
  for (int s = 0; s < samples; ++s) {
    double sum = 0.0;
    for (auto& v : x) {
      v = normal(gen);
      sum += v * v;
    }
    acc += x[0] * x[0] / sum;
  }
  return acc / samples;
}

}  // namespace

TEST_CASE("sample_real_state rejects dimension 0") {
  CHECK_THROWS_AS(sample_real_state(0, SeedSpec{1, 0}), InvalidDimension);
  CHECK_THROWS_AS(sample_complex_state(0, SeedSpec{1, 0}), InvalidDimension);
  CHECK_THROWS_AS(sample_cube_point(0, SeedSpec{1, 0}), InvalidDimension);
}

TEST_CASE("N = 1 real state is exactly +1 or -1") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto psi = sample_real_state(1, SeedSpec{5, 0}, i);
    CHECK(std::abs(psi.real_parts()[0]) == 1.0);
  }
}

TEST_CASE("sampled real states are unit norm") {
  for (std::size_t n : {2u, 4u, 17u, 300u}) {
    const auto psi = sample_real_state(n, SeedSpec{9, 1}, 3);
    CHECK(psi.kind() == Kind::Real);
    CHECK(psi.dimension() == n);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("N = 16: per-coordinate second moment is 1/16") {
  constexpr int kSamples = 100000;
  RunningMoments m;
  for (int s = 0; s < kSamples; ++s) {
    const auto psi = sample_real_state(16, SeedSpec{77, 0}, static_cast<std::uint64_t>(s));
    m = accumulate(m, psi.real_parts()[5] * psi.real_parts()[5]);
  }
  CHECK(std::abs(m.mean - 1.0 / 16.0) < 5.0 * m.standard_error());
  // The oracle sampler agrees with the same analytic value.
  const double oracle = oracle_first_coordinate_second_moment(16, kSamples);
  CHECK(std::abs(oracle - 1.0 / 16.0) < 5.0 * m.standard_error());
  CHECK(std::abs(oracle - m.mean) < 5.0 * std::sqrt(2.0) * m.standard_error());
}

TEST_CASE("sphere coordinates are symmetric about zero") {
  constexpr int kSamples = 50000;
  RunningMoments first;
  RunningMoments cube;
  for (int s = 0; s < kSamples; ++s) {
    const double x = sample_real_state(6, SeedSpec{13, 0}, static_cast<std::uint64_t>(s)).real_parts()[2];
    first = accumulate(first, x);
    cube = accumulate(cube, x * x * x);
  }
  CHECK(std::abs(first.mean) < 5.0 * first.standard_error());
  CHECK(std::abs(cube.mean) < 5.0 * cube.standard_error());
}

TEST_CASE("complex state with N = 1 has unit modulus") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto psi = sample_complex_state(1, SeedSpec{3, 0}, i);
    CHECK(psi.kind() == Kind::Complex);
    CHECK(std::abs(std::abs(psi.amplitude(0)) - 1.0) < 1e-15);
  }
}

TEST_CASE("complex sampling is bit-reproducible") {
  const auto a = sample_complex_state(8, SeedSpec{99, 4}, 17);
  const auto b = sample_complex_state(8, SeedSpec{99, 4}, 17);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(a.real_parts()[i] == b.real_parts()[i]);
    CHECK(a.imag_parts()[i] == b.imag_parts()[i]);
  }
  CHECK(std::abs(a.norm() - 1.0) < 1e-12);
}

TEST_CASE("N = 8 complex: mean |psi_1|^2 is 1/8") {
  constexpr int kSamples = 100000;
  RunningMoments m;
  for (int s = 0; s < kSamples; ++s) {
    m = accumulate(m, sample_complex_state(8, SeedSpec{21, 0}, static_cast<std::uint64_t>(s)).modulus_squared(0));
  }
  CHECK(std::abs(m.mean - 0.125) < 5.0 * m.standard_error());

  // Resampling oracle with an independent generator.
  std::mt19937_64 gen(8);
  std::normal_distribution<double> normal;
  double acc = 0.0;
  for (int s = 0; s < kSamples; ++s) {
    double total = 0.0;
    double first = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double re = normal(gen);
      const double im = normal(gen);
      if (i == 0) first = re * re + im * im;
      total += re * re + im * im;
    }
    acc += first / total;
  }
  CHECK(std::abs(acc / kSamples - m.mean) < 5.0 * std::sqrt(2.0) * m.standard_error());
}

TEST_CASE("cube points: coordinates in [-1, 1], mean 0, E[x^2] = 1/3") {
  constexpr int kSamples = 100000;
  RunningMoments mean1;
  RunningMoments sq;
  for (int s = 0; s < kSamples; ++s) {
    const auto p1 = sample_cube_point(1, SeedSpec{4, 0}, static_cast<std::uint64_t>(s));
    REQUIRE(std::abs(p1.coordinates[0]) <= 1.0);
    mean1 = accumulate(mean1, p1.coordinates[0]);
    const auto p2 = sample_cube_point(2, SeedSpec{4, 1}, static_cast<std::uint64_t>(s));
    sq = accumulate(sq, p2.coordinates[1] * p2.coordinates[1]);
  }
  CHECK(std::abs(mean1.mean) < 5.0 * mean1.standard_error());
  CHECK(std::abs(sq.mean - 1.0 / 3.0) < 5.0 * sq.standard_error());
}

TEST_CASE("cube point norms") {
  CubePoint p{{0.5, -0.75, 0.25}};
  CHECK(p.max_norm() == 0.75);
  CHECK(p.l2_norm() == doctest::Approx(std::sqrt(0.25 + 0.5625 + 0.0625)));
}

TEST_CASE("StateVector factories validate") {
  CHECK_THROWS_AS(StateVector::real({}), InvalidDimension);
  CHECK_THROWS_AS(StateVector::real({1.0, 1.0}), InvalidParameter);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK_NOTHROW(StateVector::real({h, h}));
  CHECK_NOTHROW(StateVector::complex({{0.0, h}, {h, 0.0}}));
}
