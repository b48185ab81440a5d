#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "beable/error.hpp"
#include "beable/experiments.hpp"
#include "beable/overlap.hpp"

using namespace beable;

namespace {

constexpr double kPi = 3.14159265358979323846;

double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double combined(double a, double b) { return std::sqrt(a * a + b * b); }

// E(2) by midpoint quadrature over the two polar angles. By symmetry one
// quadrant per angle is enough.
double plane_overlap_quadrature(int m) {
  const double h = 0.5 * kPi / m;
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const double c0 = std::cos((i + 0.5) * h);
    const double s0 = std::sin((i + 0.5) * h);
    for (int j = 0; j < m; ++j) {
      const double c1 = std::cos((j + 0.5) * h);
      const double s1 = std::sin((j + 0.5) * h);
      if (c0 < c1) total += c0 * c0;
      if (s0 < s1) total += s0 * s0;
    }
  }
  return total / (static_cast<double>(m) * m);
}

// E_c(2) on S^3 in Hopf coordinates (eta, xi1, xi2): |z1|^2 = cos^2 eta, the
// phases drop out of the comparison and the measure is sin(eta) cos(eta) d eta.
double hopf_overlap_quadrature(int m) {
  const double h = 0.5 * kPi / m;
  std::vector<double> t(m);
  std::vector<double> w(m);
  double wsum = 0.0;
  for (int i = 0; i < m; ++i) {
    const double eta = (i + 0.5) * h;
    t[i] = std::cos(eta) * std::cos(eta);
    w[i] = std::sin(eta) * std::cos(eta);
    wsum += w[i];
  }
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double v = 0.0;
      if (t[i] < t[j]) v += t[i];
      if (1.0 - t[i] < 1.0 - t[j]) v += 1.0 - t[i];
      total += w[i] * w[j] * v;
    }
  }
  return total / (wsum * wsum);
}

// Counterexample in polar coordinates: the radial factor cancels and the
// angular weight is cos^2(theta) on the sector |cos| < |sin|.
double polar_counterexample(int m) {
  const double h = 2.0 * kPi / m;
  double inside = 0.0;
  double all = 0.0;
  for (int i = 0; i < m; ++i) {
    const double th = (i + 0.5) * h;
    const double c = std::cos(th);
    const double w = c * c;
    all += w;
    if (std::abs(c) < std::abs(std::sin(th))) inside += w;
  }
  return inside / all;
}

}  // namespace

TEST_CASE("estimate_E: one dimension always ties") {
  const auto e = estimate_E(1, 1000, SeedSpec{1, 0});
  CHECK(e.mean == 0.0);
  CHECK(e.standard_error == 0.0);
  CHECK(e.samples == 1000);
}

TEST_CASE("estimate_E: plane value and angular quadrature") {
  const double quad = plane_overlap_quadrature(2000);
  CHECK(std::abs(quad - kExactOverlapPlane) < 1e-3);
  CHECK(kExactOverlapPlane == doctest::Approx(0.297357).epsilon(1e-6));
  const auto e = estimate_E(2, 300000, SeedSpec{2, 0});
  CHECK(std::abs(e.mean - kExactOverlapPlane) < 3.0 * e.standard_error);
  CHECK(std::abs(e.mean - quad) < 3.0 * combined(e.standard_error, 1e-3));
}

TEST_CASE("estimate_Ec: one dimension, plane range and Hopf quadrature") {
  CHECK(estimate_Ec(1, 1000, SeedSpec{3, 0}).mean == 0.0);
  const auto e = estimate_Ec(2, 300000, SeedSpec{3, 1});
  CHECK(e.mean > 0.0);
  CHECK(e.mean < 0.5);
  const double quad = hopf_overlap_quadrature(2000);
  CHECK(std::abs(quad - 1.0 / 3.0) < 1e-3);
  CHECK(std::abs(e.mean - quad) < 3.0 * combined(e.standard_error, 1e-3));
  const auto again = estimate_Ec(2, 300000, SeedSpec{3, 1});
  CHECK(again.mean == e.mean);
  CHECK(again.standard_error == e.standard_error);
}

TEST_CASE("estimate_F: one dimension and the F <= 1 bound") {
  const auto f1 = estimate_F(1, 200000, SeedSpec{4, 0});
  CHECK(std::abs(f1.mean - 0.5) < 3.0 * f1.standard_error);
  for (std::size_t n : {2u, 3u, 16u}) {
    const auto f = estimate_F(n, 20000, SeedSpec{4, n});
    CHECK(f.mean <= 1.0 + 3.0 * f.standard_error);
    CHECK(f.mean >= 0.0);
  }
}

TEST_CASE("estimate_E_cubeweighted agrees with the sphere sampler") {
  CHECK(estimate_E_cubeweighted(1, 1000, SeedSpec{5, 0}).mean == 0.0);
  const auto cube2 = estimate_E_cubeweighted(2, 300000, SeedSpec{5, 1});
  CHECK(std::abs(cube2.mean - kExactOverlapPlane) < 3.0 * cube2.standard_error);
  const auto cube8 = estimate_E_cubeweighted(8, 300000, SeedSpec{5, 2});
  const auto sphere8 = estimate_E(8, 300000, SeedSpec{5, 3});
  CHECK(std::abs(cube8.mean - sphere8.mean) < 3.0 * combined(cube8.standard_error, sphere8.standard_error));
}

TEST_CASE("localized_fraction") {
  CHECK(localized_fraction(1, 0.3, 1000, SeedSpec{6, 0}).mean == 1.0);
  const auto loose = localized_fraction(5, 0.999, 10000, SeedSpec{6, 1});
  CHECK(loose.mean == doctest::Approx(1.0).epsilon(1e-3));

  const auto lib = localized_fraction(16, 0.5, 100000, SeedSpec{6, 2});
  std::mt19937_64 gen(616);
  std::normal_distribution<double> normal;
  int hits = 0;
  constexpr int kOracleSamples = 100000;
  for (int s = 0; s < kOracleSamples; ++s) {
    double sq = 0.0;
    double mx = 0.0;
    for (int i = 0; i < 16; ++i) {
      const double x = normal(gen);
      sq += x * x;
      mx = std::max(mx, std::abs(x));
    }
    if (mx >= 0.5 * std::sqrt(sq)) ++hits;
  }
  const double p = static_cast<double>(hits) / kOracleSamples;
  const double oracle_se = std::sqrt(p * (1.0 - p) / kOracleSamples);
  CHECK(std::abs(lib.mean - p) < 3.0 * combined(lib.standard_error, oracle_se));
  CHECK_THROWS_AS(localized_fraction(4, 0.0, 100, SeedSpec{}), InvalidParameter);
  CHECK_THROWS_AS(localized_fraction(4, 1.0, 100, SeedSpec{}), InvalidParameter);
}

TEST_CASE("theorem bound: closed form") {
  const double oracle = 1.0 / 100.0 + 0.2 + 1e4 * std::pow(0.9, 100);
  CHECK(oracle == doctest::Approx(0.4756).epsilon(1e-4));
  CHECK(std::abs(theorem_bound_value(100, 0.1, Kind::Real) - 0.4756) < 1e-4);
  CHECK(theorem_bound_value(100, 0.1, Kind::Real) == doctest::Approx(oracle).epsilon(1e-12));
  const double complex_oracle = 1.0 / 100.0 + 0.2 + 4e4 * std::pow(0.9, 200);
  CHECK(theorem_bound_value(100, 0.1, Kind::Complex) == doctest::Approx(complex_oracle).epsilon(1e-12));
  CHECK(std::abs(theorem_bound_value(10'000'000, 0.1, Kind::Real) - 0.2) < 1e-6);
  CHECK(std::abs(theorem_bound_value(10'000'000, 0.01, Kind::Complex) - 0.02) < 1e-6);
  CHECK_THROWS_AS(theorem_bound_value(10, 0.0, Kind::Real), InvalidParameter);
  CHECK_THROWS_AS(theorem_bound_value(10, 1.0, Kind::Real), InvalidParameter);
}

TEST_CASE("theorem bound: optimization over the epsilon grid") {
  const auto grid = bound_epsilon_grid();
  CHECK(grid.size() >= 200);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(grid.front() > 1e-6);
  CHECK(grid.back() < 1.0);

  for (Kind kind : {Kind::Real, Kind::Complex}) {
    double previous = 1e300;
    for (std::size_t n = 2; n <= 4096; n *= 2) {
      const auto report = theorem_bound(n, 0.1, kind);
      // Scan oracle over the same grid.
      double best = 1e300;
      for (double e : grid) best = std::min(best, theorem_bound_value(n, e, kind));
      CHECK(report.optimal_value == best);
      CHECK(report.optimal_value <= report.value);
      CHECK(report.optimal_value <= previous);
      previous = report.optimal_value;
    }
  }
}

TEST_CASE("bound domination and the small-N trend") {
  for (std::size_t n : {2u, 4u, 8u}) {
    const auto e = estimate_E(n, 20000, SeedSpec{7, n});
    CHECK(e.mean <= theorem_bound(n, 0.1, Kind::Real).optimal_value + 3.0 * e.standard_error);
    const auto ec = estimate_Ec(n, 20000, SeedSpec{8, n});
    CHECK(ec.mean <= theorem_bound(n, 0.1, Kind::Complex).optimal_value + 3.0 * ec.standard_error);
  }
}

TEST_CASE("sweep drivers: sorted rows, companions and references") {
  const std::vector<std::size_t> dims{8, 1, 2};
  const auto r = figure1(dims, 2000, SeedSpec{9, 0});
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].parameter == 1);
  CHECK(r.rows[1].parameter == 2);
  CHECK(r.rows[2].parameter == 8);
  CHECK(r.rows[0].estimate->mean == 0.0);
  CHECK(*r.rows[1].analytic_reference == kExactOverlapPlane);
  CHECK_FALSE(r.rows[2].analytic_reference.has_value());
  for (const auto& row : r.rows) {
    REQUIRE(row.bound.has_value());
    CHECK(*row.bound == theorem_bound(static_cast<std::size_t>(row.parameter), 0.1, Kind::Real).optimal_value);
  }
  REQUIRE(r.companions.count("F") == 1);
  CHECK(r.companions.at("F").size() == 3);

  // Each row is reproducible on its own stream.
  const std::vector<std::size_t> only2{2};
  const auto r2 = figure1(only2, 2000, SeedSpec{9, 0});
  CHECK(r2.rows[0].estimate->mean != r.rows[1].estimate->mean);  // row index differs
  const auto direct = estimate_E(8, 2000, r.rows[2].estimate->seed);
  CHECK(direct.mean == r.rows[2].estimate->mean);

  const auto bounds = bound_table(dims, 0.1, Kind::Complex);
  CHECK(bounds.rows.size() == 3);
  CHECK(*bounds.rows[2].analytic_reference == theorem_bound_value(8, 0.1, Kind::Complex));
  CHECK_THROWS_AS(figure1(std::vector<std::size_t>{}, 10, SeedSpec{}), InvalidParameter);
  CHECK_THROWS_AS(figure1(std::vector<std::size_t>{0}, 10, SeedSpec{}), InvalidDimension);
}

TEST_CASE("sweep drivers do not depend on the worker count") {
  const std::vector<std::size_t> dims{2, 3, 5};
  const auto one = cube_check(dims, 20000, SeedSpec{10, 0}, 1);
  const auto four = cube_check(dims, 20000, SeedSpec{10, 0}, 4);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    CHECK(one.rows[i].estimate->mean == four.rows[i].estimate->mean);
    CHECK(one.rows[i].estimate->standard_error == four.rows[i].estimate->standard_error);
  }
}

TEST_CASE("counterexample: quadrature against the polar oracle") {
  const double oracle = polar_counterexample(1 << 22);
  CHECK(std::abs(oracle - (0.5 - 1.0 / kPi)) < 1e-9);
  const double coarse = counterexample_overlap(0.005, 10.0);
  CHECK(std::abs(coarse - 0.18169) < 1e-5);
  CHECK(std::abs(coarse - oracle) < 1e-5);
  const double fine = counterexample_overlap(0.0025, 10.0);
  CHECK(std::abs(fine - coarse) < 1e-5);
  CHECK(counterexample_overlap(0.005, 8.0) == doctest::Approx(coarse).epsilon(1e-9));
}

TEST_CASE("counterexample: Monte Carlo agrees") {
  const auto mc = counterexample_overlap_mc(200000, SeedSpec{11, 0});
  CHECK(std::abs(mc.mean - (0.5 - 1.0 / kPi)) < 3.0 * mc.standard_error);
}

TEST_CASE("counterexample: parameter validation") {
  CHECK_THROWS_AS(counterexample_overlap(0.0, 10.0), InvalidParameter);
  CHECK_THROWS_AS(counterexample_overlap(0.02, 10.0), InvalidParameter);
  CHECK_THROWS_AS(counterexample_overlap(0.005, 7.0), InvalidParameter);
  CHECK_THROWS_AS(counterexample_overlap(-0.005, 10.0), InvalidParameter);
}

TEST_CASE("product_decay on the displaced Gaussian pair") {
  const auto pair = displaced_gaussian_pair();
  const auto r = product_decay(pair, 4, 300000, SeedSpec{12, 0});
  REQUIRE(r.rows.size() == 4);
  const auto& n1 = *r.rows[0].estimate;
  const auto& n4 = *r.rows[3].estimate;
  CHECK(std::abs(n1.mean - phi(-1.0)) < 3.0 * n1.standard_error);
  CHECK(std::abs(n4.mean - phi(-2.0)) < 3.0 * n4.standard_error);
  REQUIRE(r.fit.has_value());
  CHECK(r.fit->slope < 0.0);
  CHECK(std::abs(r.fit->slope) >= 5.0 * r.fit->slope_standard_error);
  // Product-of-overlaps lower bound in the bound column.
  for (const auto& row : r.rows) {
    CHECK(row.estimate->mean >= *row.bound - 3.0 * row.estimate->standard_error);
  }
}

TEST_CASE("indicator pair and the binary product rule") {
  const auto pair = indicator_pair(0.5);
  CHECK(overlap_grid(pair.first, pair.second) == doctest::Approx(0.5).epsilon(2e-3));
  const auto rows = product_decay_rows(pair, 6, 100000, SeedSpec{13, 0});
  for (const auto& row : rows.rows) {
    const auto n = static_cast<std::size_t>(row.parameter);
    const std::vector<double> p(n, 0.5);
    const BinaryState b(std::vector<double>(n, 1.0));
    const double exact = overlap_binary(b, b, p);
    CHECK(exact == std::pow(0.5, static_cast<double>(n)));
    CHECK(std::abs(row.estimate->mean - exact) < 3.0 * row.estimate->standard_error + 0.01);
  }
  CHECK_THROWS_AS(indicator_pair(0.0), InvalidParameter);
  CHECK_THROWS_AS(indicator_pair(1.0), InvalidParameter);
}

TEST_CASE("identical factor pair: zero overlap and no fit") {
  const auto f = displaced_gaussian_pair().first;
  const std::pair<GridFunction, GridFunction> same{f, f};
  const auto rows = product_decay_rows(same, 3, 5000, SeedSpec{14, 0});
  for (const auto& row : rows.rows) CHECK(row.estimate->mean == 0.0);
  CHECK_THROWS_AS(product_decay(same, 3, 5000, SeedSpec{14, 0}), InsufficientSignal);
  CHECK_THROWS_AS(product_decay(same, 1, 5000, SeedSpec{14, 0}), InvalidParameter);
}
