#include "beable/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "beable/error.hpp"
#include "beable/parallel.hpp"

namespace beable {

namespace {

void require_dimension(std::size_t dimension) {
  if (dimension == 0) throw InvalidDimension("dimension must be at least 1");
}

void require_samples(std::uint64_t samples) {
  if (samples < 2) throw InvalidParameter("at least 2 samples are required");
}

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidParameter("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
}

void require_dims(std::span<const std::size_t> dims) {
  if (dims.empty()) throw InvalidParameter("dimension list is empty");
  for (std::size_t d : dims) require_dimension(d);
}

RunningMoments merge_moments(const RunningMoments& a, const RunningMoments& b) { return merge(a, b); }

// Mean of `pair_value(rng)` over `samples` per-sample generators.
template <class PairValue>
OverlapEstimate estimate_mean(std::uint64_t samples, SeedSpec seed, unsigned workers,
                              PairValue pair_value) {
  auto body = [&](std::uint64_t begin, std::uint64_t end) {
    auto evaluate = pair_value;  // per-chunk scratch buffers
    RunningMoments m;
    for (std::uint64_t s = begin; s < end; ++s) {
      SampleRng rng(seed, s);
      m = accumulate(m, evaluate(rng));
    }
    return m;
  };
  return OverlapEstimate::from_moments(
      reduce_chunks<RunningMoments>(samples, workers, body, merge_moments), seed);
}

SeedSpec row_seed(SeedSpec seed, std::size_t row, std::size_t curves = 1, std::size_t curve = 0) {
  return {seed.master, seed.stream + row * curves + curve};
}

template <class Estimator>
std::vector<ExperimentRow> sweep(std::span<const std::size_t> dims, SeedSpec seed,
                                 std::size_t curves, std::size_t curve, Estimator estimator) {
  std::vector<std::size_t> sorted(dims.begin(), dims.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<ExperimentRow> rows;
  rows.reserve(sorted.size());
  for (std::size_t r = 0; r < sorted.size(); ++r) {
    ExperimentRow row;
    row.parameter = static_cast<std::int64_t>(sorted[r]);
    row.estimate = estimator(sorted[r], row_seed(seed, r, curves, curve));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

OverlapEstimate estimate_E(std::size_t dimension, std::uint64_t samples, SeedSpec seed,
                           unsigned workers) {
  require_dimension(dimension);
  require_samples(samples);
  struct Pair {
    std::vector<double> psi0, psi1;
    double operator()(SampleRng& rng) {
      fill_real_state(psi0, rng);
      fill_real_state(psi1, rng);
      return overlap_real_amplitudes(psi0, psi1);
    }
  };
  return estimate_mean(samples, seed, workers,
                       Pair{std::vector<double>(dimension), std::vector<double>(dimension)});
}

OverlapEstimate estimate_Ec(std::size_t dimension, std::uint64_t samples, SeedSpec seed,
                            unsigned workers) {
  require_dimension(dimension);
  require_samples(samples);
  struct Pair {
    std::vector<double> m0, m1;
    // Same draws as fill_complex_state, but the squared moduli are normalized
    // directly so that N = 1 gives exactly 1.
    static void draw(std::vector<double>& moduli, SampleRng& rng) {
      double sum = 0.0;
      for (double& m : moduli) {
        const double re = rng.normal();
        const double im = rng.normal();
        m = re * re + im * im;
        sum += m;
      }
      for (double& m : moduli) m /= sum;
    }
    double operator()(SampleRng& rng) {
      draw(m0, rng);
      draw(m1, rng);
      return overlap_squared_moduli(m0, m1);
    }
  };
  return estimate_mean(samples, seed, workers,
                       Pair{std::vector<double>(dimension), std::vector<double>(dimension)});
}

OverlapEstimate estimate_F(std::size_t dimension, std::uint64_t samples, SeedSpec seed,
                           unsigned workers) {
  require_dimension(dimension);
  require_samples(samples);
  struct Pair {
    std::vector<double> x0, x1;
    double operator()(SampleRng& rng) {
      fill_cube_point(x0, rng);
      fill_cube_point(x1, rng);
      double norm_sq = 0.0;
      double dominated = 0.0;
      for (std::size_t i = 0; i < x0.size(); ++i) {
        const double sq = x0[i] * x0[i];
        norm_sq += sq;
        if (std::abs(x0[i]) < std::abs(x1[i])) dominated += sq;
      }
      return norm_sq > 0.0 ? dominated / norm_sq : 0.0;
    }
  };
  return estimate_mean(samples, seed, workers,
                       Pair{std::vector<double>(dimension), std::vector<double>(dimension)});
}

OverlapEstimate estimate_E_cubeweighted(std::size_t dimension, std::uint64_t samples,
                                        SeedSpec seed, unsigned workers) {
  require_dimension(dimension);
  require_samples(samples);
  const double power = static_cast<double>(dimension);

  // Projects x onto the sphere in place and returns its weight.
  auto project = [power](std::vector<double>& x) {
    double norm_sq = 0.0;
    double max_abs = 0.0;
    for (double v : x) {
      norm_sq += v * v;
      max_abs = std::max(max_abs, std::abs(v));
    }
    if (!(norm_sq > 0.0)) return 0.0;
    const double norm = std::sqrt(norm_sq);
    for (double& v : x) v /= norm;
    return std::pow(max_abs / norm, power);
  };

  auto body = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<double> x0(dimension);
    std::vector<double> x1(dimension);
    RatioMoments m;
    for (std::uint64_t s = begin; s < end; ++s) {
      SampleRng rng(seed, s);
      fill_cube_point(x0, rng);
      fill_cube_point(x1, rng);
      const double w = project(x0) * project(x1);
      m = accumulate(m, w * overlap_real_amplitudes(x0, x1), w);
    }
    return m;
  };
  const auto moments = reduce_chunks<RatioMoments>(
      samples, workers, body, [](const RatioMoments& a, const RatioMoments& b) { return merge(a, b); });
  if (!(moments.mean_den > 0.0)) throw DegenerateWeights("all importance weights vanished");
  return {moments.ratio(), moments.ratio_standard_error(), moments.count, seed};
}

OverlapEstimate localized_fraction(std::size_t dimension, double epsilon, std::uint64_t samples,
                                   SeedSpec seed, unsigned workers) {
  require_dimension(dimension);
  require_epsilon(epsilon);
  require_samples(samples);
  struct Localized {
    std::vector<double> psi;
    double threshold;
    double operator()(SampleRng& rng) {
      fill_real_state(psi, rng);
      double norm_sq = 0.0;
      double max_abs = 0.0;
      for (double v : psi) {
        norm_sq += v * v;
        max_abs = std::max(max_abs, std::abs(v));
      }
      return max_abs >= threshold * std::sqrt(norm_sq) ? 1.0 : 0.0;
    }
  };
  return estimate_mean(samples, seed, workers,
                       Localized{std::vector<double>(dimension), 1.0 - epsilon});
}

double theorem_bound_value(std::size_t dimension, double epsilon, Kind kind) {
  require_dimension(dimension);
  require_epsilon(epsilon);
  const double n = static_cast<double>(dimension);
  const double m = kind == Kind::Real ? n : 2.0 * n;
  // m^2 (1 - eps)^m in log space; overflows otherwise for large m.
  const double tail = std::exp(2.0 * std::log(m) + m * std::log1p(-epsilon));
  return 1.0 / n + 2.0 * epsilon + tail;
}

std::vector<double> bound_epsilon_grid() {
  constexpr int kPoints = 200;
  std::vector<double> grid(kPoints);
  for (int k = 0; k < kPoints; ++k) {
    grid[k] = std::pow(10.0, -6.0 + 6.0 * (k + 1) / (kPoints + 1.0));
  }
  return grid;
}

BoundReport theorem_bound(std::size_t dimension, double epsilon, Kind kind) {
  BoundReport report;
  report.dimension = dimension;
  report.epsilon = epsilon;
  report.kind = kind;
  report.value = theorem_bound_value(dimension, epsilon, kind);
  report.optimal_value = std::numeric_limits<double>::infinity();
  for (double e : bound_epsilon_grid()) {
    const double v = theorem_bound_value(dimension, e, kind);
    if (v < report.optimal_value) {
      report.optimal_value = v;
      report.optimal_epsilon = e;
    }
  }
  return report;
}

ExperimentResult figure1(std::span<const std::size_t> dims, std::uint64_t samples, SeedSpec seed,
                         unsigned workers) {
  require_dims(dims);
  ExperimentResult result;
  result.name = "figure1";
  result.rows = sweep(dims, seed, 2, 0, [&](std::size_t n, SeedSpec s) {
    return estimate_E(n, samples, s, workers);
  });
  for (auto& row : result.rows) {
    const auto n = static_cast<std::size_t>(row.parameter);
    if (n == 1) row.analytic_reference = 0.0;
    if (n == 2) row.analytic_reference = kExactOverlapPlane;
    row.bound = theorem_bound(n, 0.5, Kind::Real).optimal_value;
  }
  auto f_rows = sweep(dims, seed, 2, 1, [&](std::size_t n, SeedSpec s) {
    return estimate_F(n, samples, s, workers);
  });
  for (auto& row : f_rows) {
    if (row.parameter == 1) row.analytic_reference = 0.5;
    row.bound = 1.0;
  }
  result.companions["F"] = std::move(f_rows);
  return result;
}

ExperimentResult ec_curve(std::span<const std::size_t> dims, std::uint64_t samples, SeedSpec seed,
                          unsigned workers) {
  require_dims(dims);
  ExperimentResult result;
  result.name = "ec-curve";
  result.rows = sweep(dims, seed, 1, 0, [&](std::size_t n, SeedSpec s) {
    return estimate_Ec(n, samples, s, workers);
  });
  for (auto& row : result.rows) {
    const auto n = static_cast<std::size_t>(row.parameter);
    if (n == 1) row.analytic_reference = 0.0;
    row.bound = theorem_bound(n, 0.5, Kind::Complex).optimal_value;
  }
  return result;
}

ExperimentResult integral_f(std::span<const std::size_t> dims, std::uint64_t samples,
                            SeedSpec seed, unsigned workers) {
  require_dims(dims);
  ExperimentResult result;
  result.name = "integral-f";
  result.rows = sweep(dims, seed, 1, 0, [&](std::size_t n, SeedSpec s) {
    return estimate_F(n, samples, s, workers);
  });
  for (auto& row : result.rows) {
    if (row.parameter == 1) row.analytic_reference = 0.5;
    row.bound = 1.0;
  }
  return result;
}

ExperimentResult cube_check(std::span<const std::size_t> dims, std::uint64_t samples,
                            SeedSpec seed, unsigned workers) {
  require_dims(dims);
  ExperimentResult result;
  result.name = "cube-check";
  result.rows = sweep(dims, seed, 2, 0, [&](std::size_t n, SeedSpec s) {
    return estimate_E_cubeweighted(n, samples, s, workers);
  });
  for (auto& row : result.rows) {
    if (row.parameter == 1) row.analytic_reference = 0.0;
    if (row.parameter == 2) row.analytic_reference = kExactOverlapPlane;
  }
  result.companions["sphere"] = sweep(dims, seed, 2, 1, [&](std::size_t n, SeedSpec s) {
    return estimate_E(n, samples, s, workers);
  });
  return result;
}

ExperimentResult localized_curve(std::span<const std::size_t> dims, double epsilon,
                                 std::uint64_t samples, SeedSpec seed, unsigned workers) {
  require_dims(dims);
  require_epsilon(epsilon);
  ExperimentResult result;
  result.name = "localized";
  result.rows = sweep(dims, seed, 1, 0, [&](std::size_t n, SeedSpec s) {
    return localized_fraction(n, epsilon, samples, s, workers);
  });
  for (auto& row : result.rows) {
    if (row.parameter == 1) row.analytic_reference = 1.0;
  }
  result.scalars["epsilon"] = epsilon;
  return result;
}

ExperimentResult bound_table(std::span<const std::size_t> dims, double epsilon, Kind kind) {
  require_dims(dims);
  require_epsilon(epsilon);
  std::vector<std::size_t> sorted(dims.begin(), dims.end());
  std::sort(sorted.begin(), sorted.end());
  ExperimentResult result;
  result.name = "bound";
  std::vector<ExperimentRow> optimal_eps;
  for (std::size_t n : sorted) {
    const auto report = theorem_bound(n, epsilon, kind);
    ExperimentRow row;
    row.parameter = static_cast<std::int64_t>(n);
    row.analytic_reference = report.value;
    row.bound = report.optimal_value;
    result.rows.push_back(row);
    ExperimentRow eps_row;
    eps_row.parameter = row.parameter;
    eps_row.analytic_reference = report.optimal_epsilon;
    optimal_eps.push_back(eps_row);
  }
  result.companions["optimal_epsilon"] = std::move(optimal_eps);
  result.scalars["epsilon"] = epsilon;
  result.scalars["complex"] = kind == Kind::Complex ? 1.0 : 0.0;
  return result;
}

double counterexample_overlap(double step, double extent) {
  if (!(step > 0.0 && step <= 0.01)) {
    throw InvalidParameter("quadrature step must lie in (0, 0.01], got " + std::to_string(step));
  }
  if (!(extent >= 8.0) || !std::isfinite(extent)) {
    throw InvalidParameter("integration extent must be at least 8, got " + std::to_string(extent));
  }
  const auto half = static_cast<std::int64_t>(std::llround(extent / step));
  const auto nodes = static_cast<std::size_t>(2 * half + 1);

  // Separable parts of |psi0|^2 = q1^2 exp(-q1^2) exp(-q2^2), with trapezoid weights.
  std::vector<double> mode_excited(nodes);
  std::vector<double> mode_ground(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double q = static_cast<double>(static_cast<std::int64_t>(i) - half) * step;
    const double w = (i == 0 || i + 1 == nodes) ? 0.5 : 1.0;
    const double g = std::exp(-q * q);
    mode_excited[i] = w * q * q * g;
    mode_ground[i] = w * g;
  }

  // The indicator [|q1| < |q2|] is evaluated on exact node offsets. Nodes on
  // |q1| = |q2| lie on its jump and take the mean of the one-sided values.
  double dominated = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const auto r1 = std::abs(static_cast<std::int64_t>(i) - half);
    double row = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
      const auto r2 = std::abs(static_cast<std::int64_t>(j) - half);
      if (r1 < r2) {
        row += mode_ground[j];
      } else if (r1 == r2) {
        row += 0.5 * mode_ground[j];
      }
    }
    dominated += mode_excited[i] * row;
  }

  double total_excited = 0.0;
  double total_ground = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    total_excited += mode_excited[i];
    total_ground += mode_ground[i];
  }
  return dominated / (total_excited * total_ground);
}

std::pair<ProductState, ProductState> counterexample_states(double step, double extent) {
  if (!(step > 0.0) || !(extent > 0.0)) throw InvalidParameter("step and extent must be positive");
  const auto nodes = static_cast<std::size_t>(2 * std::llround(extent / step) + 1);
  const auto excited = GridFunction::tabulate(-extent, step, nodes,
                                              [](double q) { return q * std::exp(-0.5 * q * q); });
  const auto ground = GridFunction::tabulate(-extent, step, nodes,
                                             [](double q) { return std::exp(-0.5 * q * q); });
  return {ProductState{{excited, ground}}, ProductState{{ground, excited}}};
}

OverlapEstimate counterexample_overlap_mc(std::uint64_t samples, SeedSpec seed, double step,
                                          double extent, unsigned workers) {
  const auto [psi0, psi1] = counterexample_states(step, extent);
  return overlap_product_mc(psi0, psi1, samples, seed, workers);
}

std::pair<GridFunction, GridFunction> displaced_gaussian_pair(double shift, double start,
                                                              double stop, double step) {
  if (!(stop > start) || !(step > 0.0)) throw InvalidParameter("invalid grid range");
  const auto nodes = static_cast<std::size_t>(std::llround((stop - start) / step) + 1);
  auto f0 = GridFunction::tabulate(start, step, nodes, [](double q) { return std::exp(-0.25 * q * q); });
  auto f1 = GridFunction::tabulate(start, step, nodes, [shift](double q) {
    const double d = q - shift;
    return std::exp(-0.25 * d * d);
  });
  return {std::move(f0), std::move(f1)};
}

std::pair<GridFunction, GridFunction> indicator_pair(double p, double step) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("indicator overlap p must lie in (0, 1)");
  if (!(step > 0.0 && step <= 0.05)) throw InvalidParameter("indicator grid step must lie in (0, 0.05]");
  const auto margin = static_cast<std::size_t>(std::llround(0.25 / step));
  const auto unit = static_cast<std::size_t>(std::llround(1.0 / step));
  const auto overlap = static_cast<std::size_t>(std::llround(p / step));
  const std::size_t begin0 = margin;
  const std::size_t end = margin + unit;
  const std::size_t begin1 = end - overlap;
  const std::size_t nodes = end + margin + 1;
  std::vector<double> v0(nodes, 0.0);
  std::vector<double> v1(nodes, 0.0);
  for (std::size_t k = begin0; k <= end; ++k) v0[k] = 1.0;
  for (std::size_t k = begin1; k <= end; ++k) v1[k] = 1.0;
  const double start = -static_cast<double>(margin) * step;
  return {GridFunction::normalized(start, step, std::move(v0)),
          GridFunction::normalized(start, step, std::move(v1))};
}

ExperimentResult product_decay_rows(const std::pair<GridFunction, GridFunction>& pair,
                                    std::size_t n_max, std::uint64_t samples, SeedSpec seed,
                                    unsigned workers) {
  if (n_max < 2) throw InvalidParameter("product decay needs n_max >= 2");
  require_samples(samples);
  const double single = overlap_grid(pair.first, pair.second);

  ExperimentResult result;
  result.name = "product-decay";
  ProductState p0;
  ProductState p1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    p0.factors.push_back(pair.first);
    p1.factors.push_back(pair.second);
    ExperimentRow row;
    row.parameter = static_cast<std::int64_t>(n);
    row.estimate = overlap_product_mc(p0, p1, samples, row_seed(seed, n - 1), workers);
    row.bound = std::pow(single, static_cast<double>(n));
    result.rows.push_back(row);
  }
  result.scalars["single_factor_overlap"] = single;
  return result;
}

ExperimentResult product_decay(const std::pair<GridFunction, GridFunction>& pair,
                               std::size_t n_max, std::uint64_t samples, SeedSpec seed,
                               unsigned workers) {
  auto result = product_decay_rows(pair, n_max, samples, seed, workers);
  std::vector<FitPoint> points;
  for (const auto& row : result.rows) {
    const auto& e = *row.estimate;
    if (e.mean > 10.0 * e.standard_error) {
      points.push_back({static_cast<double>(row.parameter), e.mean, e.standard_error});
    }
  }
  if (points.size() < 2) {
    throw InsufficientSignal("only " + std::to_string(points.size()) +
                             " rows exceed 10 standard errors; cannot fit decay");
  }
  result.fit = fit_log_linear(points);
  return result;
}

}  // namespace beable
