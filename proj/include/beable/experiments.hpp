#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "beable/estimate.hpp"
#include "beable/grid_function.hpp"
#include "beable/overlap.hpp"
#include "beable/state_sampler.hpp"
#include "beable/stats.hpp"

namespace beable {

/// E(2) = 1/2 - 2/pi^2 for two independent uniform real states in the plane.
inline constexpr double kExactOverlapPlane = 0.5 - 2.0 / (3.14159265358979323846 * 3.14159265358979323846);

// Random-state expectations. All take `samples` independent pairs drawn from
// the stream `seed`; sample i of the stream always gets the same draws.

/// Mean overlap of two independent uniform states on S^{N-1}.
OverlapEstimate estimate_E(std::size_t dimension, std::uint64_t samples, SeedSpec seed,
                           unsigned workers = 1);

/// Complex analogue: states uniform on S^{2N-1}, comparison of squared moduli.
OverlapEstimate estimate_Ec(std::size_t dimension, std::uint64_t samples, SeedSpec seed,
                            unsigned workers = 1);

/// Cube integral: mean of sum_i [|x0_i| < |x1_i|] x0_i^2 / |x0|^2 for
/// independent uniform points of [-1, 1]^N.
OverlapEstimate estimate_F(std::size_t dimension, std::uint64_t samples, SeedSpec seed,
                           unsigned workers = 1);

/**
 * Estimates E from cube samples. Each cube point x is projected to x / |x|_2
 * and weighted by (|x|_inf / |x|_2)^N, which is proportional to the ratio of
 * the uniform sphere density to the density of the projected cube point.
 * The pair estimate is the self-normalized ratio
 *   sum(w0 w1 overlap) / sum(w0 w1)
 * so the omitted constant factors cancel. The standard error comes from the
 * delta method on that ratio. Weight variance grows quickly with N; intended
 * for N <= 16.
 */
OverlapEstimate estimate_E_cubeweighted(std::size_t dimension, std::uint64_t samples,
                                        SeedSpec seed, unsigned workers = 1);

/// Fraction of uniform real states with |psi|_inf >= (1 - epsilon) |psi|_2.
OverlapEstimate localized_fraction(std::size_t dimension, double epsilon, std::uint64_t samples,
                                   SeedSpec seed, unsigned workers = 1);

struct BoundReport {
  std::size_t dimension = 0;
  double epsilon = 0.0;
  Kind kind = Kind::Real;
  double value = 0.0;
  double optimal_epsilon = 0.0;
  double optimal_value = 0.0;
};

/// 1/N + 2 eps + N^2 (1 - eps)^N (real) or 1/N + 2 eps + (2N)^2 (1 - eps)^{2N}
/// (complex). Throws InvalidParameter unless 0 < eps < 1.
double theorem_bound_value(std::size_t dimension, double epsilon, Kind kind);

/// Log-uniform epsilon grid used by theorem_bound (200 points strictly inside (1e-6, 1)).
std::vector<double> bound_epsilon_grid();

/// Evaluates the bound at `epsilon` and minimizes it over bound_epsilon_grid().
BoundReport theorem_bound(std::size_t dimension, double epsilon, Kind kind);

struct ExperimentRow {
  std::int64_t parameter = 0;
  std::optional<OverlapEstimate> estimate;
  std::optional<double> analytic_reference;
  std::optional<double> bound;
};

struct ExperimentResult {
  std::string name;
  std::vector<ExperimentRow> rows;
  // Additional curves over the same parameters (e.g. F(N) next to E(N)).
  std::map<std::string, std::vector<ExperimentRow>> companions;
  // Named scalars for the summary (closed forms, cross-estimates, ...).
  std::map<std::string, double> scalars;
  std::optional<FitResult> fit;
};

// Row r of the sweep drivers uses stream seed.stream + r (companion curves use
// distinct streams), so each row is reproducible on its own.

/// E(N) with the exact plane value where known and the optimized real bound;
/// F(N) over the same dims as the "F" companion.
ExperimentResult figure1(std::span<const std::size_t> dims, std::uint64_t samples, SeedSpec seed,
                         unsigned workers = 1);

ExperimentResult ec_curve(std::span<const std::size_t> dims, std::uint64_t samples, SeedSpec seed,
                          unsigned workers = 1);

ExperimentResult integral_f(std::span<const std::size_t> dims, std::uint64_t samples,
                            SeedSpec seed, unsigned workers = 1);

/// Cube-weighted E(N) with the sphere estimate as the "sphere" companion.
ExperimentResult cube_check(std::span<const std::size_t> dims, std::uint64_t samples,
                            SeedSpec seed, unsigned workers = 1);

ExperimentResult localized_curve(std::span<const std::size_t> dims, double epsilon,
                                 std::uint64_t samples, SeedSpec seed, unsigned workers = 1);

/// Closed-form bound at epsilon (analytic_reference) and its optimum (bound).
ExperimentResult bound_table(std::span<const std::size_t> dims, double epsilon, Kind kind);

/**
 * Overlap of two orthogonal one-particle states over two field-mode beables,
 * |psi0| ~ |q1| exp(-(q1^2 + q2^2)/2) and |psi1| ~ |q2| exp(-(q1^2 + q2^2)/2),
 * by 2-D trapezoidal quadrature on [-extent, extent]^2.
 *
 * Requires 0 < step <= 0.01 and extent >= 8; throws InvalidParameter otherwise.
 */
double counterexample_overlap(double step, double extent);

/// The two states above as products over (q1, q2), tabulated on one grid.
std::pair<ProductState, ProductState> counterexample_states(double step, double extent);

/// Monte Carlo re-estimate of the counterexample by product-state sampling.
OverlapEstimate counterexample_overlap_mc(std::uint64_t samples, SeedSpec seed,
                                          double step = 0.001, double extent = 10.0,
                                          unsigned workers = 1);

/// Amplitudes whose squares are the N(0,1) and N(shift,1) densities.
std::pair<GridFunction, GridFunction> displaced_gaussian_pair(double shift = 2.0,
                                                              double start = -8.0,
                                                              double stop = 10.0,
                                                              double step = 0.001);

/// Two-valued factors: f0 constant on [0, 1], f1 constant on [1 - p, 1], so
/// rho(f0 | f1) = p up to edge effects of one grid step.
std::pair<GridFunction, GridFunction> indicator_pair(double p, double step = 1e-3);

/// Rows n = 1..n_max of the overlap of n-fold products of the pair. The bound
/// column holds overlap_grid(f0, f1)^n, the product-of-overlaps lower bound.
ExperimentResult product_decay_rows(const std::pair<GridFunction, GridFunction>& pair,
                                    std::size_t n_max, std::uint64_t samples, SeedSpec seed,
                                    unsigned workers = 1);

/// product_decay_rows plus a log-linear fit over rows with mean > 10 standard
/// errors. Throws InsufficientSignal when fewer than two rows qualify.
ExperimentResult product_decay(const std::pair<GridFunction, GridFunction>& pair,
                               std::size_t n_max, std::uint64_t samples, SeedSpec seed,
                               unsigned workers = 1);

}  // namespace beable
