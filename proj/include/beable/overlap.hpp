#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "beable/estimate.hpp"
#include "beable/grid_function.hpp"
#include "beable/state_sampler.hpp"

namespace beable {

// The overlap rho(psi0 | psi1) is the |psi0|^2 mass of the region where
// |psi1| strictly exceeds |psi0|. Ties contribute nothing.

/// Sum over coordinates of [|psi0_i| < |psi1_i|] |psi0_i|^2.
/// Throws IncompatibleStates on dimension or kind mismatch.
double overlap_discrete(const StateVector& psi0, const StateVector& psi1);

/// Kernel for real amplitudes; both spans must have equal length.
double overlap_real_amplitudes(std::span<const double> psi0, std::span<const double> psi1) noexcept;

/// Kernel on squared moduli, used for complex states.
double overlap_squared_moduli(std::span<const double> m0, std::span<const double> m1) noexcept;

/// Trapezoidal quadrature of [f0 < f1] f0^2 on the shared grid.
/// Throws IncompatibleGrids when the grids differ.
double overlap_grid(const GridFunction& f0, const GridFunction& f1);

/// Indicator [prod f0_i(q_i) < prod f1_i(q_i)], decided by the sign of the
/// summed log-ratios. A vanishing f0 product against a nonzero f1 product
/// counts as 1; a vanishing f1 product counts as 0.
bool product_dominated(const ProductState& p0, const ProductState& p1,
                       std::span<const double> q) noexcept;

/// Monte Carlo estimate of rho(P0 | P1). Each coordinate q_i is drawn from
/// f0_i^2 by inverse CDF. Throws IncompatibleStates on factor-count or grid
/// mismatch. The result does not depend on `workers`.
OverlapEstimate overlap_product_mc(const ProductState& p0, const ProductState& p1,
                                   std::uint64_t samples, SeedSpec seed, unsigned workers = 1);

/// Product of per-system overlap probabilities for two-valued states.
double overlap_binary(const BinaryState& b0, const BinaryState& b1,
                      std::span<const double> per_system_overlap);

struct MaximaDistance {
  double distance = 0.0;
  std::vector<double> per_factor;
};

/// sqrt(sum Delta_i^2) between the argmax nodes of corresponding factors.
MaximaDistance maxima_distance(const ProductState& p0, const ProductState& p1);

struct RidgeValue {
  double crossing = 0.0;        // q_max with f0(q_max) = f1(q_max)
  double crossing_value = 0.0;  // f0(q_max)
  double ridge_maximum = 0.0;   // f0(q_max)^n
};

/// Locates the crossing of f0 and f1 between their maxima by bisection of the
/// interpolated difference (tolerance 1e-10 in q).
RidgeValue ridge_value(const GridFunction& f0, const GridFunction& f1, unsigned n);

}  // namespace beable
