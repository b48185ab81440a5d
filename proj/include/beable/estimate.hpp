#pragma once

#include <cstdint>

#include "beable/rng.hpp"
#include "beable/stats.hpp"

namespace beable {

/// Monte Carlo estimate with its standard error.
struct OverlapEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  SeedSpec seed{};

  static OverlapEstimate from_moments(const RunningMoments& m, SeedSpec seed) {
    return {m.mean, m.standard_error(), m.count, seed};
  }
};

}  // namespace beable
