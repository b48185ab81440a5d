#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "beable/rng.hpp"

namespace beable {

enum class Kind { Real, Complex };

/// Unit-norm state with real or complex amplitudes.
class StateVector {
 public:
  /// Throws InvalidDimension for an empty sequence and InvalidParameter if
  /// the l2 norm differs from 1 by more than 1e-12.
  static StateVector real(std::vector<double> amplitudes);
  static StateVector complex(std::vector<std::complex<double>> amplitudes);

  Kind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return re_.size(); }

  std::span<const double> real_parts() const noexcept { return re_; }
  /// Empty for real states.
  std::span<const double> imag_parts() const noexcept { return im_; }

  std::complex<double> amplitude(std::size_t i) const;
  double modulus_squared(std::size_t i) const;
  double norm() const;

 private:
  StateVector(Kind kind, std::vector<double> re, std::vector<double> im);

  Kind kind_;
  std::vector<double> re_;
  std::vector<double> im_;
};

/// Uniform point of the cube [-1, 1]^N.
struct CubePoint {
  std::vector<double> coordinates;

  std::size_t dimension() const noexcept { return coordinates.size(); }
  double max_norm() const noexcept;
  double l2_norm() const noexcept;
};

// Draws N normals from `rng` and writes the normalized vector into `out`.
void fill_real_state(std::span<double> out, SampleRng& rng) noexcept;

// Interleaved draws (re_0, im_0, re_1, ...), normalized jointly so that the
// 2N real components lie on S^{2N-1}.
void fill_complex_state(std::span<double> re, std::span<double> im, SampleRng& rng) noexcept;

void fill_cube_point(std::span<double> out, SampleRng& rng) noexcept;

/// State `index` of the stream identified by `seed`, uniform on S^{N-1}.
StateVector sample_real_state(std::size_t dimension, SeedSpec seed, std::uint64_t index = 0);

/// Complex state whose 2N real components are uniform on S^{2N-1}.
StateVector sample_complex_state(std::size_t dimension, SeedSpec seed, std::uint64_t index = 0);

CubePoint sample_cube_point(std::size_t dimension, SeedSpec seed, std::uint64_t index = 0);

}  // namespace beable
