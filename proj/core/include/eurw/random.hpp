#pragma once

#include <cstdint>
#include <random>

#include "eurw/measurements.hpp"

namespace eurw {

/// Deterministic random quantum objects. Built on mt19937_64 raw output only
/// (standard-specified), so streams reproduce bit-for-bit across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// uniform double in [0, 1)
  double uniform();
  /// standard normal (Box-Muller)
  double normal();
  /// uniform integer in [0, n)
  int below(int n);

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-random orthonormal basis (QR of a complex Ginibre matrix).
ProjectiveBasis random_basis(Rng& rng, int dim, const std::string& name = "random");

/// Full-rank random density matrix (normalized G·G† with Ginibre G).
DensityState random_density(Rng& rng, std::vector<int> dims);

/// Haar-random pure state.
DensityState random_pure(Rng& rng, std::vector<int> dims);

/// Random fully separable state: a mixture of at most `max_terms` random
/// product pure states with random weights.
DensityState random_separable(Rng& rng, const std::vector<int>& dims, int max_terms = 8);

}  // namespace eurw
