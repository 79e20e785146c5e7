#pragma once

#include <string>
#include <vector>

#include "eurw/linalg.hpp"

namespace eurw {

/// Density matrix together with the ordered tensor-factor structure
/// (one dimension per party). Construction validates hermiticity,
/// unit trace and positivity up to the clipping tolerances.
class DensityState {
 public:
  DensityState(ComplexMatrix matrix, std::vector<int> dims,
               std::vector<std::string> labels = {});

  static DensityState pure(const ComplexVector& psi, std::vector<int> dims,
                           std::vector<std::string> labels = {});

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }

  int num_parties() const { return static_cast<int>(dims_.size()); }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  int party_dim(int party) const;
  const std::string& label(int party) const;

  /// Reduced matrix on the listed parties (relative order preserved).
  ComplexMatrix reduced(const std::vector<int>& keep) const;

 private:
  ComplexMatrix matrix_;
  std::vector<int> dims_;
  std::vector<std::string> labels_;
};

/// Reorders the tensor factors: party k of the result is party perm[k] of the input.
DensityState permute_parties(const DensityState& rho, const std::vector<int>& perm);

/// S(ρ) = -Σ λ log₂ λ in bits. Validates trace and positivity.
double von_neumann_entropy(const ComplexMatrix& rho);
double von_neumann_entropy(const DensityState& rho);

/// S(target|memory) = S(ρ_{target∪memory}) - S(ρ_memory), in bits (may be negative).
double conditional_entropy(const DensityState& rho, int target,
                           const std::vector<int>& memory);

/// S(ρ‖σ) = tr ρ(log₂ρ - log₂σ); +infinity when supp(ρ) ⊄ supp(σ).
/// σ must be positive semidefinite but need not be normalized.
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);

}  // namespace eurw
