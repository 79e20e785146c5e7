#pragma once

#include <map>
#include <string>
#include <vector>

#include "eurw/states.hpp"

namespace eurw {

/// A complete rank-1 projective measurement: columns are the orthonormal
/// measurement eigenvectors. Outcome ordering is the column ordering.
class ProjectiveBasis {
 public:
  ProjectiveBasis(std::string name, ComplexMatrix vectors);

  const std::string& name() const { return name_; }
  const ComplexMatrix& vectors() const { return vectors_; }
  int dim() const { return static_cast<int>(vectors_.cols()); }
  ComplexVector vector(int outcome) const { return vectors_.col(outcome); }

 private:
  std::string name_;
  ComplexMatrix vectors_;
};

/// Doubly stochastic matrix of squared overlaps |⟨v1_i|v2_j⟩|².
using OverlapMatrix = RealMatrix;

OverlapMatrix overlaps(const ProjectiveBasis& b1, const ProjectiveBasis& b2);

/// party index -> basis applied on that party
using BasisAssignment = std::map<int, ProjectiveBasis>;

/// Σ_outcomes Π ρ Π with Π projecting the assigned parties onto their basis
/// vectors; unassigned parties are untouched. Idempotent.
DensityState dephase(const DensityState& rho, const BasisAssignment& assignments);

/// Joint outcome probabilities of measuring every party in its assigned basis.
struct OutcomeDistribution {
  struct Axis {
    int party;
    std::string basis;
    int outcomes;
  };
  std::vector<Axis> axes;
  std::vector<double> probabilities;  // row-major over axes, clipped at tol::prob_clip

  int num_axes() const { return static_cast<int>(axes.size()); }
  std::size_t size() const { return probabilities.size(); }
  double sum() const;

  /// Marginal over the listed axes (relative order preserved).
  OutcomeDistribution marginal(const std::vector<int>& keep_axes) const;

  /// Validates clipping/total-sum invariants; used after external construction.
  void validate() const;
};

OutcomeDistribution joint_distribution(const DensityState& rho,
                                       const BasisAssignment& assignments);

/// Shannon entropy of the whole table, bits.
double shannon_entropy(const OutcomeDistribution& dist);

/// H(target|conditioning) = H(target,conditioning) - H(conditioning); any axis in
/// neither set is marginalized out first.
double classical_conditional_entropy(const OutcomeDistribution& dist,
                                     const std::vector<int>& target_axes,
                                     const std::vector<int>& conditioning_axes);

/// S(M|memory): conditional entropy of the post-measurement state after
/// projectively measuring `basis` on `measured_party`, restricted to
/// measured ∪ memory. Always ≥ 0 (the measured register is classical).
double post_measurement_conditional_entropy(const DensityState& rho, int measured_party,
                                            const ProjectiveBasis& basis,
                                            const std::vector<int>& memory);

/// Reshapes a joint distribution to a (system-outcome x flattened-rest) table.
/// Axes for parties outside system ∪ group are marginalized out; the group
/// axes flatten in ascending party order.
RealMatrix grouped_table(const OutcomeDistribution& dist, int system_party,
                         const std::vector<int>& group_parties);

/// H(row|col) of a joint probability table, bits.
double table_conditional_entropy(const RealMatrix& joint);

}  // namespace eurw
