#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eurw/measurements.hpp"

namespace eurw {

/// One uncertainty-relation instance: a referenced measurement X on the system
/// party, a referenced basis per memory party, and the uncertainty set
/// M_1..M_N on the system party.
struct MeasurementConfig {
  int system_party = 0;
  ProjectiveBasis referenced_system;               // X
  std::map<int, ProjectiveBasis> referenced_memory;  // memory party -> Y (product over parties)
  std::vector<ProjectiveBasis> uncertainty_set;    // M_1..M_N

  int chain_size() const { return static_cast<int>(uncertainty_set.size()) + 1; }
  /// Chain index 0 is X; index i >= 1 is M_i.
  const ProjectiveBasis& chain_basis(int index) const;
  std::vector<int> memory_parties() const;  // sorted
  void check(const DensityState& rho) const;
};

/// Permutation of the N+1 system bases (values index MeasurementConfig::chain_basis).
using ChainOrder = std::vector<int>;

std::string order_to_string(const ChainOrder& order);

/// Joint tables and overlap matrices the chain evaluation consumes. tables[i]
/// is the (system-outcome x flattened-memory-outcome) joint distribution of
/// chain basis i against the referenced memory bases; the overlaps come from
/// the bases themselves. Built either from a quantum state or from empirical
/// counts, so the same evaluator serves both paths.
struct ChainTables {
  std::vector<RealMatrix> tables;
  std::vector<std::vector<OverlapMatrix>> overlap;  // overlap[i][j], i != j
};

ChainTables make_chain_tables(const DensityState& rho, const MeasurementConfig& config);

double chain_factor_from_tables(const ChainTables& tables, const ChainOrder& order);

struct OptimalFactor {
  double q_m;
  ChainOrder best_order;
};

OptimalFactor optimal_factor_from_tables(const ChainTables& tables,
                                         std::uint64_t enumeration_cap = 3628800);

/// Complementary factor q_ε for one measurement order, in bits.
///
/// For each memory outcome y the nested sum over intermediate outcomes is a
/// transfer-matrix product: start from the conditional distribution of the
/// first chain basis given y and repeatedly apply transposed overlap matrices;
/// the resulting vector holds β_{e,y}, and q_ε = -Σ p(e_last, y) log₂ β_{e,y}.
/// β = 0 against p > 0 yields +infinity (flagged vacuous, not an error).
double chain_factor(const DensityState& rho, const ChainOrder& order,
                    const MeasurementConfig& config);

/// max over all (N+1)! orders; ties resolve to the lexicographically smallest
/// order. Throws CapExceeded when (N+1)! exceeds the enumeration cap.
OptimalFactor optimal_factor(const DensityState& rho, const MeasurementConfig& config,
                             std::uint64_t enumeration_cap = 3628800);

/// Σ_i S(M_i|memory) + H(X|references), the relation's left-hand side.
double uncertainty_lhs(const DensityState& rho, const MeasurementConfig& config);

/// N·S(A|memory) + q with q from the X-first order / X-last order / optimum.
double theorem1_rhs(const DensityState& rho, const MeasurementConfig& config);
double corollary1_rhs(const DensityState& rho, const MeasurementConfig& config);
double theorem2_rhs(const DensityState& rho, const MeasurementConfig& config);

/// -log₂ max_{ij} |⟨q_i|r_j⟩|², the two-measurement state-independent constant.
double state_independent_c(const ProjectiveBasis& b1, const ProjectiveBasis& b2);

/// -log₂ b for the listed measurement order:
/// b = max_{i_K} Σ_{i_2..i_{K-1}} max_{i_1}(c¹_{i_1 i_2}) Π_m c^m_{i_m i_{m+1}}.
double state_independent_b(const std::vector<ProjectiveBasis>& ordered_bases);

/// Best (largest) -log₂ b over all orderings of the bases.
double state_independent_b_best(const std::vector<ProjectiveBasis>& bases);

/// Dual-path check of the relative-entropy inequality behind the X-first
/// relation: assembles σ = Σ β Π explicitly and compares
///   (a) Σ S(M_i|B) + H(X|Y) - N·S(A|B) - S(ρ)  >=  S(ρ‖σ)
///   (b) S(ρ‖σ)  ==  -S(ρ) - Σ p log₂ β
struct Lemma1Report {
  double lhs;                    // entropy combination, side (a) left
  double relative_entropy_side;  // S(ρ‖σ), may be +inf
  double beta_sum_side;          // -S(ρ) - Σ p log₂ β, may be +inf
  bool infinite;

  double inequality_slack() const { return lhs - relative_entropy_side; }
  double identity_residual() const { return relative_entropy_side - beta_sum_side; }
};

Lemma1Report verify_lemma1(const DensityState& rho, const MeasurementConfig& config);

/// Everything about one relation instance, for reports and CSV rows.
struct BoundReport {
  double lhs;
  double rhs_state_dependent;    // N·S(A|B) + q_m
  double rhs_state_independent;  // N·S(A|B) - log₂ b (b minimized over orders)
  std::map<std::string, double> q_per_order;
  double q_m;
  ChainOrder best_order;
  double conditional_entropy_term;  // S(A|B)
};

BoundReport evaluate_relation(const DensityState& rho, const MeasurementConfig& config,
                              std::uint64_t enumeration_cap = 3628800);

}  // namespace eurw
