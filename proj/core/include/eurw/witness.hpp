#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "eurw/eur.hpp"

namespace eurw {

/// exact: per-measurement terms are quantum conditional entropies S(M|memory),
/// which require the full state. experimental: data-processed classical
/// entropies H(M|partner outcomes), available from measured statistics alone.
enum class WitnessMode { exact, experimental };

std::string to_string(WitnessMode mode);

/// The bases available on one party. One of them is designated as the
/// referenced measurement; the rest form the uncertainty set.
/// referenced_index = -1 picks the last listed basis.
struct PartyBases {
  std::vector<ProjectiveBasis> bases;
  int referenced_index = -1;

  int resolved_reference() const;
  const ProjectiveBasis& referenced() const;
  std::vector<ProjectiveBasis> uncertainty() const;
};

/// Builds the uncertainty-relation config for `system_party`: its referenced
/// basis plays X, every other party's referenced basis enters the referenced
/// memory product, and its remaining bases form the uncertainty set.
MeasurementConfig build_config(const DensityState& rho, int system_party,
                               const std::vector<PartyBases>& setups);

/// Partner bases per memory party, aligned with the uncertainty set: partner
/// of M_i on party p is the basis in setups[p] with the same name.
/// Throws MissingPartnerBasis when a name has no match.
std::map<int, std::vector<ProjectiveBasis>> build_partners(
    const DensityState& rho, int system_party, const std::vector<PartyBases>& setups);

/// Source of joint outcome statistics; the assignment covers every party.
/// joint_distribution(rho, ·) is the infinite-statistics provider; the shots
/// module substitutes empirical tables.
using DistributionProvider = std::function<OutcomeDistribution(const BasisAssignment&)>;

DistributionProvider state_provider(const DensityState& rho);

/// Components of one party's coherent-information bound
///   (1/N) [ q_m - Σ_i T_i - H(X|references) ]
/// with T_i = S(M_i|memory) (exact) or H(M_i|partners) (experimental).
struct BracketTerms {
  double q_m = 0.0;
  ChainOrder best_order;
  double h_reference = 0.0;
  std::vector<double> per_measurement;  // T_i, uncertainty-set order
  double value = 0.0;

  /// Σ T_i + H(X|·): the relation's (plug-in) left-hand side.
  double lhs() const;
};

/// Core evaluation; `exact_state` may be null in experimental mode.
BracketTerms coherent_bracket(const DensityState* exact_state,
                              const DistributionProvider& provider,
                              const std::vector<int>& dims, int system_party,
                              const std::vector<PartyBases>& setups, WitnessMode mode);

double coherent_info_bound(const DensityState& rho, const MeasurementConfig& config,
                           const std::map<int, std::vector<ProjectiveBasis>>& partners,
                           WitnessMode mode);

/// Policy-driven overload: config and partners from the per-party setups.
double coherent_info_bound(const DensityState& rho, int system_party,
                           const std::vector<PartyBases>& setups, WitnessMode mode);

/// Experimental-mode bound from a statistics provider (no state needed).
double coherent_info_bound_from(const DistributionProvider& provider,
                                const std::vector<int>& dims, int system_party,
                                const std::vector<PartyBases>& setups);

struct WitnessResult {
  double bound_value = 0.0;
  std::map<std::string, double> per_party_terms;
  bool detected = false;  // strictly positive bound; zero is inconclusive
  std::string configuration;
};

/// Tripartite entanglement-of-formation lower bound: the three per-party
/// coherent-information bounds (memory = the other two parties), summed and
/// halved.
WitnessResult tripartite_ef3_bound(const DensityState& rho,
                                   const std::vector<PartyBases>& setups,
                                   WitnessMode mode);

WitnessResult tripartite_ef3_bound_from(const DistributionProvider& provider,
                                        const std::vector<int>& dims,
                                        const std::vector<std::string>& labels,
                                        const std::vector<PartyBases>& setups);

/// Comparison curve from the state-independent relation: per party,
/// -log₂ b (best over orderings of all K bases) minus the sum of the
/// per-measurement terms over all K bases, again summed and halved.
double tripartite_ef3_baseline(const DensityState& rho,
                               const std::vector<PartyBases>& setups, WitnessMode mode);

double tripartite_ef3_baseline_from(const DistributionProvider& provider,
                                    const std::vector<int>& dims,
                                    const std::vector<PartyBases>& setups);

/// Bipartite analogs of the baseline (memory = all other parties).
double coherent_info_baseline(const DensityState& rho, int system_party,
                              const std::vector<PartyBases>& setups, WitnessMode mode);

/// Genuine-multipartite-entanglement bound for three parties:
/// -S(A|BC) - S(B|AC) - S(C|AB) - 2 log₂ d_max.
double gme_bound(const DensityState& rho);

/// Same with each conditional-entropy term replaced by its measured lower
/// bound from coherent_info_bound.
WitnessResult gme_bound_estimated(const DensityState& rho,
                                  const std::vector<PartyBases>& setups, WitnessMode mode);

/// m-partite bound: (1/2) Σ_k -S(A_k | rest).
double mpartite_bound(const DensityState& rho);

WitnessResult mpartite_bound_estimated(const DensityState& rho,
                                       const std::vector<PartyBases>& setups,
                                       WitnessMode mode);

}  // namespace eurw
