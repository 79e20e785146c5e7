#pragma once

#include <cstdint>
#include <map>

#include "eurw/random.hpp"
#include "eurw/witness.hpp"

namespace eurw {

/// Outcome counts of one measurement setting.
struct CountTable {
  std::vector<OutcomeDistribution::Axis> axes;
  std::vector<std::int64_t> counts;  // row-major over axes, Σ counts = shots
  std::int64_t shots = 0;
  std::uint64_t seed = 0;

  OutcomeDistribution empirical() const;  // counts / shots
};

/// Exact multinomial draw (per-shot inverse CDF). Deterministic given seed.
CountTable sample_counts(const OutcomeDistribution& dist, std::int64_t shots,
                         std::uint64_t seed);

/// Multinomial resample of a table, for bootstrap. Uses a binomial chain that
/// switches to a rounded normal approximation for large n·p·(1-p), so
/// resampling stays O(cells) at any shot count. Deterministic given the rng.
CountTable resample(const CountTable& table, Rng& rng);

/// A measurement setting, identified by the basis name applied on each party
/// (party order). The experimental witness needs, per measured party a:
/// its uncertainty bases against the same-named partner bases (one setting per
/// basis name), plus each of its chain bases against the referenced bases of
/// the other parties.
using SettingKey = std::vector<std::string>;
using ShotTables = std::map<SettingKey, CountTable>;

std::vector<SettingKey> required_settings(const std::vector<PartyBases>& setups);

/// Samples every required setting from the state. Table i uses seed + i, in
/// required_settings order.
ShotTables sample_tables(const DensityState& rho, const std::vector<PartyBases>& setups,
                         std::int64_t shots, std::uint64_t seed);

struct EstimationOptions {
  int resamples = 200;       // bootstrap resamples for the standard error
  std::uint64_t seed = 1;    // bootstrap stream seed
  bool miller_madow = false; // plug-in entropies by default
};

struct EstimatedBound {
  double value = 0.0;
  double standard_error = 0.0;
  int resamples = 0;
  std::int64_t shots = 0;
};

/// Plug-in estimate of the tripartite witness from count tables, with
/// bootstrap standard error. Throws MissingTable when a setting is absent.
EstimatedBound estimated_tripartite_bound(const ShotTables& tables,
                                          const std::vector<int>& dims,
                                          const std::vector<std::string>& labels,
                                          const std::vector<PartyBases>& setups,
                                          const EstimationOptions& options = {});

/// Same for the bipartite coherent-information bound on `system_party`.
EstimatedBound estimated_bipartite_bound(const ShotTables& tables,
                                         const std::vector<int>& dims,
                                         const std::vector<std::string>& labels,
                                         int system_party,
                                         const std::vector<PartyBases>& setups,
                                         const EstimationOptions& options = {});

}  // namespace eurw
