#include "eurw/shots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eurw {

namespace {

std::int64_t binomial_small(Rng& rng, std::int64_t n, double p) {
  // waiting-time (geometric) method, exact; expected cost ~ n·p
  if (p >= 1.0) return n;
  const double log_q = std::log1p(-p);
  std::int64_t count = -1;
  double sum = 0.0;
  do {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    sum += std::log(u) / log_q;  // geometric waiting time
    ++count;
  } while (sum <= static_cast<double>(n));
  return std::min(count, n);
}

std::int64_t binomial(Rng& rng, std::int64_t n, double p) {
  if (n <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  const bool flip = p > 0.5;
  const double q = flip ? 1.0 - p : p;
  std::int64_t draw;
  const double variance = static_cast<double>(n) * q * (1.0 - q);
  if (variance > 1000.0) {
    // rounded normal approximation; keeps bootstrap O(cells) at 10^7 shots
    const double mean = static_cast<double>(n) * q;
    draw = std::llround(mean + std::sqrt(variance) * rng.normal());
    draw = std::clamp<std::int64_t>(draw, 0, n);
  } else {
    draw = binomial_small(rng, n, q);
  }
  return flip ? n - draw : draw;
}

}  // namespace

OutcomeDistribution CountTable::empirical() const {
  if (shots <= 0) throw InvalidDistribution("CountTable: no shots");
  OutcomeDistribution dist;
  dist.axes = axes;
  dist.probabilities.reserve(counts.size());
  for (std::int64_t c : counts) {
    dist.probabilities.push_back(static_cast<double>(c) / static_cast<double>(shots));
  }
  dist.validate();
  return dist;
}

CountTable sample_counts(const OutcomeDistribution& dist, std::int64_t shots,
                         std::uint64_t seed) {
  if (shots < 1) throw InvalidDistribution("sample_counts: shots must be >= 1");
  dist.validate();
  std::vector<double> cumulative;
  cumulative.reserve(dist.probabilities.size());
  double running = 0.0;
  for (double p : dist.probabilities) {
    running += p;
    cumulative.push_back(running);
  }
  cumulative.back() = std::max(cumulative.back(), 1.0);

  CountTable table;
  table.axes = dist.axes;
  table.counts.assign(dist.probabilities.size(), 0);
  table.shots = shots;
  table.seed = seed;
  Rng rng(seed);
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto cell = static_cast<std::size_t>(it - cumulative.begin());
    ++table.counts[std::min(cell, table.counts.size() - 1)];
  }
  return table;
}

CountTable resample(const CountTable& table, Rng& rng) {
  CountTable out = table;
  std::int64_t remaining = table.shots;
  double prob_remaining = 1.0;
  const double total = static_cast<double>(table.shots);
  for (std::size_t i = 0; i < table.counts.size(); ++i) {
    if (remaining <= 0) {
      out.counts[i] = 0;
      continue;
    }
    if (i + 1 == table.counts.size()) {
      out.counts[i] = remaining;
      break;
    }
    const double p_cell = static_cast<double>(table.counts[i]) / total;
    const double q = prob_remaining > 0.0 ? std::clamp(p_cell / prob_remaining, 0.0, 1.0) : 0.0;
    const std::int64_t c = binomial(rng, remaining, q);
    out.counts[i] = c;
    remaining -= c;
    prob_remaining -= p_cell;
  }
  return out;
}

std::vector<SettingKey> required_settings(const std::vector<PartyBases>& setups) {
  const int n = static_cast<int>(setups.size());
  std::vector<SettingKey> keys;
  auto push_unique = [&keys](SettingKey key) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(std::move(key));
  };

  for (int a = 0; a < n; ++a) {
    // partner settings: every party measures the same-named basis (all bases,
    // so the state-independent baseline can reuse the same tables)
    for (const auto& m : setups[static_cast<std::size_t>(a)].bases) {
      SettingKey key(static_cast<std::size_t>(n));
      for (int p = 0; p < n; ++p) key[static_cast<std::size_t>(p)] = m.name();
      push_unique(std::move(key));
    }
    // chain settings: each system basis against the referenced bases elsewhere
    for (const auto& b : setups[static_cast<std::size_t>(a)].bases) {
      SettingKey key(static_cast<std::size_t>(n));
      for (int p = 0; p < n; ++p) {
        key[static_cast<std::size_t>(p)] =
            (p == a) ? b.name() : setups[static_cast<std::size_t>(p)].referenced().name();
      }
      push_unique(std::move(key));
    }
  }
  return keys;
}

namespace {

const ProjectiveBasis& basis_by_name(const PartyBases& setup, const std::string& name) {
  for (const auto& b : setup.bases) {
    if (b.name() == name) return b;
  }
  throw MissingTable("no basis named '" + name + "' in the party's setup");
}

std::string key_to_string(const SettingKey& key) {
  std::string s;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) s += '|';
    s += key[i];
  }
  return s;
}

DistributionProvider tables_provider(const ShotTables& tables) {
  return [&tables](const BasisAssignment& assignment) {
    SettingKey key;
    for (const auto& [party, basis] : assignment) {
      (void)party;
      key.push_back(basis.name());
    }
    const auto it = tables.find(key);
    if (it == tables.end()) {
      throw MissingTable("no count table for setting " + key_to_string(key));
    }
    return it->second.empirical();
  };
}

/// Miller-Madow correction to the plug-in witness: each conditional entropy
/// H(T|C) gains (m_joint - m_cond)/(2·shots·ln 2), which enters the bracket
/// with a minus sign and the 1/N (and tripartite 1/2) prefactors.
double miller_madow_delta(const ShotTables& tables, const std::vector<PartyBases>& setups,
                          int system_party, int num_parties) {
  const auto& mine = setups[static_cast<std::size_t>(system_party)];
  const int n_uncertainty = static_cast<int>(mine.bases.size()) - 1;
  double delta = 0.0;
  auto term = [&](const SettingKey& key) {
    const auto it = tables.find(key);
    if (it == tables.end()) throw MissingTable("setting " + key_to_string(key));
    const CountTable& t = it->second;
    // nonzero cells of the joint table and of the memory marginal
    std::map<std::string, std::int64_t> marg;  // flattened memory index -> count
    std::vector<int> dims;
    for (const auto& ax : t.axes) dims.push_back(ax.outcomes);
    std::vector<int> strides(dims.size(), 1);
    for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
      strides[static_cast<std::size_t>(k)] =
          strides[static_cast<std::size_t>(k + 1)] * dims[static_cast<std::size_t>(k + 1)];
    }
    int m_joint = 0;
    for (std::size_t flat = 0; flat < t.counts.size(); ++flat) {
      if (t.counts[flat] == 0) continue;
      ++m_joint;
      std::string mem_key;
      for (std::size_t ax = 0; ax < dims.size(); ++ax) {
        if (t.axes[ax].party == system_party) continue;
        mem_key += std::to_string((static_cast<int>(flat) / strides[ax]) % dims[ax]) + ",";
      }
      marg[mem_key] += t.counts[flat];
    }
    const int m_cond = static_cast<int>(marg.size());
    return static_cast<double>(m_joint - m_cond) /
           (2.0 * static_cast<double>(t.shots) * std::log(2.0));
  };

  for (const auto& m : mine.uncertainty()) {
    SettingKey key(static_cast<std::size_t>(num_parties), m.name());
    delta += term(key);
  }
  SettingKey ref_key(static_cast<std::size_t>(num_parties));
  for (int p = 0; p < num_parties; ++p) {
    ref_key[static_cast<std::size_t>(p)] =
        setups[static_cast<std::size_t>(p)].referenced().name();
  }
  delta += term(ref_key);
  return delta / static_cast<double>(n_uncertainty);
}

double point_estimate_tripartite(const ShotTables& tables, const std::vector<int>& dims,
                                 const std::vector<std::string>& labels,
                                 const std::vector<PartyBases>& setups, bool miller_madow) {
  const auto provider = tables_provider(tables);
  double value = tripartite_ef3_bound_from(provider, dims, labels, setups).bound_value;
  if (miller_madow) {
    for (int p = 0; p < 3; ++p) {
      value -= 0.5 * miller_madow_delta(tables, setups, p, 3);
    }
  }
  return value;
}

double point_estimate_bipartite(const ShotTables& tables, const std::vector<int>& dims,
                                int system_party, const std::vector<PartyBases>& setups,
                                bool miller_madow) {
  const auto provider = tables_provider(tables);
  double value = coherent_info_bound_from(provider, dims, system_party, setups);
  if (miller_madow) {
    value -= miller_madow_delta(tables, setups, system_party,
                                static_cast<int>(dims.size()));
  }
  return value;
}

EstimatedBound with_bootstrap(const ShotTables& tables,
                              const std::function<double(const ShotTables&)>& point,
                              const EstimationOptions& options) {
  EstimatedBound out;
  out.value = point(tables);
  out.resamples = options.resamples;
  out.shots = tables.empty() ? 0 : tables.begin()->second.shots;
  if (options.resamples < 2) return out;

  Rng rng(options.seed);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(options.resamples));
  for (int r = 0; r < options.resamples; ++r) {
    ShotTables resampled;
    for (const auto& [key, table] : tables) resampled.emplace(key, resample(table, rng));
    values.push_back(point(resampled));
  }
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                      static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  out.standard_error = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return out;
}

}  // namespace

ShotTables sample_tables(const DensityState& rho, const std::vector<PartyBases>& setups,
                         std::int64_t shots, std::uint64_t seed) {
  ShotTables tables;
  const auto keys = required_settings(setups);
  std::uint64_t offset = 0;
  for (const auto& key : keys) {
    BasisAssignment assignment;
    for (int p = 0; p < rho.num_parties(); ++p) {
      assignment.emplace(p, basis_by_name(setups[static_cast<std::size_t>(p)],
                                          key[static_cast<std::size_t>(p)]));
    }
    tables.emplace(key,
                   sample_counts(joint_distribution(rho, assignment), shots, seed + offset));
    ++offset;
  }
  return tables;
}

EstimatedBound estimated_tripartite_bound(const ShotTables& tables,
                                          const std::vector<int>& dims,
                                          const std::vector<std::string>& labels,
                                          const std::vector<PartyBases>& setups,
                                          const EstimationOptions& options) {
  if (dims.size() != 3) throw PartyError("estimated_tripartite_bound: three parties");
  return with_bootstrap(
      tables,
      [&](const ShotTables& t) {
        return point_estimate_tripartite(t, dims, labels, setups, options.miller_madow);
      },
      options);
}

EstimatedBound estimated_bipartite_bound(const ShotTables& tables,
                                         const std::vector<int>& dims,
                                         const std::vector<std::string>& labels,
                                         int system_party,
                                         const std::vector<PartyBases>& setups,
                                         const EstimationOptions& options) {
  (void)labels;
  return with_bootstrap(
      tables,
      [&](const ShotTables& t) {
        return point_estimate_bipartite(t, dims, system_party, setups,
                                        options.miller_madow);
      },
      options);
}

}  // namespace eurw
