#include "eurw/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eurw {

namespace {

std::vector<int> other_parties(int n, int system_party) {
  std::vector<int> out;
  for (int p = 0; p < n; ++p) {
    if (p != system_party) out.push_back(p);
  }
  return out;
}

void check_setups(int num_parties, const std::vector<PartyBases>& setups) {
  if (static_cast<int>(setups.size()) != num_parties) {
    throw PartyError("witness: one PartyBases per party required");
  }
  for (const auto& s : setups) {
    if (s.bases.empty()) throw PartyError("witness: empty basis list for a party");
  }
}

const ProjectiveBasis& find_by_name(const PartyBases& setup, const std::string& name) {
  for (const auto& b : setup.bases) {
    if (b.name() == name) return b;
  }
  throw MissingPartnerBasis("no basis named '" + name + "' on the partner party");
}

double bracket(const DensityState* exact_state, const DistributionProvider& provider,
               const std::vector<int>& dims, int system_party,
               const std::vector<PartyBases>& setups, WitnessMode mode) {
  return coherent_bracket(exact_state, provider, dims, system_party, setups, mode).value;
}

double baseline_bracket(const DensityState* exact_state, const DistributionProvider& provider,
                        const std::vector<int>& dims, int system_party,
                        const std::vector<PartyBases>& setups, WitnessMode mode) {
  const int n_parties = static_cast<int>(dims.size());
  check_setups(n_parties, setups);
  const auto memory = other_parties(n_parties, system_party);
  const auto& mine = setups[static_cast<std::size_t>(system_party)];
  if (mine.bases.size() < 2) throw PartyError("baseline: need at least two bases per party");

  double sum_t = 0.0;
  for (const auto& m : mine.bases) {
    if (mode == WitnessMode::exact) {
      sum_t += post_measurement_conditional_entropy(*exact_state, system_party, m, memory);
    } else {
      BasisAssignment assign;
      assign.emplace(system_party, m);
      for (int p : memory) {
        assign.emplace(p, find_by_name(setups[static_cast<std::size_t>(p)], m.name()));
      }
      sum_t += table_conditional_entropy(grouped_table(provider(assign), system_party, memory));
    }
  }
  const double neg_log_b = state_independent_b_best(mine.bases);
  return (neg_log_b - sum_t) / static_cast<double>(mine.bases.size() - 1);
}

std::string describe(const std::vector<PartyBases>& setups, WitnessMode mode) {
  std::string s = "mode=" + to_string(mode);
  for (std::size_t p = 0; p < setups.size(); ++p) {
    s += "; party" + std::to_string(p) + "=[";
    for (std::size_t i = 0; i < setups[p].bases.size(); ++i) {
      if (i) s += ",";
      s += setups[p].bases[i].name();
      if (static_cast<int>(i) == setups[p].resolved_reference()) s += "*";
    }
    s += "]";
  }
  return s;
}

}  // namespace

std::string to_string(WitnessMode mode) {
  return mode == WitnessMode::exact ? "exact" : "experimental";
}

double BracketTerms::lhs() const {
  double sum = h_reference;
  for (double t : per_measurement) sum += t;
  return sum;
}

BracketTerms coherent_bracket(const DensityState* exact_state,
                              const DistributionProvider& provider,
                              const std::vector<int>& dims, int system_party,
                              const std::vector<PartyBases>& setups, WitnessMode mode) {
  const int n_parties = static_cast<int>(dims.size());
  check_setups(n_parties, setups);
  if (mode == WitnessMode::exact && exact_state == nullptr) {
    throw InvalidState("exact witness mode needs the quantum state");
  }
  const auto memory = other_parties(n_parties, system_party);
  const auto& mine = setups[static_cast<std::size_t>(system_party)];
  const ProjectiveBasis& x = mine.referenced();
  const std::vector<ProjectiveBasis> ms = mine.uncertainty();
  if (ms.empty()) throw PartyError("witness: need at least two bases per party");

  BasisAssignment ref_assign;
  ref_assign.emplace(system_party, x);
  for (int p : memory) ref_assign.emplace(p, setups[static_cast<std::size_t>(p)].referenced());

  // chain tables for q_m: each chain basis against the referenced memory bases
  ChainTables ws;
  const int k = static_cast<int>(ms.size()) + 1;
  ws.tables.reserve(static_cast<std::size_t>(k));
  std::vector<const ProjectiveBasis*> chain{&x};
  for (const auto& m : ms) chain.push_back(&m);
  for (const auto* cb : chain) {
    BasisAssignment assign = ref_assign;
    assign.erase(system_party);
    assign.emplace(system_party, *cb);
    ws.tables.push_back(grouped_table(provider(assign), system_party, memory));
  }
  ws.overlap.assign(static_cast<std::size_t>(k),
                    std::vector<OverlapMatrix>(static_cast<std::size_t>(k)));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j) {
        ws.overlap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            overlaps(*chain[static_cast<std::size_t>(i)], *chain[static_cast<std::size_t>(j)]);
      }
    }
  }

  BracketTerms terms;
  const OptimalFactor best = optimal_factor_from_tables(ws);
  terms.q_m = best.q_m;
  terms.best_order = best.best_order;
  terms.h_reference =
      table_conditional_entropy(grouped_table(provider(ref_assign), system_party, memory));

  for (const auto& m : ms) {
    if (mode == WitnessMode::exact) {
      terms.per_measurement.push_back(
          post_measurement_conditional_entropy(*exact_state, system_party, m, memory));
    } else {
      BasisAssignment assign;
      assign.emplace(system_party, m);
      for (int p : memory) {
        assign.emplace(p, find_by_name(setups[static_cast<std::size_t>(p)], m.name()));
      }
      terms.per_measurement.push_back(
          table_conditional_entropy(grouped_table(provider(assign), system_party, memory)));
    }
  }
  double sum_t = 0.0;
  for (double t : terms.per_measurement) sum_t += t;
  terms.value = (terms.q_m - sum_t - terms.h_reference) / static_cast<double>(ms.size());
  return terms;
}

int PartyBases::resolved_reference() const {
  if (bases.empty()) throw PartyError("PartyBases: empty");
  if (referenced_index == -1) return static_cast<int>(bases.size()) - 1;
  if (referenced_index < 0 || referenced_index >= static_cast<int>(bases.size())) {
    throw PartyError("PartyBases: referenced index out of range");
  }
  return referenced_index;
}

const ProjectiveBasis& PartyBases::referenced() const {
  return bases[static_cast<std::size_t>(resolved_reference())];
}

std::vector<ProjectiveBasis> PartyBases::uncertainty() const {
  const int r = resolved_reference();
  std::vector<ProjectiveBasis> out;
  for (int i = 0; i < static_cast<int>(bases.size()); ++i) {
    if (i != r) out.push_back(bases[static_cast<std::size_t>(i)]);
  }
  return out;
}

MeasurementConfig build_config(const DensityState& rho, int system_party,
                               const std::vector<PartyBases>& setups) {
  check_setups(rho.num_parties(), setups);
  if (system_party < 0 || system_party >= rho.num_parties()) {
    throw PartyError("build_config: system party out of range");
  }
  const auto& mine = setups[static_cast<std::size_t>(system_party)];
  MeasurementConfig config{system_party, mine.referenced(), {}, mine.uncertainty()};
  for (int p : other_parties(rho.num_parties(), system_party)) {
    config.referenced_memory.emplace(p, setups[static_cast<std::size_t>(p)].referenced());
  }
  return config;
}

std::map<int, std::vector<ProjectiveBasis>> build_partners(
    const DensityState& rho, int system_party, const std::vector<PartyBases>& setups) {
  check_setups(rho.num_parties(), setups);
  std::map<int, std::vector<ProjectiveBasis>> partners;
  const auto ms = setups[static_cast<std::size_t>(system_party)].uncertainty();
  for (int p : other_parties(rho.num_parties(), system_party)) {
    std::vector<ProjectiveBasis> row;
    for (const auto& m : ms) {
      row.push_back(find_by_name(setups[static_cast<std::size_t>(p)], m.name()));
    }
    partners.emplace(p, std::move(row));
  }
  return partners;
}

DistributionProvider state_provider(const DensityState& rho) {
  return [rho](const BasisAssignment& assignment) {
    return joint_distribution(rho, assignment);
  };
}

double coherent_info_bound(const DensityState& rho, const MeasurementConfig& config,
                           const std::map<int, std::vector<ProjectiveBasis>>& partners,
                           WitnessMode mode) {
  config.check(rho);
  // express as setups so the shared bracket path applies
  std::vector<PartyBases> setups(static_cast<std::size_t>(rho.num_parties()));
  auto& mine = setups[static_cast<std::size_t>(config.system_party)];
  mine.bases = config.uncertainty_set;
  mine.bases.push_back(config.referenced_system);
  mine.referenced_index = static_cast<int>(mine.bases.size()) - 1;
  const auto memory = config.memory_parties();
  for (int p : memory) {
    auto& theirs = setups[static_cast<std::size_t>(p)];
    if (mode == WitnessMode::experimental) {
      const auto it = partners.find(p);
      if (it == partners.end() ||
          it->second.size() != config.uncertainty_set.size()) {
        throw MissingPartnerBasis("experimental mode: partner bases required on party " +
                                  rho.label(p));
      }
      for (std::size_t i = 0; i < it->second.size(); ++i) {
        // partner inherits the system basis name so name matching stays uniform
        theirs.bases.emplace_back(config.uncertainty_set[i].name(),
                                  it->second[i].vectors());
      }
    }
    theirs.bases.push_back(config.referenced_memory.at(p));
    theirs.referenced_index = static_cast<int>(theirs.bases.size()) - 1;
  }
  const auto provider = state_provider(rho);
  return bracket(&rho, provider, rho.dims(), config.system_party, setups, mode);
}

double coherent_info_bound(const DensityState& rho, int system_party,
                           const std::vector<PartyBases>& setups, WitnessMode mode) {
  const auto provider = state_provider(rho);
  return bracket(&rho, provider, rho.dims(), system_party, setups, mode);
}

double coherent_info_bound_from(const DistributionProvider& provider,
                                const std::vector<int>& dims, int system_party,
                                const std::vector<PartyBases>& setups) {
  return bracket(nullptr, provider, dims, system_party, setups,
                 WitnessMode::experimental);
}

WitnessResult tripartite_ef3_bound(const DensityState& rho,
                                   const std::vector<PartyBases>& setups,
                                   WitnessMode mode) {
  if (rho.num_parties() != 3) throw PartyError("tripartite bound needs three parties");
  const auto provider = state_provider(rho);
  WitnessResult result;
  double total = 0.0;
  for (int p = 0; p < 3; ++p) {
    const double term = bracket(&rho, provider, rho.dims(), p, setups, mode);
    result.per_party_terms.emplace(rho.label(p), term);
    total += term;
  }
  result.bound_value = total / 2.0;
  result.detected = result.bound_value > 0.0;
  result.configuration = describe(setups, mode);
  return result;
}

WitnessResult tripartite_ef3_bound_from(const DistributionProvider& provider,
                                        const std::vector<int>& dims,
                                        const std::vector<std::string>& labels,
                                        const std::vector<PartyBases>& setups) {
  if (dims.size() != 3) throw PartyError("tripartite bound needs three parties");
  WitnessResult result;
  double total = 0.0;
  for (int p = 0; p < 3; ++p) {
    const double term =
        bracket(nullptr, provider, dims, p, setups, WitnessMode::experimental);
    result.per_party_terms.emplace(labels[static_cast<std::size_t>(p)], term);
    total += term;
  }
  result.bound_value = total / 2.0;
  result.detected = result.bound_value > 0.0;
  result.configuration = describe(setups, WitnessMode::experimental);
  return result;
}

double tripartite_ef3_baseline(const DensityState& rho,
                               const std::vector<PartyBases>& setups, WitnessMode mode) {
  if (rho.num_parties() != 3) throw PartyError("tripartite baseline needs three parties");
  const auto provider = state_provider(rho);
  double total = 0.0;
  for (int p = 0; p < 3; ++p) {
    total += baseline_bracket(&rho, provider, rho.dims(), p, setups, mode);
  }
  return total / 2.0;
}

double tripartite_ef3_baseline_from(const DistributionProvider& provider,
                                    const std::vector<int>& dims,
                                    const std::vector<PartyBases>& setups) {
  if (dims.size() != 3) throw PartyError("tripartite baseline needs three parties");
  double total = 0.0;
  for (int p = 0; p < 3; ++p) {
    total += baseline_bracket(nullptr, provider, dims, p, setups,
                              WitnessMode::experimental);
  }
  return total / 2.0;
}

double coherent_info_baseline(const DensityState& rho, int system_party,
                              const std::vector<PartyBases>& setups, WitnessMode mode) {
  const auto provider = state_provider(rho);
  return baseline_bracket(&rho, provider, rho.dims(), system_party, setups, mode);
}

double gme_bound(const DensityState& rho) {
  if (rho.num_parties() != 3) throw PartyError("gme_bound needs three parties");
  double total = 0.0;
  for (int p = 0; p < 3; ++p) {
    total -= conditional_entropy(rho, p, other_parties(3, p));
  }
  const int d_max = *std::max_element(rho.dims().begin(), rho.dims().end());
  return total - 2.0 * std::log2(static_cast<double>(d_max));
}

WitnessResult gme_bound_estimated(const DensityState& rho,
                                  const std::vector<PartyBases>& setups, WitnessMode mode) {
  if (rho.num_parties() != 3) throw PartyError("gme_bound needs three parties");
  const auto provider = state_provider(rho);
  WitnessResult result;
  double total = 0.0;
  for (int p = 0; p < 3; ++p) {
    const double term = bracket(&rho, provider, rho.dims(), p, setups, mode);
    result.per_party_terms.emplace(rho.label(p), term);
    total += term;
  }
  const int d_max = *std::max_element(rho.dims().begin(), rho.dims().end());
  result.bound_value = total - 2.0 * std::log2(static_cast<double>(d_max));
  result.detected = result.bound_value > 0.0;
  result.configuration = describe(setups, mode);
  return result;
}

double mpartite_bound(const DensityState& rho) {
  if (rho.num_parties() < 2) throw PartyError("mpartite_bound needs at least two parties");
  double total = 0.0;
  for (int p = 0; p < rho.num_parties(); ++p) {
    total -= conditional_entropy(rho, p, other_parties(rho.num_parties(), p));
  }
  return total / 2.0;
}

WitnessResult mpartite_bound_estimated(const DensityState& rho,
                                       const std::vector<PartyBases>& setups,
                                       WitnessMode mode) {
  if (rho.num_parties() < 2) throw PartyError("mpartite_bound needs at least two parties");
  const auto provider = state_provider(rho);
  WitnessResult result;
  double total = 0.0;
  for (int p = 0; p < rho.num_parties(); ++p) {
    const double term = bracket(&rho, provider, rho.dims(), p, setups, mode);
    result.per_party_terms.emplace(rho.label(p), term);
    total += term;
  }
  result.bound_value = total / 2.0;
  result.detected = result.bound_value > 0.0;
  result.configuration = describe(setups, mode);
  return result;
}

}  // namespace eurw
