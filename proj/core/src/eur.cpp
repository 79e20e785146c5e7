#include "eurw/eur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace eurw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Joint table of (one system basis, the referenced memory bases): rows index
/// the system outcome, columns the flattened memory outcome. Parties outside
/// system ∪ memory are marginalized out.
RealMatrix system_memory_table(const DensityState& rho, const MeasurementConfig& config,
                               const ProjectiveBasis& system_basis) {
  BasisAssignment assign;
  assign.emplace(config.system_party, system_basis);
  for (const auto& [party, basis] : config.referenced_memory) assign.emplace(party, basis);
  for (int party = 0; party < rho.num_parties(); ++party) {
    if (!assign.count(party)) {
      assign.emplace(party, ProjectiveBasis("computational",
                                            ComplexMatrix::Identity(rho.party_dim(party),
                                                                    rho.party_dim(party))));
    }
  }
  return grouped_table(joint_distribution(rho, assign), config.system_party,
                       config.memory_parties());
}

/// β vectors per memory outcome for a given order. beta.col(y) holds β_{e,y};
/// columns with p(y)=0 stay zero and are skipped by the caller.
RealMatrix beta_table(const ChainTables& ws, const ChainOrder& order) {
  const RealMatrix& first = ws.tables[static_cast<std::size_t>(order.front())];
  RealMatrix beta = RealMatrix::Zero(first.rows(), first.cols());
  for (int y = 0; y < first.cols(); ++y) {
    const double p_y = first.col(y).sum();
    if (p_y <= 0.0) continue;
    RealVector v = first.col(y) / p_y;  // p_{e_1|y}
    for (std::size_t step = 0; step + 1 < order.size(); ++step) {
      v = ws.overlap[static_cast<std::size_t>(order[step])]
                    [static_cast<std::size_t>(order[step + 1])]
              .transpose() *
          v;
    }
    beta.col(y) = v;
  }
  return beta;
}

void check_order(const ChainOrder& order, int chain_size) {
  if (static_cast<int>(order.size()) != chain_size) {
    throw DimensionMismatch("chain order length != N+1");
  }
  std::vector<bool> seen(static_cast<std::size_t>(chain_size), false);
  for (int o : order) {
    if (o < 0 || o >= chain_size || seen[static_cast<std::size_t>(o)]) {
      throw DimensionMismatch("chain order is not a permutation");
    }
    seen[static_cast<std::size_t>(o)] = true;
  }
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

const ProjectiveBasis& MeasurementConfig::chain_basis(int index) const {
  if (index == 0) return referenced_system;
  return uncertainty_set.at(static_cast<std::size_t>(index - 1));
}

std::vector<int> MeasurementConfig::memory_parties() const {
  std::vector<int> out;
  for (const auto& [party, basis] : referenced_memory) {
    (void)basis;
    out.push_back(party);
  }
  return out;  // std::map iterates keys in ascending order
}

void MeasurementConfig::check(const DensityState& rho) const {
  if (system_party < 0 || system_party >= rho.num_parties()) {
    throw PartyError("config: system party out of range");
  }
  if (referenced_memory.empty()) throw PartyError("config: no memory party");
  if (uncertainty_set.empty()) throw PartyError("config: empty uncertainty set");
  const int d_a = rho.party_dim(system_party);
  if (referenced_system.dim() != d_a) {
    throw DimensionMismatch("config: referenced system basis dimension");
  }
  for (const auto& b : uncertainty_set) {
    if (b.dim() != d_a) throw DimensionMismatch("config: uncertainty basis dimension");
  }
  for (const auto& [party, basis] : referenced_memory) {
    if (party == system_party) throw PartyError("config: system party used as memory");
    if (party < 0 || party >= rho.num_parties()) {
      throw PartyError("config: memory party out of range");
    }
    if (basis.dim() != rho.party_dim(party)) {
      throw DimensionMismatch("config: referenced memory basis dimension");
    }
  }
}

std::string order_to_string(const ChainOrder& order) {
  std::string s;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(order[i]);
  }
  return s;
}

ChainTables make_chain_tables(const DensityState& rho, const MeasurementConfig& config) {
  config.check(rho);
  ChainTables ws;
  const int k = config.chain_size();
  ws.tables.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    ws.tables.push_back(system_memory_table(rho, config, config.chain_basis(i)));
  }
  ws.overlap.assign(static_cast<std::size_t>(k), std::vector<OverlapMatrix>(static_cast<std::size_t>(k)));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j) {
        ws.overlap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            overlaps(config.chain_basis(i), config.chain_basis(j));
      }
    }
  }
  return ws;
}

double chain_factor_from_tables(const ChainTables& ws, const ChainOrder& order) {
  check_order(order, static_cast<int>(ws.tables.size()));
  const RealMatrix beta = beta_table(ws, order);
  const RealMatrix& last = ws.tables[static_cast<std::size_t>(order.back())];
  double q = 0.0;
  for (int y = 0; y < last.cols(); ++y) {
    for (int e = 0; e < last.rows(); ++e) {
      const double p = last(e, y);
      if (p <= 0.0) continue;
      if (beta(e, y) <= 0.0) return kInf;  // vacuous bound, flagged by the caller
      q -= p * std::log2(beta(e, y));
    }
  }
  return q;
}

OptimalFactor optimal_factor_from_tables(const ChainTables& ws,
                                         std::uint64_t enumeration_cap) {
  const int k = static_cast<int>(ws.tables.size());
  if (factorial(k) > enumeration_cap) {
    throw CapExceeded("optimal_factor: (N+1)! exceeds the enumeration cap");
  }
  ChainOrder order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  OptimalFactor best{-kInf, {}};
  do {
    const double q = chain_factor_from_tables(ws, order);
    if (q > best.q_m) best = {q, order};  // strict >: lexicographically first order wins ties
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

double chain_factor(const DensityState& rho, const ChainOrder& order,
                    const MeasurementConfig& config) {
  return chain_factor_from_tables(make_chain_tables(rho, config), order);
}

OptimalFactor optimal_factor(const DensityState& rho, const MeasurementConfig& config,
                             std::uint64_t enumeration_cap) {
  return optimal_factor_from_tables(make_chain_tables(rho, config), enumeration_cap);
}

double uncertainty_lhs(const DensityState& rho, const MeasurementConfig& config) {
  config.check(rho);
  const auto memory = config.memory_parties();
  double lhs = 0.0;
  for (const auto& m : config.uncertainty_set) {
    lhs += post_measurement_conditional_entropy(rho, config.system_party, m, memory);
  }
  return lhs + table_conditional_entropy(
                   system_memory_table(rho, config, config.referenced_system));
}

namespace {

double rhs_with_order(const DensityState& rho, const MeasurementConfig& config,
                      bool referenced_last) {
  config.check(rho);
  const int n = static_cast<int>(config.uncertainty_set.size());
  ChainOrder order(static_cast<std::size_t>(n) + 1);
  if (!referenced_last) {
    std::iota(order.begin(), order.end(), 0);  // X, M_1, ..., M_N
  } else {
    std::iota(order.begin(), order.end() - 1, 1);  // M_1, ..., M_N, X
    order.back() = 0;
  }
  const double q = chain_factor(rho, order, config);
  const double s = conditional_entropy(rho, config.system_party, config.memory_parties());
  return n * s + q;
}

}  // namespace

double theorem1_rhs(const DensityState& rho, const MeasurementConfig& config) {
  return rhs_with_order(rho, config, false);
}

double corollary1_rhs(const DensityState& rho, const MeasurementConfig& config) {
  return rhs_with_order(rho, config, true);
}

double theorem2_rhs(const DensityState& rho, const MeasurementConfig& config) {
  const double s = conditional_entropy(rho, config.system_party, config.memory_parties());
  const int n = static_cast<int>(config.uncertainty_set.size());
  return n * s + optimal_factor(rho, config).q_m;
}

double state_independent_c(const ProjectiveBasis& b1, const ProjectiveBasis& b2) {
  return -std::log2(overlaps(b1, b2).maxCoeff());
}

double state_independent_b(const std::vector<ProjectiveBasis>& ordered_bases) {
  if (ordered_bases.size() < 2) {
    throw DimensionMismatch("state_independent_b: need at least two bases");
  }
  const int k = static_cast<int>(ordered_bases.size());
  RealVector w = overlaps(ordered_bases[0], ordered_bases[1]).colwise().maxCoeff();
  for (int m = 1; m + 1 < k; ++m) {
    w = overlaps(ordered_bases[static_cast<std::size_t>(m)],
                 ordered_bases[static_cast<std::size_t>(m + 1)])
            .transpose() *
        w;
  }
  return -std::log2(w.maxCoeff());
}

double state_independent_b_best(const std::vector<ProjectiveBasis>& bases) {
  if (bases.size() < 2) {
    throw DimensionMismatch("state_independent_b_best: need at least two bases");
  }
  std::vector<int> order(bases.size());
  std::iota(order.begin(), order.end(), 0);
  double best = -kInf;
  do {
    std::vector<ProjectiveBasis> arranged;
    arranged.reserve(bases.size());
    for (int i : order) arranged.push_back(bases[static_cast<std::size_t>(i)]);
    best = std::max(best, state_independent_b(arranged));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

Lemma1Report verify_lemma1(const DensityState& rho, const MeasurementConfig& config) {
  config.check(rho);
  const int n = static_cast<int>(config.uncertainty_set.size());
  const auto memory = config.memory_parties();

  const double s_rho = von_neumann_entropy(rho);
  const double lhs = uncertainty_lhs(rho, config) -
                     n * conditional_entropy(rho, config.system_party, memory) - s_rho;

  // σ = Σ_{m_N, y} β_{m_N y} |M_N⟩⟨M_N| ⊗ Π_mem |y⟩⟨y|, assembled in party order.
  const ChainTables ws = make_chain_tables(rho, config);
  ChainOrder identity(static_cast<std::size_t>(config.chain_size()));
  std::iota(identity.begin(), identity.end(), 0);
  const RealMatrix beta = beta_table(ws, identity);
  const RealMatrix& p_last = ws.tables[static_cast<std::size_t>(identity.back())];
  const ProjectiveBasis& last_basis = config.chain_basis(identity.back());

  std::vector<int> mem_dims;
  for (int party : memory) mem_dims.push_back(rho.party_dim(party));

  ComplexMatrix sigma = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (int e = 0; e < beta.rows(); ++e) {
    for (int y = 0; y < beta.cols(); ++y) {
      if (beta(e, y) == 0.0) continue;
      // memory outcome y decomposes over the sorted memory parties
      std::vector<int> mem_idx(mem_dims.size());
      int rest = y;
      for (int k = static_cast<int>(mem_dims.size()) - 1; k >= 0; --k) {
        mem_idx[static_cast<std::size_t>(k)] = rest % mem_dims[static_cast<std::size_t>(k)];
        rest /= mem_dims[static_cast<std::size_t>(k)];
      }
      ComplexMatrix proj = ComplexMatrix::Identity(1, 1);
      for (int party = 0; party < rho.num_parties(); ++party) {
        const int d = rho.party_dim(party);
        if (party == config.system_party) {
          const ComplexVector v = last_basis.vector(e);
          proj = kron(proj, v * v.adjoint());
        } else {
          const auto it = std::find(memory.begin(), memory.end(), party);
          if (it == memory.end()) {
            proj = kron(proj, ComplexMatrix::Identity(d, d));
          } else {
            const auto& mb = config.referenced_memory.at(party);
            const ComplexVector v =
                mb.vector(mem_idx[static_cast<std::size_t>(it - memory.begin())]);
            proj = kron(proj, v * v.adjoint());
          }
        }
      }
      sigma += beta(e, y) * proj;
    }
  }

  const double rel = relative_entropy(rho.matrix(), sigma);

  double beta_side = -s_rho;
  bool infinite = std::isinf(rel);
  for (int y = 0; y < p_last.cols() && !std::isinf(beta_side); ++y) {
    for (int e = 0; e < p_last.rows(); ++e) {
      const double p = p_last(e, y);
      if (p <= 0.0) continue;
      if (beta(e, y) <= 0.0) {
        infinite = true;
        beta_side = kInf;
        break;
      }
      beta_side -= p * std::log2(beta(e, y));
    }
  }
  return {lhs, rel, beta_side, infinite};
}

BoundReport evaluate_relation(const DensityState& rho, const MeasurementConfig& config,
                              std::uint64_t enumeration_cap) {
  config.check(rho);
  const int k = config.chain_size();
  if (factorial(k) > enumeration_cap) {
    throw CapExceeded("evaluate_relation: (N+1)! exceeds the enumeration cap");
  }
  const ChainTables ws = make_chain_tables(rho, config);
  const int n = static_cast<int>(config.uncertainty_set.size());
  const double s = conditional_entropy(rho, config.system_party, config.memory_parties());

  BoundReport report;
  report.lhs = uncertainty_lhs(rho, config);
  report.conditional_entropy_term = s;
  report.q_m = -kInf;
  ChainOrder order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  do {
    const double q = chain_factor_from_tables(ws, order);
    report.q_per_order.emplace(order_to_string(order), q);
    if (q > report.q_m) {
      report.q_m = q;
      report.best_order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  report.rhs_state_dependent = n * s + report.q_m;

  std::vector<ProjectiveBasis> all;
  for (int i = 0; i < k; ++i) all.push_back(config.chain_basis(i));
  report.rhs_state_independent = n * s + state_independent_b_best(all);
  return report;
}

}  // namespace eurw
