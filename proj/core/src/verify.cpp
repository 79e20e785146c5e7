#include <cmath>
#include <cstdio>

#include "eurw/random.hpp"
#include "eurw/runner.hpp"
#include "eurw/scenarios.hpp"
#include "eurw/witness.hpp"

// Random-instance sweep over the uncertainty relations and their supporting
// identities. One failure message per violated check, with enough context to
// reproduce (trial index + seed).

namespace eurw {

namespace {

constexpr double kSlack = 1e-9;

struct Checker {
  VerifyReport& report;
  int trial;

  void expect(bool ok, const char* what, double value) {
    ++report.checks;
    if (!ok) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "trial %d: %s (value %.3e)", trial, what, value);
      report.failures.emplace_back(buf);
    }
  }
};

MeasurementConfig random_config(Rng& rng, const DensityState& rho, int n_uncertainty) {
  const int d_a = rho.party_dim(0);
  MeasurementConfig config{0, random_basis(rng, d_a, "X"), {}, {}};
  for (int p = 1; p < rho.num_parties(); ++p) {
    config.referenced_memory.emplace(
        p, random_basis(rng, rho.party_dim(p), "Y" + std::to_string(p)));
  }
  for (int i = 0; i < n_uncertainty; ++i) {
    config.uncertainty_set.push_back(random_basis(rng, d_a, "M" + std::to_string(i + 1)));
  }
  return config;
}

}  // namespace

VerifyReport run_property_suite(const VerifyOptions& options) {
  Rng rng(options.seed);
  VerifyReport report;
  report.trials = options.trials;

  for (int trial = 0; trial < options.trials; ++trial) {
    Checker check{report, trial};

    // system dimension 2 or 3; memory one party of dim 2..4 or two qubits
    const int d_a = 2 + rng.below(2);
    std::vector<int> dims;
    if (rng.below(3) == 0) {
      dims = {d_a, 2, 2};
    } else {
      dims = {d_a, 2 + rng.below(3)};
    }
    const int n = 1 + rng.below(3);

    const DensityState rho = random_density(rng, dims);
    const MeasurementConfig config = random_config(rng, rho, n);
    const double s_cond = conditional_entropy(rho, 0, config.memory_parties());

    const BoundReport bounds = evaluate_relation(rho, config);
    for (const auto& [order, q] : bounds.q_per_order) {
      (void)order;
      check.expect(bounds.lhs + kSlack >= n * s_cond + q,
                   "uncertainty relation violated for an order",
                   bounds.lhs - n * s_cond - q);
      check.expect(bounds.q_m + kSlack >= q, "maximum below a member", bounds.q_m - q);
    }
    check.expect(bounds.rhs_state_dependent + kSlack >= bounds.rhs_state_independent,
                 "state-dependent rhs below state-independent rhs",
                 bounds.rhs_state_dependent - bounds.rhs_state_independent);
    check.expect(bounds.lhs + kSlack >= theorem1_rhs(rho, config),
                 "X-first relation violated", bounds.lhs - theorem1_rhs(rho, config));
    check.expect(bounds.lhs + kSlack >= corollary1_rhs(rho, config),
                 "X-last relation violated", bounds.lhs - corollary1_rhs(rho, config));

    const Lemma1Report lemma = verify_lemma1(rho, config);
    if (!lemma.infinite) {
      check.expect(lemma.inequality_slack() >= -kSlack, "relative-entropy bound violated",
                   lemma.inequality_slack());
      check.expect(std::abs(lemma.identity_residual()) <= kSlack,
                   "dual-path identity residual", lemma.identity_residual());
    }

    // data processing: measuring the memory cannot reduce conditional entropy
    {
      const auto& m1 = config.uncertainty_set.front();
      const double s_q = post_measurement_conditional_entropy(rho, 0, m1,
                                                              config.memory_parties());
      BasisAssignment assign;
      assign.emplace(0, m1);
      for (int p : config.memory_parties()) {
        assign.emplace(p, random_basis(rng, rho.party_dim(p), "partner"));
      }
      const double h =
          table_conditional_entropy(grouped_table(joint_distribution(rho, assign), 0,
                                                  config.memory_parties()));
      check.expect(h + kSlack >= s_q, "data processing violated", h - s_q);
    }

    // dephasing: entropy never decreases, statistics unchanged, idempotent
    {
      const ProjectiveBasis basis = random_basis(rng, rho.party_dim(0), "D");
      const DensityState deph = dephase(rho, {{0, basis}});
      check.expect(von_neumann_entropy(deph) + kSlack >= von_neumann_entropy(rho),
                   "dephasing reduced entropy",
                   von_neumann_entropy(deph) - von_neumann_entropy(rho));
      const DensityState twice = dephase(deph, {{0, basis}});
      check.expect(
          (twice.matrix() - deph.matrix()).cwiseAbs().maxCoeff() <= 1e-12,
          "dephasing not idempotent",
          (twice.matrix() - deph.matrix()).cwiseAbs().maxCoeff());

      BasisAssignment all;
      for (int p = 0; p < rho.num_parties(); ++p) {
        all.emplace(p, p == 0 ? basis
                              : ProjectiveBasis("c", ComplexMatrix::Identity(
                                                         rho.party_dim(p),
                                                         rho.party_dim(p))));
      }
      const auto before = joint_distribution(rho, all);
      const auto after = joint_distribution(deph, all);
      double max_diff = 0.0;
      for (std::size_t i = 0; i < before.probabilities.size(); ++i) {
        max_diff = std::max(max_diff,
                            std::abs(before.probabilities[i] - after.probabilities[i]));
      }
      check.expect(max_diff <= 1e-12, "dephasing changed its own statistics", max_diff);

      // relative-entropy contraction under the same channel
      const DensityState sigma = random_density(rng, dims);
      const DensityState sigma_deph = dephase(sigma, {{0, basis}});
      const double before_re = relative_entropy(rho.matrix(), sigma.matrix());
      const double after_re = relative_entropy(deph.matrix(), sigma_deph.matrix());
      if (std::isfinite(before_re)) {
        check.expect(after_re <= before_re + kSlack, "relative entropy expanded",
                     after_re - before_re);
      }
    }

    // no false positives on separable states
    if (trial % 3 == 0) {
      const DensityState sep2 = random_separable(rng, {2, 2});
      std::vector<PartyBases> setups2(2);
      for (auto& s : setups2) {
        s.bases = {pauli_basis('x'), pauli_basis('z')};
      }
      check.expect(coherent_info_bound(sep2, 0, setups2, WitnessMode::exact) <= kSlack,
                   "separable bipartite detected (exact)",
                   coherent_info_bound(sep2, 0, setups2, WitnessMode::exact));
      check.expect(
          coherent_info_bound(sep2, 0, setups2, WitnessMode::experimental) <= kSlack,
          "separable bipartite detected (experimental)",
          coherent_info_bound(sep2, 0, setups2, WitnessMode::experimental));

      const DensityState sep3 = random_separable(rng, {2, 2, 2});
      std::vector<PartyBases> setups3(3);
      for (auto& s : setups3) {
        s.bases = {pauli_basis('x'), pauli_basis('z')};
      }
      const double w3 =
          tripartite_ef3_bound(sep3, setups3, WitnessMode::experimental).bound_value;
      check.expect(w3 <= kSlack, "separable tripartite detected", w3);
    }
  }
  return report;
}

}  // namespace eurw
