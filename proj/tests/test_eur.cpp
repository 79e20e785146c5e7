#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eurw/scenarios.hpp"
#include "test_support.hpp"

using namespace eurw;
using support::oracle_chain_factor;

namespace {

MeasurementConfig two_qubit_config(const ProjectiveBasis& x,
                                   std::vector<ProjectiveBasis> ms,
                                   const ProjectiveBasis& y) {
  return MeasurementConfig{0, x, {{1, y}}, std::move(ms)};
}

}  // namespace

TEST_CASE("identical bases collapse the chain to H(X|Y) for every order") {
  Rng rng(61);
  const auto z = pauli_basis('z');
  const DensityState rho = random_density(rng, {2, 2});
  const auto config = two_qubit_config(z, {z, z}, pauli_basis('z'));
  const auto dist = joint_distribution(rho, {{0, z}, {1, z}});
  const double h = classical_conditional_entropy(dist, {0}, {1});
  for (const auto& order : support::all_permutations(3)) {
    CHECK(std::abs(chain_factor(rho, order, config) - h) <= 1e-10);
  }
}

TEST_CASE("maximally mixed system gives q = log2(d) for any order") {
  Rng rng(67);
  const DensityState rho_b = random_density(rng, {2});
  const DensityState rho(kron(0.5 * ComplexMatrix::Identity(2, 2), rho_b.matrix()),
                         {2, 2});
  const auto config = two_qubit_config(random_basis(rng, 2, "X"),
                                       {random_basis(rng, 2, "M1"), random_basis(rng, 2, "M2")},
                                       random_basis(rng, 2, "Y"));
  for (const auto& order : support::all_permutations(3)) {
    CHECK(std::abs(chain_factor(rho, order, config) - 1.0) <= 1e-10);
  }
}

TEST_CASE("transfer-matrix chain equals the brute-force nested sum") {
  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityState rho = random_density(rng, {2, 2});
    const ProjectiveBasis x = random_basis(rng, 2, "X");
    const ProjectiveBasis m1 = random_basis(rng, 2, "M1");
    const ProjectiveBasis m2 = random_basis(rng, 2, "M2");
    const ProjectiveBasis y = random_basis(rng, 2, "Y");
    const auto config = two_qubit_config(x, {m1, m2}, y);
    for (const auto& order : support::all_permutations(3)) {
      std::vector<ProjectiveBasis> chain;
      for (int idx : order) chain.push_back(config.chain_basis(idx));
      const double fast = chain_factor(rho, order, config);
      const double slow = oracle_chain_factor(rho, chain, {y});
      CHECK(std::abs(fast - slow) <= 1e-10);
    }
  }
}

TEST_CASE("optimal factor dominates every order and breaks ties lexicographically") {
  const auto z = pauli_basis('z');
  const DensityState rho = werner_state({WernerFamily::ghz, 0.9});
  // bipartite view: A vs B with C ignored happens via the memory marginal
  MeasurementConfig config{0, z, {{1, z}, {2, z}}, {pauli_basis('x')}};
  const auto best = optimal_factor(rho, config);
  const double q1 = theorem1_rhs(rho, config) - conditional_entropy(rho, 0, {1, 2});
  const double q2 = corollary1_rhs(rho, config) - conditional_entropy(rho, 0, {1, 2});
  CHECK(best.q_m >= q1 - 1e-12);
  CHECK(best.q_m >= q2 - 1e-12);

  // all-identical bases: every order ties, so the identity order must win
  MeasurementConfig tie{0, z, {{1, z}, {2, z}}, {pauli_basis('z')}};
  const auto tied = optimal_factor(rho, tie);
  CHECK(tied.best_order == ChainOrder{0, 1});

  CHECK_THROWS_AS(optimal_factor(rho, config, 1), CapExceeded);
}

TEST_CASE("exhaustive enumeration matches an independent permutation generator") {
  Rng rng(73);
  const DensityState rho = random_density(rng, {3, 3});
  MeasurementConfig config{0,
                           random_basis(rng, 3, "X"),
                           {{1, random_basis(rng, 3, "Y")}},
                           {random_basis(rng, 3, "M1"), random_basis(rng, 3, "M2")}};
  const auto best = optimal_factor(rho, config);
  double independent_max = -1e300;
  for (const auto& order : support::all_permutations(3)) {
    independent_max = std::max(independent_max, chain_factor(rho, order, config));
  }
  CHECK(std::abs(best.q_m - independent_max) <= 1e-12);
}

TEST_CASE("uncertainty relation left-hand sides") {
  const auto z = pauli_basis('z');
  const auto x = pauli_basis('x');

  const DensityState mixed(0.25 * ComplexMatrix::Identity(4, 4), {2, 2});
  CHECK(std::abs(uncertainty_lhs(mixed, two_qubit_config(z, {x}, z)) - 2.0) <= 1e-10);

  CHECK(std::abs(uncertainty_lhs(support::bell_state(), two_qubit_config(z, {x}, z))) <=
        1e-10);

  // pure product state pointing along z
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = 1.0;
  const DensityState prod = DensityState::pure(psi, {2, 2});
  CHECK(std::abs(uncertainty_lhs(prod, two_qubit_config(z, {z}, z))) <= 1e-10);
}

TEST_CASE("relation holds on random instances and the optimum dominates") {
  Rng rng(79);
  for (int trial = 0; trial < 50; ++trial) {
    const int d_a = 2 + rng.below(2);
    const int n = 1 + rng.below(3);
    const DensityState rho = random_density(rng, {d_a, 2});
    std::vector<ProjectiveBasis> ms;
    for (int i = 0; i < n; ++i) ms.push_back(random_basis(rng, d_a, "M"));
    MeasurementConfig config{0, random_basis(rng, d_a, "X"),
                             {{1, random_basis(rng, 2, "Y")}}, ms};
    const BoundReport report = evaluate_relation(rho, config);
    for (const auto& [name, q] : report.q_per_order) {
      (void)name;
      CHECK(report.lhs + 1e-9 >=
            n * report.conditional_entropy_term + q);
      CHECK(report.q_m >= q - 1e-12);
    }
    CHECK(report.rhs_state_dependent >= report.rhs_state_independent - 1e-9);
    CHECK(theorem2_rhs(rho, config) >=
          std::max(theorem1_rhs(rho, config), corollary1_rhs(rho, config)) - 1e-12);
  }
}

TEST_CASE("identical-basis relation reduces to S(X|B) >= S(A|B)") {
  Rng rng(83);
  const auto z = pauli_basis('z');
  for (int trial = 0; trial < 10; ++trial) {
    const DensityState rho = random_density(rng, {2, 2});
    const auto config = two_qubit_config(z, {z}, pauli_basis('z'));
    const double slack = post_measurement_conditional_entropy(rho, 0, z, {1}) -
                         conditional_entropy(rho, 0, {1});
    CHECK(slack >= -1e-9);
    CHECK(uncertainty_lhs(rho, config) - theorem1_rhs(rho, config) >= -1e-9);
  }
}

TEST_CASE("state-independent constants") {
  const auto z = pauli_basis('z');
  const auto x = pauli_basis('x');
  const auto y = pauli_basis('y');
  const auto r = rotated_basis(M_PI / 8.0);

  CHECK(state_independent_c(z, x) == doctest::Approx(1.0));
  CHECK(state_independent_c(z, z) == doctest::Approx(0.0));
  CHECK(std::abs(state_independent_c(z, r) +
                 std::log2(std::cos(M_PI / 8.0) * std::cos(M_PI / 8.0))) <= 1e-12);

  // three qubit MUBs: b = 1/2 exactly
  CHECK(state_independent_b({x, y, z}) == doctest::Approx(1.0));
  CHECK(state_independent_b_best({x, y, z}) == doctest::Approx(1.0));
  // two bases: b coincides with c
  CHECK(state_independent_b({z, r}) == doctest::Approx(state_independent_c(z, r)));
  // best-over-orders dominates the listed order
  Rng rng(89);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<ProjectiveBasis> bases{random_basis(rng, 2, "a"),
                                       random_basis(rng, 2, "b"),
                                       random_basis(rng, 2, "c")};
    CHECK(state_independent_b_best(bases) >= state_independent_b(bases) - 1e-12);
  }
  CHECK_THROWS_AS(state_independent_b({z}), DimensionMismatch);
}

TEST_CASE("MUB chains are order-independent") {
  Rng rng(97);
  const auto x = pauli_basis('x');
  const auto y = pauli_basis('y');
  const auto z = pauli_basis('z');
  for (int trial = 0; trial < 5; ++trial) {
    const DensityState rho = random_density(rng, {2, 2});
    const auto config = two_qubit_config(x, {y, z}, random_basis(rng, 2, "Y"));
    double lo = 1e300, hi = -1e300;
    for (const auto& order : support::all_permutations(3)) {
      const double q = chain_factor(rho, order, config);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    CHECK(hi - lo <= 1e-10);
    CHECK(std::abs(hi - 1.0) <= 1e-10);
  }
}

TEST_CASE("dual-path evaluation agrees on random instances") {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityState rho = random_density(rng, {2, 2});
    const auto config =
        two_qubit_config(random_basis(rng, 2, "X"), {random_basis(rng, 2, "M1")},
                         random_basis(rng, 2, "Y"));
    const Lemma1Report report = verify_lemma1(rho, config);
    REQUIRE(!report.infinite);
    CHECK(report.inequality_slack() >= -1e-9);
    CHECK(std::abs(report.identity_residual()) <= 1e-9);
  }
}

TEST_CASE("dual-path evaluation on the Bell state with aligned bases is exact") {
  const auto z = pauli_basis('z');
  const auto config = two_qubit_config(z, {pauli_basis('z')}, pauli_basis('z'));
  const Lemma1Report report = verify_lemma1(support::bell_state(), config);
  REQUIRE(!report.infinite);
  CHECK(std::abs(report.identity_residual()) <= 1e-10);
  CHECK(report.inequality_slack() >= -1e-10);
}

TEST_CASE("dual-path evaluation on a Schmidt-aligned pure product state") {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = 1.0;
  const DensityState rho = DensityState::pure(psi, {2, 2});
  const auto z = pauli_basis('z');
  const auto config = two_qubit_config(z, {pauli_basis('z')}, pauli_basis('z'));
  const Lemma1Report report = verify_lemma1(rho, config);
  CHECK(std::isfinite(report.relative_entropy_side));
  CHECK(report.inequality_slack() >= -1e-10);
}

TEST_CASE("a vanishing beta against positive mass flags an infinite factor") {
  // inconsistent tables (as arise from finite sampling): the first table has
  // support only on outcome 0 while the last table puts mass on outcome 1
  ChainTables ws;
  RealMatrix first(2, 1), last(2, 1);
  first << 1.0, 0.0;
  last << 0.5, 0.5;
  ws.tables = {first, last};
  ws.overlap.assign(2, std::vector<OverlapMatrix>(2));
  ws.overlap[0][1] = RealMatrix::Identity(2, 2);
  ws.overlap[1][0] = RealMatrix::Identity(2, 2);
  CHECK(std::isinf(chain_factor_from_tables(ws, {0, 1})));
  const auto best = optimal_factor_from_tables(ws);
  CHECK(std::isinf(best.q_m));
}

TEST_CASE("config validation catches bad setups") {
  Rng rng(103);
  const DensityState rho = random_density(rng, {2, 2});
  const auto z = pauli_basis('z');
  MeasurementConfig no_memory{0, z, {}, {z}};
  CHECK_THROWS_AS(uncertainty_lhs(rho, no_memory), PartyError);
  MeasurementConfig wrong_dim{0, z, {{1, z}}, {random_basis(rng, 3, "M")}};
  CHECK_THROWS_AS(uncertainty_lhs(rho, wrong_dim), DimensionMismatch);
  MeasurementConfig bad_order{0, z, {{1, z}}, {pauli_basis('x')}};
  CHECK_THROWS_AS(chain_factor(rho, {0, 0}, bad_order), DimensionMismatch);
}
