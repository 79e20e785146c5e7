#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eurw/scenarios.hpp"
#include "test_support.hpp"

using namespace eurw;

namespace {

std::vector<PartyBases> mirrored(int parties, std::vector<ProjectiveBasis> bases,
                                 int ref = -1) {
  PartyBases one;
  one.bases = std::move(bases);
  one.referenced_index = ref;
  return std::vector<PartyBases>(static_cast<std::size_t>(parties), one);
}

}  // namespace

TEST_CASE("Bell state certifies one ebit") {
  const auto setups = mirrored(2, {pauli_basis('x'), pauli_basis('z')});
  const DensityState bell = support::bell_state();
  CHECK(coherent_info_bound(bell, 0, setups, WitnessMode::exact) ==
        doctest::Approx(1.0));
  CHECK(coherent_info_bound(bell, 0, setups, WitnessMode::experimental) ==
        doctest::Approx(1.0));
}

TEST_CASE("maximally mixed two-qubit state is never detected") {
  const auto setups = mirrored(2, {pauli_basis('x'), pauli_basis('z')});
  const DensityState mixed(0.25 * ComplexMatrix::Identity(4, 4), {2, 2});
  CHECK(coherent_info_bound(mixed, 0, setups, WitnessMode::exact) <= 0.0);
  CHECK(coherent_info_bound(mixed, 0, setups, WitnessMode::experimental) <= 0.0);
}

TEST_CASE("random product states give nonpositive bounds") {
  Rng rng(107);
  const auto setups = mirrored(2, {pauli_basis('x'), pauli_basis('z')});
  for (int trial = 0; trial < 20; ++trial) {
    const DensityState a = random_density(rng, {2});
    const DensityState b = random_density(rng, {2});
    const DensityState prod(kron(a.matrix(), b.matrix()), {2, 2});
    CHECK(coherent_info_bound(prod, 0, setups, WitnessMode::exact) <= 1e-9);
    CHECK(coherent_info_bound(prod, 0, setups, WitnessMode::experimental) <= 1e-9);
  }
}

TEST_CASE("experimental bound never exceeds exact bound or the true quantity") {
  Rng rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityState rho = random_density(rng, {2, 2});
    const auto b1 = random_basis(rng, 2, "b1");
    const auto b2 = random_basis(rng, 2, "b2");
    const auto setups = mirrored(2, {b1, b2});
    const double experimental =
        coherent_info_bound(rho, 0, setups, WitnessMode::experimental);
    const double exact = coherent_info_bound(rho, 0, setups, WitnessMode::exact);
    CHECK(experimental <= exact + 1e-9);
    CHECK(exact <= -conditional_entropy(rho, 0, {1}) + 1e-9);
  }
}

TEST_CASE("explicit config form requires partner bases in experimental mode") {
  const DensityState bell = support::bell_state();
  MeasurementConfig config{0, pauli_basis('z'), {{1, pauli_basis('z')}},
                           {pauli_basis('x')}};
  CHECK_THROWS_AS(
      coherent_info_bound(bell, config, {}, WitnessMode::experimental),
      MissingPartnerBasis);
  const std::map<int, std::vector<ProjectiveBasis>> partners{{1, {pauli_basis('x')}}};
  CHECK(coherent_info_bound(bell, config, partners, WitnessMode::experimental) ==
        doctest::Approx(1.0));
  // exact mode works without partners
  CHECK(coherent_info_bound(bell, config, {}, WitnessMode::exact) ==
        doctest::Approx(1.0));
}

TEST_CASE("pure GHZ saturates the tripartite bound at 1.5") {
  const DensityState ghz = ghz_state();
  const auto setups = mirrored(3, {pauli_basis('x'), pauli_basis('z')});
  const auto exact = tripartite_ef3_bound(ghz, setups, WitnessMode::exact);
  const auto exper = tripartite_ef3_bound(ghz, setups, WitnessMode::experimental);
  CHECK(exact.bound_value == doctest::Approx(1.5));
  CHECK(exper.bound_value == doctest::Approx(1.5));
  for (const auto& [party, term] : exact.per_party_terms) {
    (void)party;
    CHECK(term == doctest::Approx(1.0));
  }
  CHECK(exact.detected);
}

TEST_CASE("fully mixed three-qubit state stays undetected") {
  const DensityState mixed(ComplexMatrix::Identity(8, 8) / 8.0, {2, 2, 2});
  const auto setups = mirrored(3, {pauli_basis('x'), pauli_basis('z')});
  const auto result = tripartite_ef3_bound(mixed, setups, WitnessMode::experimental);
  CHECK(result.bound_value < 0.0);
  CHECK(!result.detected);
}

TEST_CASE("tripartite threshold sits near the known crossing") {
  const auto setups = mirrored(3, {pauli_basis('x'), pauli_basis('z')});
  const double p_star =
      werner_threshold(WernerFamily::ghz, setups, WitnessMode::experimental);
  CHECK(std::abs(p_star - 0.747614) <= 1e-3);
}

TEST_CASE("tripartite bound is invariant under party relabeling") {
  Rng rng(113);
  const DensityState rho = random_density(rng, {2, 2, 2});
  const auto setups = mirrored(3, {pauli_basis('x'), pauli_basis('z')});
  const double direct =
      tripartite_ef3_bound(rho, setups, WitnessMode::experimental).bound_value;
  const double relabeled =
      tripartite_ef3_bound(permute_parties(rho, {2, 0, 1}), setups,
                           WitnessMode::experimental)
          .bound_value;
  CHECK(std::abs(direct - relabeled) <= 1e-9);
}

TEST_CASE("pure tripartite states equate the two entropy routes") {
  Rng rng(127);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityState psi = random_pure(rng, {2, 2, 2});
    const double via_conditional = mpartite_bound(psi);
    const double via_marginals = 0.5 * (von_neumann_entropy(psi.reduced({0})) +
                                        von_neumann_entropy(psi.reduced({1})) +
                                        von_neumann_entropy(psi.reduced({2})));
    CHECK(std::abs(via_conditional - via_marginals) <= 1e-9);
    const auto setups = mirrored(3, {pauli_basis('x'), pauli_basis('z')});
    CHECK(tripartite_ef3_bound(psi, setups, WitnessMode::exact).bound_value <=
          via_marginals + 1e-9);
  }
}

TEST_CASE("gme bound values") {
  CHECK(gme_bound(ghz_state()) == doctest::Approx(1.0));
  const DensityState mixed(ComplexMatrix::Identity(8, 8) / 8.0, {2, 2, 2});
  CHECK(gme_bound(mixed) == doctest::Approx(-5.0));
  const double h13 = -std::log2(1.0 / 3.0) / 3.0 - (2.0 / 3.0) * std::log2(2.0 / 3.0);
  CHECK(std::abs(gme_bound(w_state()) - (3.0 * h13 - 2.0)) <= 1e-9);
  // measured variant stays below the exact value
  const auto setups = mirrored(3, {pauli_basis('x'), pauli_basis('z')});
  CHECK(gme_bound_estimated(ghz_state(), setups, WitnessMode::exact).bound_value <=
        gme_bound(ghz_state()) + 1e-9);
}

TEST_CASE("m-partite bound") {
  // three parties: definition coincides with the tripartite exact route
  Rng rng(131);
  const DensityState rho = random_density(rng, {2, 2, 2});
  double sum = 0.0;
  for (int p = 0; p < 3; ++p) {
    std::vector<int> mem;
    for (int q = 0; q < 3; ++q) {
      if (q != p) mem.push_back(q);
    }
    sum -= conditional_entropy(rho, p, mem);
  }
  CHECK(std::abs(mpartite_bound(rho) - 0.5 * sum) <= 1e-12);

  CHECK(mpartite_bound(ghz_state(4)) == doctest::Approx(2.0));

  // fully separable pure product states stay nonpositive
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix prod = ComplexMatrix::Identity(1, 1);
    for (int p = 0; p < 3; ++p) {
      ComplexVector psi(2);
      psi << Complex(rng.normal(), rng.normal()), Complex(rng.normal(), rng.normal());
      psi /= psi.norm();
      prod = kron(prod, psi * psi.adjoint());
    }
    CHECK(mpartite_bound(DensityState(prod, {2, 2, 2})) <= 1e-9);
  }
}

TEST_CASE("detection requires a strictly positive bound") {
  Rng rng(137);
  const DensityState sep = random_separable(rng, {2, 2, 2});
  const auto setups = mirrored(3, {pauli_basis('x'), pauli_basis('z')});
  const auto result = tripartite_ef3_bound(sep, setups, WitnessMode::experimental);
  CHECK(result.bound_value <= 1e-9);
  CHECK(!result.detected);
}

TEST_CASE("referenced-basis policy resolves the last basis by default") {
  PartyBases setup;
  setup.bases = {pauli_basis('x'), pauli_basis('z')};
  CHECK(setup.resolved_reference() == 1);
  CHECK(setup.referenced().name() == "z");
  CHECK(setup.uncertainty().size() == 1);
  CHECK(setup.uncertainty()[0].name() == "x");
  setup.referenced_index = 0;
  CHECK(setup.referenced().name() == "x");
  setup.referenced_index = 5;
  CHECK_THROWS_AS(setup.referenced(), PartyError);
}
