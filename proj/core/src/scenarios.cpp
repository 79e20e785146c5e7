#include "eurw/scenarios.hpp"

#include <cmath>
#include <cstdio>

namespace eurw {

ComplexMatrix hopping_matrix(int sites, double hopping) {
  if (sites < 2) throw DimensionMismatch("hopping_matrix: need at least two sites");
  ComplexMatrix h = ComplexMatrix::Zero(sites, sites);
  for (int i = 0; i + 1 < sites; ++i) {
    h(i, i + 1) = -hopping;
    h(i + 1, i) = -hopping;
  }
  return h;
}

ComplexMatrix hubbard_hamiltonian(const HubbardSpec& spec) {
  const int l = spec.sites;
  const ComplexMatrix h1 = hopping_matrix(l, spec.hopping);
  const ComplexMatrix eye = ComplexMatrix::Identity(l, l);
  ComplexMatrix h = kron(h1, eye) + kron(eye, h1);
  for (int i = 0; i < l; ++i) {
    h(i * l + i, i * l + i) += spec.interaction;  // double occupancy |i⟩_A|i⟩_B
  }
  return h;
}

GroundState ground_state(const ComplexMatrix& hamiltonian, std::vector<int> dims,
                         std::vector<std::string> labels) {
  const auto es = eigh(hamiltonian);
  const double e0 = es.values(0);
  int cluster = 1;
  while (cluster < es.values.size() && es.values(cluster) - e0 <= tol::degeneracy) {
    ++cluster;
  }
  ComplexMatrix rho = ComplexMatrix::Zero(hamiltonian.rows(), hamiltonian.cols());
  for (int i = 0; i < cluster; ++i) {
    rho += es.vectors.col(i) * es.vectors.col(i).adjoint();
  }
  rho /= static_cast<double>(cluster);
  return {DensityState(std::move(rho), std::move(dims), std::move(labels)), cluster > 1,
          e0};
}

ProjectiveBasis site_basis(int sites) {
  return ProjectiveBasis("site", ComplexMatrix::Identity(sites, sites));
}

ProjectiveBasis tilted_basis(int sites, double time) {
  const auto es = eigh(hopping_matrix(sites, 1.0));
  ComplexMatrix phase = ComplexMatrix::Zero(sites, sites);
  for (int i = 0; i < sites; ++i) {
    phase(i, i) = std::exp(Complex(0.0, time * es.values(i)));
  }
  char label[48];
  std::snprintf(label, sizeof(label), "tilted@%.6f", time);
  return ProjectiveBasis(label, es.vectors * phase * es.vectors.adjoint());
}

DensityState ghz_state(int parties) {
  if (parties < 2) throw PartyError("ghz_state: need at least two parties");
  const int dim = 1 << parties;
  ComplexVector psi = ComplexVector::Zero(dim);
  psi(0) = psi(dim - 1) = 1.0 / std::sqrt(2.0);
  return DensityState::pure(psi, std::vector<int>(static_cast<std::size_t>(parties), 2));
}

DensityState w_state() {
  ComplexVector psi = ComplexVector::Zero(8);
  psi(1) = psi(2) = psi(4) = 1.0 / std::sqrt(3.0);  // |001⟩, |010⟩, |100⟩
  return DensityState::pure(psi, {2, 2, 2});
}

DensityState werner_state(const WernerSpec& spec) {
  if (spec.p < 0.0 || spec.p > 1.0) throw InvalidState("werner_state: p outside [0, 1]");
  const DensityState pure_part =
      spec.family == WernerFamily::ghz ? ghz_state(3) : w_state();
  ComplexMatrix rho = spec.p * pure_part.matrix() +
                      (1.0 - spec.p) / 8.0 * ComplexMatrix::Identity(8, 8);
  return DensityState(std::move(rho), {2, 2, 2});
}

ProjectiveBasis pauli_basis(char axis) {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix v(2, 2);
  switch (axis) {
    case 'x':
      v << s, s, s, -s;
      return ProjectiveBasis("x", v);
    case 'y':
      v << s, s, Complex(0, s), Complex(0, -s);
      return ProjectiveBasis("y", v);
    case 'z':
      v << 1, 0, 0, 1;
      return ProjectiveBasis("z", v);
    default:
      throw ConfigError(std::string("pauli_basis: unknown axis '") + axis + "'");
  }
}

ProjectiveBasis rotated_basis(double theta) {
  ComplexMatrix v(2, 2);
  v << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  char label[48];
  std::snprintf(label, sizeof(label), "rot@%.6f", theta);
  return ProjectiveBasis(label, v);
}

double find_zero_crossing(const std::function<double(double)>& bound, double lo,
                          double hi, int grid_points) {
  if (grid_points < 2 || !(hi > lo)) throw ConfigError("find_zero_crossing: bad range");
  std::vector<double> xs, vs;
  for (int i = 0; i < grid_points; ++i) {
    const double x = lo + (hi - lo) * i / (grid_points - 1);
    xs.push_back(x);
    vs.push_back(bound(x));
  }
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    if (vs[i + 1] < vs[i] - tol::reconstruction) {
      throw NoCrossing("find_zero_crossing: bound not monotone increasing on the grid");
    }
  }
  int bracket = -1;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    if (vs[i] <= 0.0 && vs[i + 1] > 0.0) {
      bracket = static_cast<int>(i);
      break;
    }
  }
  if (bracket < 0) throw NoCrossing("find_zero_crossing: bound sign is constant");
  double a = xs[static_cast<std::size_t>(bracket)];
  double b = xs[static_cast<std::size_t>(bracket) + 1];
  while (b - a > tol::bisection) {
    const double mid = 0.5 * (a + b);
    (bound(mid) > 0.0 ? b : a) = mid;
  }
  return 0.5 * (a + b);
}

double werner_threshold(WernerFamily family, const std::vector<PartyBases>& setups,
                        WitnessMode mode, double lo, double hi, int grid_points) {
  return find_zero_crossing(
      [&](double p) {
        return tripartite_ef3_bound(werner_state({family, p}), setups, mode).bound_value;
      },
      lo, hi, grid_points);
}

}  // namespace eurw
