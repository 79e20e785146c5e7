#include "eurw/random.hpp"

#include <cmath>

namespace eurw {

double Rng::uniform() {
  // 53 high bits of the raw output; avoids implementation-defined
  // generate_canonical so streams are portable
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

int Rng::below(int n) {
  return static_cast<int>(uniform() * n) % n;
}

namespace {

ComplexMatrix ginibre(Rng& rng, int rows, int cols) {
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  }
  return g;
}

int total_dim(const std::vector<int>& dims) {
  int d = 1;
  for (int x : dims) d *= x;
  return d;
}

}  // namespace

ProjectiveBasis random_basis(Rng& rng, int dim, const std::string& name) {
  const ComplexMatrix g = ginibre(rng, dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  // fix the phase so the decomposition is unique-ish and columns deterministic
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return ProjectiveBasis(name, q);
}

DensityState random_density(Rng& rng, std::vector<int> dims) {
  const int d = total_dim(dims);
  const ComplexMatrix g = ginibre(rng, d, d);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityState(std::move(rho), std::move(dims));
}

DensityState random_pure(Rng& rng, std::vector<int> dims) {
  const int d = total_dim(dims);
  ComplexVector psi(d);
  for (int i = 0; i < d; ++i) psi(i) = Complex(rng.normal(), rng.normal());
  return DensityState::pure(psi, std::move(dims));
}

DensityState random_separable(Rng& rng, const std::vector<int>& dims, int max_terms) {
  const int terms = 1 + rng.below(max_terms);
  std::vector<double> weights(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (auto& w : weights) {
    w = rng.uniform() + 1e-6;
    total += w;
  }
  const int d = total_dim(dims);
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (int t = 0; t < terms; ++t) {
    ComplexMatrix term = ComplexMatrix::Identity(1, 1);
    for (int dim : dims) {
      ComplexVector psi(dim);
      for (int i = 0; i < dim; ++i) psi(i) = Complex(rng.normal(), rng.normal());
      psi /= psi.norm();
      term = kron(term, psi * psi.adjoint());
    }
    rho += (weights[static_cast<std::size_t>(t)] / total) * term;
  }
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityState(std::move(rho), dims);
}

}  // namespace eurw
