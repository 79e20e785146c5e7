#include "eurw/states.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace eurw {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    // A, B, ..., Z, then P26, P27, ...
    out.push_back(k < 26 ? std::string(1, static_cast<char>('A' + k))
                         : "P" + std::to_string(k));
  }
  return out;
}

double log2_clipped(double x) { return std::log2(x); }

}  // namespace

DensityState::DensityState(ComplexMatrix matrix, std::vector<int> dims,
                           std::vector<std::string> labels)
    : matrix_(std::move(matrix)), dims_(std::move(dims)), labels_(std::move(labels)) {
  long long total = 1;
  for (int d : dims_) total *= d;
  if (matrix_.rows() != matrix_.cols() || total != matrix_.rows()) {
    throw DimensionMismatch("DensityState: product of dims != matrix dimension");
  }
  if (!is_hermitian(matrix_)) {
    throw InvalidState("DensityState: not Hermitian within tolerance");
  }
  if (std::abs(matrix_.trace().real() - 1.0) > tol::trace_one ||
      std::abs(matrix_.trace().imag()) > tol::trace_one) {
    throw InvalidState("DensityState: trace differs from 1");
  }
  const auto es = eigh(matrix_);
  if (es.values.minCoeff() < -tol::negativity) {
    throw InvalidState("DensityState: negative eigenvalue beyond tolerance");
  }
  if (labels_.empty()) labels_ = default_labels(dims_.size());
  if (labels_.size() != dims_.size()) {
    throw PartyError("DensityState: label count != party count");
  }
}

DensityState DensityState::pure(const ComplexVector& psi, std::vector<int> dims,
                                std::vector<std::string> labels) {
  const double n2 = psi.squaredNorm();
  if (n2 <= 0.0) throw InvalidState("pure: zero vector");
  ComplexVector v = psi / std::sqrt(n2);
  return DensityState(v * v.adjoint(), std::move(dims), std::move(labels));
}

int DensityState::party_dim(int party) const {
  if (party < 0 || party >= num_parties()) throw PartyError("party index out of range");
  return dims_[party];
}

const std::string& DensityState::label(int party) const {
  if (party < 0 || party >= num_parties()) throw PartyError("party index out of range");
  return labels_[party];
}

ComplexMatrix DensityState::reduced(const std::vector<int>& keep) const {
  for (int k : keep) {
    if (k < 0 || k >= num_parties()) throw PartyError("reduced: party index out of range");
  }
  return partial_trace(matrix_, dims_, keep);
}

DensityState permute_parties(const DensityState& rho, const std::vector<int>& perm) {
  const int n = rho.num_parties();
  if (static_cast<int>(perm.size()) != n) throw PartyError("permute_parties: size mismatch");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) throw PartyError("permute_parties: not a permutation");
    seen[p] = true;
  }
  const auto& dims = rho.dims();
  std::vector<int> strides(n, 1);
  for (int k = n - 2; k >= 0; --k) strides[k] = strides[k + 1] * dims[k + 1];
  std::vector<int> new_dims(n);
  std::vector<std::string> new_labels(n);
  for (int k = 0; k < n; ++k) {
    new_dims[k] = dims[perm[k]];
    new_labels[k] = rho.labels()[perm[k]];
  }
  std::vector<int> new_strides(n, 1);
  for (int k = n - 2; k >= 0; --k) new_strides[k] = new_strides[k + 1] * new_dims[k + 1];

  const auto d = rho.dim();
  // index map: old multi-index -> new flat index
  std::vector<int> map(d);
  for (int i = 0; i < d; ++i) {
    int out = 0;
    for (int k = 0; k < n; ++k) {
      const int idx = (i / strides[perm[k]]) % dims[perm[k]];
      out += idx * new_strides[k];
    }
    map[i] = out;
  }
  ComplexMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m(map[r], map[c]) = rho.matrix()(r, c);
  }
  return DensityState(std::move(m), std::move(new_dims), std::move(new_labels));
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols()) throw NotSquare("von_neumann_entropy: not square");
  if (std::abs(rho.trace().real() - 1.0) > tol::trace_one ||
      std::abs(rho.trace().imag()) > tol::trace_one) {
    throw InvalidState("von_neumann_entropy: trace differs from 1");
  }
  const auto es = eigh(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    double lam = es.values(i);
    if (lam < -tol::negativity) {
      throw InvalidState("von_neumann_entropy: negative eigenvalue beyond tolerance");
    }
    if (lam < tol::prob_clip) continue;  // clipped to 0, contributes nothing
    s -= lam * log2_clipped(lam);
  }
  return s < 0.0 ? 0.0 : s;
}

double von_neumann_entropy(const DensityState& rho) {
  return von_neumann_entropy(rho.matrix());
}

double conditional_entropy(const DensityState& rho, int target,
                           const std::vector<int>& memory) {
  if (target < 0 || target >= rho.num_parties()) {
    throw PartyError("conditional_entropy: target out of range");
  }
  if (memory.empty()) throw PartyError("conditional_entropy: empty memory set");
  for (int m : memory) {
    if (m < 0 || m >= rho.num_parties()) {
      throw PartyError("conditional_entropy: memory party out of range");
    }
    if (m == target) throw PartyError("conditional_entropy: target inside memory set");
  }
  std::vector<int> joint(memory);
  joint.push_back(target);
  return von_neumann_entropy(rho.reduced(joint)) - von_neumann_entropy(rho.reduced(memory));
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != rho.cols() || sigma.rows() != sigma.cols() ||
      rho.rows() != sigma.rows()) {
    throw DimensionMismatch("relative_entropy: shape mismatch");
  }
  const auto er = eigh(rho);
  const auto es = eigh(sigma);
  if (es.values.minCoeff() < -tol::negativity) {
    throw InvalidState("relative_entropy: sigma not positive semidefinite");
  }

  // -S(rho), skipping clipped eigenvalues
  double tr_rho_log_rho = 0.0;
  for (Eigen::Index i = 0; i < er.values.size(); ++i) {
    const double lam = er.values(i);
    if (lam < -tol::negativity) {
      throw InvalidState("relative_entropy: rho not positive semidefinite");
    }
    if (lam < tol::prob_clip) continue;
    tr_rho_log_rho += lam * std::log2(lam);
  }

  // tr(rho log2 sigma) over sigma's support; support violation -> +inf
  double tr_rho_log_sigma = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double mu = es.values(i);
    const double weight = (es.vectors.col(i).adjoint() * rho * es.vectors.col(i))(0, 0).real();
    if (mu <= tol::support_cut) {
      if (weight > tol::support_cut) return std::numeric_limits<double>::infinity();
      continue;
    }
    tr_rho_log_sigma += weight * std::log2(mu);
  }
  return tr_rho_log_rho - tr_rho_log_sigma;
}

}  // namespace eurw
