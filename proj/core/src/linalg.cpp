#include "eurw/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

namespace eurw {

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

Eigensystem eigh(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw NotSquare("eigh: matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
  if (!is_hermitian(m)) {
    throw NotHermitian("eigh: symmetry tolerance violated");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error("eigh: eigensolver failed to converge");
  }
  // Eigen returns ascending eigenvalues and orthonormalizes degenerate clusters.
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    s[k] = s[k + 1] * dims[k + 1];
  }
  return s;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  if (m.rows() != m.cols()) throw NotSquare("partial_trace: matrix not square");
  long long total = 1;
  for (int d : dims) {
    if (d <= 0) throw DimensionMismatch("partial_trace: nonpositive factor dimension");
    total *= d;
  }
  if (total != m.rows()) {
    throw DimensionMismatch("partial_trace: product of dims != matrix dimension");
  }
  std::vector<int> kept(keep);
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (int k : kept) {
    if (k < 0 || k >= static_cast<int>(dims.size())) {
      throw DimensionMismatch("partial_trace: keep index out of range");
    }
  }

  const auto n = static_cast<int>(dims.size());
  const auto stride = strides_of(dims);
  std::vector<int> kept_stride;  // strides of the result index space
  int out_dim = 1;
  for (int k : kept) out_dim *= dims[k];
  {
    int s = out_dim;
    for (int k : kept) {
      s /= dims[k];
      kept_stride.push_back(s);
    }
  }

  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  std::vector<int> ri(n), ci(n);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (int k = 0; k < n; ++k) ri[k] = static_cast<int>(r / stride[k]) % dims[k];
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      for (int k = 0; k < n; ++k) ci[k] = static_cast<int>(c / stride[k]) % dims[k];
      bool diagonal_in_traced = true;
      for (int k = 0; k < n; ++k) {
        if (std::find(kept.begin(), kept.end(), k) == kept.end() && ri[k] != ci[k]) {
          diagonal_in_traced = false;
          break;
        }
      }
      if (!diagonal_in_traced) continue;
      int ro = 0, co = 0;
      for (std::size_t k = 0; k < kept.size(); ++k) {
        ro += ri[kept[k]] * kept_stride[k];
        co += ci[kept[k]] * kept_stride[k];
      }
      out(ro, co) += m(r, c);
    }
  }
  return out;
}

}  // namespace eurw
