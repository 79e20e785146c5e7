#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "eurw/errors.hpp"
#include "eurw/tolerances.hpp"

namespace eurw {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigendecomposition of a Hermitian matrix: values ascending, vectors unitary.
struct Eigensystem {
  RealVector values;
  ComplexMatrix vectors;  // columns are eigenvectors, values[i] <-> vectors.col(i)
};

bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::hermiticity);

/// Hermitian eigendecomposition. Throws NotSquare / NotHermitian.
Eigensystem eigh(const ComplexMatrix& m);

/// Tensor (Kronecker) product, row-major block convention:
/// result[(i*rb+k),(j*cb+l)] = a(i,j)*b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace of a square matrix over the tensor factors not listed in
/// `keep`. `dims` are the factor dimensions in order; their product must equal
/// the matrix dimension. Kept factors keep their relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& keep);

}  // namespace eurw
