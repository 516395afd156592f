#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace tspp {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;

// Kronecker product with the left factor most significant.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

double max_abs(const Matrix& a);
double hermiticity_defect(const Matrix& a);
double unitarity_defect(const Matrix& u);
bool is_hermitian(const Matrix& a, double tol);

// largest singular value
double operator_norm(const Matrix& a);

// f(A) for Hermitian A via its eigendecomposition
template <class F>
Matrix hermitian_function(const Matrix& a, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const Matrix& q = es.eigenvectors();
  Vector d(a.rows());
  for (Index i = 0; i < a.rows(); ++i) d(i) = f(es.eigenvalues()(i));
  return q * d.asDiagonal() * q.adjoint();
}

// e^{-i t A} for Hermitian A
Matrix expm_hermitian(const Matrix& a, double t);

// U^k for a dense unitary; negative k uses the adjoint
Matrix matrix_power(const Matrix& u, std::int64_t k);

// |psi> viewed as a row-major d1 x d2 matrix, psi(i*d2+j) = M(i,j)
Matrix unvec(const Vector& psi, Index d1, Index d2);
Vector vec(const Matrix& m);

// tr_2 |psi><psi| for psi in C^{d1} (x) C^{d2}
Matrix partial_trace_second(const Vector& psi, Index d1, Index d2);

// (A (x) B)|psi> without forming the Kronecker product
Vector apply_kron(const Matrix& a, const Matrix& b, const Vector& psi);

}  // namespace tspp
