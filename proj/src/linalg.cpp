#include "tspp/linalg.hpp"

#include <cmath>

namespace tspp {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double max_abs(const Matrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

double hermiticity_defect(const Matrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  return max_abs(a - a.adjoint());
}

double unitarity_defect(const Matrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

bool is_hermitian(const Matrix& a, double tol) { return hermiticity_defect(a) <= tol; }

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Matrix expm_hermitian(const Matrix& a, double t) {
  return hermitian_function(a, [t](double x) { return std::polar(1.0, -t * x); });
}

Matrix matrix_power(const Matrix& u, std::int64_t k) {
  Matrix base = k < 0 ? Matrix(u.adjoint()) : u;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  Matrix acc = Matrix::Identity(u.rows(), u.cols());
  while (e) {
    if (e & 1u) acc = acc * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return acc;
}

Matrix unvec(const Vector& psi, Index d1, Index d2) {
  Matrix m(d1, d2);
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d2; ++j) m(i, j) = psi(i * d2 + j);
  return m;
}

Vector vec(const Matrix& m) {
  Vector v(m.size());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

Matrix partial_trace_second(const Vector& psi, Index d1, Index d2) {
  Matrix m = unvec(psi, d1, d2);
  return m * m.adjoint();
}

Vector apply_kron(const Matrix& a, const Matrix& b, const Vector& psi) {
  Matrix m = unvec(psi, a.cols(), b.cols());
  return vec(a * m * b.transpose());
}

}  // namespace tspp
