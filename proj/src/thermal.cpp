#include "tspp/thermal.hpp"

#include <cmath>

#include "tspp/errors.hpp"
#include "tspp/statevector.hpp"

namespace tspp {

double log_partition(const RealVector& e, double beta) {
  if (e.size() == 0) throw InvalidArgument("log_partition: empty spectrum");
  const double emin = e.minCoeff();
  double acc = 0.0;
  for (Index i = 0; i < e.size(); ++i) acc += std::exp(-beta * (e(i) - emin));
  return std::log(acc) - beta * emin;
}

RealVector boltzmann(const RealVector& e, double beta) {
  const double emin = e.minCoeff();
  RealVector p(e.size());
  for (Index i = 0; i < e.size(); ++i) p(i) = std::exp(-beta * (e(i) - emin));
  return p / p.sum();
}

DensityMatrix thermal_state(const Spectrum& s, double beta) {
  if (beta < 0) throw InvalidArgument("thermal_state: beta must be >= 0");
  RealVector p = boltzmann(s.eigenvalues, beta);
  return s.eigenvectors * p.cast<cplx>().asDiagonal() * s.eigenvectors.adjoint();
}

PureState purification(const Spectrum& s, double beta) {
  if (beta < 0) throw InvalidArgument("purification: beta must be >= 0");
  RealVector p = boltzmann(s.eigenvalues, beta);
  const Index d = s.size();
  // as a d x d matrix this is sum_m sqrt(p_m) phi_m phi_m^dagger
  Matrix m = s.eigenvectors * p.cwiseSqrt().cast<cplx>().asDiagonal() * s.eigenvectors.adjoint();
  return {vec(m), {d, d}, true};
}

ThermoData free_energy_difference(const Spectrum& s0, const Spectrum& s1, double beta) {
  if (beta < 0) throw InvalidArgument("free_energy_difference: beta must be >= 0");
  ThermoData t;
  t.beta = beta;
  t.logZ0 = log_partition(s0.eigenvalues, beta);
  t.logZ1 = log_partition(s1.eigenvalues, beta);
  t.Z0 = std::exp(t.logZ0);
  t.Z1 = std::exp(t.logZ1);
  t.deltaA = beta > 0 ? -(t.logZ1 - t.logZ0) / beta : 0.0;
  return t;
}

double u0_angle(double beta) {
  return std::acos(std::exp(-beta / 2) / std::sqrt(2 * std::cosh(beta)));
}

PureState u0_product_circuit(int n, double beta) {
  if (n < 1) throw InvalidArgument("u0_product_circuit: n must be >= 1");
  const double th = u0_angle(beta);
  Statevector sv(2 * n);
  Eigen::Matrix2cd ry;
  ry << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);  // e^{-i th Y}
  for (int q = 0; q < n; ++q) sv.apply_1q(q, ry);
  for (int q = 0; q < n; ++q) sv.apply_cnot(q, n + q);
  const Index d = Index{1} << n;
  return {sv.amplitudes(), {d, d}, true};
}

}  // namespace tspp
