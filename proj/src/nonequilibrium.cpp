#include "tspp/nonequilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Sparse>

#include "tspp/errors.hpp"
#include "tspp/thermal.hpp"

namespace tspp {

UnitaryDescriptor UnitaryDescriptor::interpolation(double T, int steps) {
  UnitaryDescriptor d;
  d.type = Type::Interpolation;
  d.T = T;
  d.steps = steps;
  return d;
}

UnitaryDescriptor UnitaryDescriptor::optimal(double eps) {
  UnitaryDescriptor d;
  d.type = Type::Optimal;
  d.eps = eps;
  return d;
}

std::string UnitaryDescriptor::label() const {
  char buf[64];
  switch (type) {
    case Type::Identity: return "identity";
    case Type::Interpolation: std::snprintf(buf, sizeof buf, "T=%g", T); return buf;
    case Type::Optimal: std::snprintf(buf, sizeof buf, "optimal(eps=%g)", eps); return buf;
    case Type::Custom: return "custom";
  }
  return "unknown";
}

bool PermutationAssignment::is_bijective() const {
  std::vector<char> seen(pi.size(), 0);
  for (int m : pi) {
    if (m < 0 || m >= static_cast<int>(pi.size()) || seen[m]) return false;
    seen[m] = 1;
  }
  return true;
}

namespace {

bool is_real(const Matrix& a) { return a.imag().cwiseAbs().maxCoeff() == 0.0; }

using SpReal = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using SpCplx = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

// Taylor order and substep count so one term is below roundoff
void taylor_plan(double x, int& order, int& sub) {
  sub = std::max(1, static_cast<int>(std::ceil(x / 0.5)));
  const double y = x / sub;
  double term = 1.0;
  order = 0;
  while (term > 1e-18 && order < 40) {
    ++order;
    term *= y / order;
  }
}

// U <- exp(-i dt H) U with H real, U = A + iB
void step_real(RealMatrix& A, RealMatrix& B, const SpReal& h, double dt, double hnorm) {
  int order, sub;
  taylor_plan(dt * hnorm, order, sub);
  const double h_dt = dt / sub;
  for (int r = 0; r < sub; ++r) {
    RealMatrix ta = A, tb = B, na, nb;
    for (int k = 1; k <= order; ++k) {
      // (-i c H)(a + ib) = c H b - i c H a
      na = (h_dt / k) * (h * tb);
      nb = (-h_dt / k) * (h * ta);
      A += na;
      B += nb;
      ta.swap(na);
      tb.swap(nb);
    }
  }
}

void step_cplx(Matrix& u, const SpCplx& h, double dt, double hnorm) {
  int order, sub;
  taylor_plan(dt * hnorm, order, sub);
  const cplx c(0.0, -dt / sub);
  for (int r = 0; r < sub; ++r) {
    Matrix t = u;
    for (int k = 1; k <= order; ++k) {
      t = (c / double(k)) * (h * t);
      u += t;
    }
  }
}

}  // namespace

NonEqUnitary interpolated_evolution(const Matrix& h0, const Matrix& v, double T, int steps) {
  if (steps < 1) throw InvalidArgument("interpolated_evolution: steps must be >= 1");
  if (T < 0) throw InvalidArgument("interpolated_evolution: T must be >= 0");
  NonEqUnitary out;
  out.descriptor = UnitaryDescriptor::interpolation(T, steps);
  out.steps_used = steps;
  out.matrix = Matrix::Identity(h0.rows(), h0.cols());
  if (T == 0.0) return out;
  const double n0 = spectral_norm(h0), nv = spectral_norm(v);
  const double dt = T / steps;
  if (is_real(h0) && is_real(v)) {
    const SpReal s0 = RealMatrix(h0.real()).sparseView(), sv = RealMatrix(v.real()).sparseView();
    RealMatrix A = RealMatrix::Identity(h0.rows(), h0.cols());
    RealMatrix B = RealMatrix::Zero(h0.rows(), h0.cols());
    for (int k = 0; k < steps; ++k) {
      const double s = (k + 0.5) / steps;
      const SpReal h = s0 + s * sv;
      step_real(A, B, h, dt, n0 + s * nv);
    }
    out.matrix.real() = A;
    out.matrix.imag() = B;
  } else {
    const SpCplx s0 = h0.sparseView(), sv = v.sparseView();
    for (int k = 0; k < steps; ++k) {
      const double s = (k + 0.5) / steps;
      const SpCplx h = s0 + s * sv;
      step_cplx(out.matrix, h, dt, n0 + s * nv);
    }
  }
  return out;
}

NonEqUnitary interpolated_evolution_auto(const Matrix& h0, const Matrix& v, double T, double tol,
                                         int max_steps) {
  if (T == 0.0) {
    auto u = interpolated_evolution(h0, v, T, 1);
    u.descriptor.steps = 0;
    return u;
  }
  NonEqUnitary prev = interpolated_evolution(h0, v, T, 1);
  for (int s = 2;; s *= 2) {
    NonEqUnitary next = interpolated_evolution(h0, v, T, s);
    const double change = operator_norm(next.matrix - prev.matrix);
    next.last_doubling_change = change;
    next.descriptor.steps = 0;
    next.descriptor.tol = tol;
    next.descriptor.max_steps = max_steps;
    if (change < tol || 2 * s > max_steps) {
      next.converged = change < tol;
      return next;
    }
    prev = std::move(next);
  }
}

PermutationAssignment greedy_assignment(const Spectrum& s0, const Spectrum& s1, double w_l_star) {
  const int N = static_cast<int>(s0.size());
  if (s1.size() != N) throw InvalidArgument("greedy_assignment: spectra differ in size");
  PermutationAssignment a;
  a.pi.resize(N);
  int lo = 0, hi = N - 1;  // S_n is always a contiguous index range
  for (int n = 0; n < N; ++n) {
    if (s1.eigenvalues(n) - s0.eigenvalues(lo) >= w_l_star)
      a.pi[n] = lo++;
    else
      a.pi[n] = hi--;
  }
  return a;
}

Matrix permutation_unitary(const Spectrum& s0, const Spectrum& s1, const PermutationAssignment& a) {
  const Index N = s0.size();
  Matrix p = Matrix::Zero(N, N);
  for (Index n = 0; n < N; ++n) p(n, a.pi[n]) = 1.0;
  return s1.eigenvectors * p * s0.eigenvectors.adjoint();
}

OptimalResult optimal_unitary(const Spectrum& s0, const Spectrum& s1, double w_l_star) {
  OptimalResult r;
  r.w_l_star = w_l_star;
  r.assignment = greedy_assignment(s0, s1, w_l_star);
  r.unitary.matrix = permutation_unitary(s0, s1, r.assignment);
  r.unitary.descriptor.type = UnitaryDescriptor::Type::Optimal;
  return r;
}

double cost_function(const PermutationAssignment& a, const Spectrum& s0, const Spectrum& s1,
                     double beta, double w_l_star) {
  RealVector p1 = boltzmann(s1.eigenvalues, beta);
  double c = 0.0;
  for (std::size_t n = 0; n < a.pi.size(); ++n)
    if (s1.eigenvalues(n) - s0.eigenvalues(a.pi[n]) < w_l_star) c += p1(n);
  return c;
}

OptimalResult optimal_unitary_for_eps(const Spectrum& s0, const Spectrum& s1, double beta,
                                      double eps) {
  if (eps < 0) throw InvalidArgument("optimal_unitary: eps must be >= 0");
  const Index N = s0.size();
  std::vector<double> cand;
  cand.reserve(N * N + 1);
  for (Index n = 0; n < N; ++n)
    for (Index m = 0; m < N; ++m) cand.push_back(s1.eigenvalues(n) - s0.eigenvalues(m));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  cand.push_back(cand.back() + 1.0);
  const double budget = (eps / 6.0) * (eps / 6.0);
  auto feasible = [&](double w) {
    return cost_function(greedy_assignment(s0, s1, w), s0, s1, beta, w) <= budget;
  };
  // the minimal cost is non-decreasing in the cutoff; the smallest candidate costs 0
  std::size_t lo = 0, hi = cand.size() - 1;
  if (feasible(cand[hi])) lo = hi;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (feasible(cand[mid]) ? lo : hi) = mid;
  }
  OptimalResult r = optimal_unitary(s0, s1, cand[lo]);
  r.unitary.descriptor = UnitaryDescriptor::optimal(eps);
  return r;
}

NonEqUnitary conjugate_unitary(const NonEqUnitary& u) {
  NonEqUnitary c = u;
  c.matrix = u.matrix.conjugate();
  return c;
}

NonEqUnitary build_unitary(const UnitaryDescriptor& d, const Matrix& h0, const Matrix& v,
                           const Spectrum& s0, const Spectrum& s1, double beta) {
  switch (d.type) {
    case UnitaryDescriptor::Type::Identity: {
      NonEqUnitary u;
      u.matrix = Matrix::Identity(h0.rows(), h0.cols());
      u.descriptor = d;
      return u;
    }
    case UnitaryDescriptor::Type::Interpolation: {
      NonEqUnitary u = d.steps > 0 ? interpolated_evolution(h0, v, d.T, d.steps)
                                   : interpolated_evolution_auto(h0, v, d.T, d.tol, d.max_steps);
      u.descriptor = d;
      return u;
    }
    case UnitaryDescriptor::Type::Optimal:
      return optimal_unitary_for_eps(s0, s1, beta, d.eps).unitary;
    case UnitaryDescriptor::Type::Custom:
      break;
  }
  throw InvalidArgument("build_unitary: custom unitaries must be supplied as matrices");
}

}  // namespace tspp
