#include <ceres/ceres.h>

#include <algorithm>
#include <cmath>

#include "tspp/circuitsim.hpp"
#include "tspp/errors.hpp"

namespace tspp {

namespace {

using C2 = Eigen::Matrix<cplx, 1, 2>;
using C2c = Eigen::Matrix<cplx, 2, 1>;

double target_value(const std::vector<double>& c, QspKind kind, double y) {
  return kind == QspKind::First ? eval_even_T(c, y) : eval_sqrt_odd_R(c, y, +1);
}

// F(y) and dF/dphi from prefix/suffix products of the 2x2 chain
double eval_with_gradient(const double* phi, int n, double y, QspKind kind, double* grad) {
  const cplx I(0, 1);
  const double s = std::sqrt(std::max(0.0, 1.0 - y * y));
  Eigen::Matrix2cd W;
  W << y, I * s, I * s, y;
  const int col = kind == QspKind::First ? 0 : 1;
  auto A = [&](int k, C2c v) {
    v(0) *= std::polar(1.0, phi[k]);
    v(1) *= std::polar(1.0, -phi[k]);
    return v;
  };
  // r[k] = W A_{k+1} W ... A_d e_col, the suffix after A_k
  std::vector<C2c> r(n);
  r[n - 1] = C2c::Zero();
  r[n - 1](col) = 1.0;
  for (int k = n - 2; k >= 0; --k) r[k] = W * A(k + 1, r[k + 1]);
  C2 l(1.0, 0.0);
  double F = 0.0;
  for (int k = 0; k < n; ++k) {
    const C2c ar = A(k, r[k]);
    if (k == 0) {
      const cplx v = l * ar;
      F = kind == QspKind::First ? v.real() : v.imag();
    }
    if (grad) {
      C2c zar = ar;
      zar(1) = -zar(1);
      const cplx dv = I * (l * zar)(0);
      grad[k] = kind == QspKind::First ? dv.real() : dv.imag();
    }
    if (k + 1 < n) {
      C2 la = l;
      la(0) *= std::polar(1.0, phi[k]);
      la(1) *= std::polar(1.0, -phi[k]);
      l = la * W;
    }
  }
  return F;
}

class PhaseObjective final : public ceres::FirstOrderFunction {
 public:
  PhaseObjective(std::vector<double> nodes, std::vector<double> targets, QspKind kind, int n)
      : nodes_(std::move(nodes)), targets_(std::move(targets)), kind_(kind), n_(n) {}

  bool Evaluate(const double* x, double* cost, double* gradient) const override {
    *cost = 0.0;
    if (gradient) std::fill(gradient, gradient + n_, 0.0);
    std::vector<double> g(n_);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double f = eval_with_gradient(x, n_, nodes_[i], kind_, gradient ? g.data() : nullptr);
      const double e = f - targets_[i];
      *cost += 0.5 * e * e;
      if (gradient)
        for (int k = 0; k < n_; ++k) gradient[k] += e * g[k];
    }
    return true;
  }
  int NumParameters() const override { return n_; }

 private:
  std::vector<double> nodes_, targets_;
  QspKind kind_;
  int n_;
};

// same objective as a residual vector, for Gauss-Newton
class PhaseResiduals final : public ceres::CostFunction {
 public:
  PhaseResiduals(std::vector<double> nodes, std::vector<double> targets, QspKind kind, int n)
      : nodes_(std::move(nodes)), targets_(std::move(targets)), kind_(kind), n_(n) {
    set_num_residuals(static_cast<int>(nodes_.size()));
    mutable_parameter_block_sizes()->push_back(n);
  }
  bool Evaluate(double const* const* x, double* res, double** jac) const override {
    std::vector<double> g(n_);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      res[i] = eval_with_gradient(x[0], n_, nodes_[i], kind_, jac && jac[0] ? g.data() : nullptr) -
               targets_[i];
      if (jac && jac[0]) std::copy(g.begin(), g.end(), jac[0] + i * n_);
    }
    return true;
  }

 private:
  std::vector<double> nodes_, targets_;
  QspKind kind_;
  int n_;
};

double qsp_value(const std::vector<double>& phi, QspKind kind, double y) {
  return eval_with_gradient(phi.data(), static_cast<int>(phi.size()), y, kind, nullptr);
}

}  // namespace

double qsp_residual(const std::vector<double>& phases, const std::vector<double>& target,
                    QspKind kind, int points) {
  double worst = 0.0;
  for (int k = 1; k <= points; ++k) {
    const double y = std::cos(kPi * (2.0 * k - 1.0) / (2.0 * points));
    worst = std::max(worst, std::abs(qsp_value(phases, kind, y) - target_value(target, kind, y)));
  }
  return worst;
}

QspSolveResult solve_qsp_phases(const std::vector<double>& target, QspKind kind,
                                const QspSolveOptions& opt) {
  // First: target holds c_0..c_J of T_{2j}; Second: c_1..c_J of R_{2j-1}
  const int J = kind == QspKind::First ? static_cast<int>(target.size()) - 1
                                       : static_cast<int>(target.size());
  if (J < 0) throw InvalidArgument("solve_qsp_phases: empty target");
  const int n = 2 * J + 1;

  QspSolveResult res;
  res.phases.assign(n, 0.0);
  if (n > 1) {
    if (kind == QspKind::First)
      res.phases.front() = res.phases.back() = kPi / 4;
    else
      res.phases.back() = -kPi / 2;
  }

  const int K = opt.fit_points > 0 ? opt.fit_points : n + 1;
  std::vector<double> nodes(K), vals(K);
  for (int k = 1; k <= K; ++k) {
    nodes[k - 1] = std::cos(kPi * (2.0 * k - 1.0) / (4.0 * K));  // positive half, by parity
    vals[k - 1] = target_value(target, kind, nodes[k - 1]);
  }

  if (opt.method == QspMethod::GaussNewton) {
    ceres::Problem pr;
    pr.AddResidualBlock(new PhaseResiduals(nodes, vals, kind, n), nullptr, res.phases.data());
    ceres::Solver::Options o;
    o.linear_solver_type = ceres::DENSE_QR;
    o.max_num_iterations = opt.max_iterations;
    o.gradient_tolerance = opt.gradient_tolerance;
    o.function_tolerance = 1e-20;
    o.parameter_tolerance = 1e-20;
    o.logging_type = ceres::SILENT;
    ceres::Solver::Summary sum;
    ceres::Solve(o, &pr, &sum);
    res.iterations = static_cast<int>(sum.iterations.size());
  } else {
    ceres::GradientProblemSolver::Options o;
    o.max_num_iterations = opt.max_iterations;
    o.gradient_tolerance = opt.gradient_tolerance;
    o.function_tolerance = 1e-20;
    o.parameter_tolerance = 1e-20;
    o.logging_type = ceres::SILENT;
    ceres::GradientProblem problem(new PhaseObjective(nodes, vals, kind, n));
    ceres::GradientProblemSolver::Summary sum;
    ceres::Solve(o, problem, res.phases.data(), &sum);
    res.iterations = static_cast<int>(sum.iterations.size());
  }

  res.residual = qsp_residual(res.phases, target, kind, opt.verify_points);
  res.converged = res.residual <= opt.accept_residual;
  return res;
}

QspPhaseSet solve_series_phases(const FourierSeries& s, const QspSolveOptions& opt) {
  const ChebyshevSplit c = chebyshev_split(s);
  QspPhaseSet ps;
  ps.alpha = c.alpha;
  ps.target_p1 = c.p1;
  ps.target_q2 = c.q2;
  const auto r1 = solve_qsp_phases(c.p1, QspKind::First, opt);
  const auto r2 = solve_qsp_phases(c.q2, QspKind::Second, opt);
  ps.phases1 = r1.phases;
  ps.phases2 = r2.phases;
  ps.residual1 = r1.residual;
  ps.residual2 = r2.residual;
  if (!r1.converged || !r2.converged)
    throw SolverNonConvergence("QSP phase solve did not reach the acceptance residual",
                               std::max(r1.residual, r2.residual));
  return ps;
}

}  // namespace tspp
