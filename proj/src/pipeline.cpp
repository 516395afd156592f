#include "tspp/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "tspp/errors.hpp"
#include "tspp/thermal.hpp"

namespace tspp {

const char* to_string(Backend b) { return b == Backend::Lcu ? "lcu" : "qsp"; }

const char* to_string(CutoffSource c) {
  switch (c) {
    case CutoffSource::Exact: return "exact";
    case CutoffSource::Thm2: return "thm2";
    case CutoffSource::Thm3: return "thm3";
    case CutoffSource::Thm4: return "thm4";
    case CutoffSource::Explicit: return "explicit";
  }
  return "?";
}

void RunConfig::validate() const {
  if (!(eps > 0)) throw InvalidArgument("run config: eps must be > 0");
  if (!(beta >= 0)) throw InvalidArgument("run config: beta must be >= 0");
  if (h0.rows() == 0 || h0.rows() != h0.cols() || h1.rows() != h0.rows() || h1.cols() != h0.cols())
    throw InvalidArgument("run config: H0 and H1 must be square and of equal size");
  if (unitary.type == UnitaryDescriptor::Type::Custom &&
      (!custom_unitary || custom_unitary->rows() != h0.rows()))
    throw InvalidArgument("run config: custom unitary missing or of the wrong size");
  if (initial_state && initial_state->size() != h0.rows() * h0.rows())
    throw InvalidArgument("run config: initial state must live on the doubled system");
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidArgument("trace_distance: dimension mismatch");
  Matrix d = a - b;
  d = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(d, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double expected_rounds(double series_l1, double beta, double deltaA) {
  return 2.0 * series_l1 * std::exp(beta * deltaA / 2.0);
}

double gate_cost_estimate(double L, int m, double alpha0, double alpha1, double delta, double beta,
                          double Qprime, double eps) {
  return L * std::ldexp(1.0, m) * ((alpha0 + alpha1) * delta * beta + std::log(Qprime / eps));
}

double gate_cost_estimate_commuting(double L, int m, double alphaV, double delta, double beta,
                                    double Qprime, double eps) {
  return gate_cost_estimate(L, m, alphaV, 0.0, delta, beta, Qprime, eps);
}

namespace {

double select_cutoff(const RunConfig& cfg, const Matrix& U, const ForwardResult& fwd,
                     const ThermoData& th) {
  const Matrix v = cfg.h1 - cfg.h0;
  const bool identity = cfg.unitary.type == UnitaryDescriptor::Type::Identity;
  switch (cfg.cutoff) {
    case CutoffSource::Exact:
      return largest_cutoff(fwd.dist, cfg.beta, th.deltaA, cfg.eps).w_l;
    case CutoffSource::Thm2:
      return cutoff_bound_general(spectral_norm(cfg.h1 - U * cfg.h0 * U.adjoint()), cfg.eps);
    case CutoffSource::Thm3: {
      if (!identity) throw CertificationFailure("commuting cutoff bound needs the identity unitary");
      const double comm = max_abs(cfg.h0 * v - v * cfg.h0);
      if (comm > 1e-9 * std::max(1.0, max_abs(cfg.h0) * max_abs(v)))
        throw CertificationFailure("commuting cutoff bound: H0 and V do not commute");
      return cutoff_bound_commuting(spectral_norm(v));
    }
    case CutoffSource::Thm4:
      if (!identity) throw CertificationFailure("local cutoff bound needs the identity unitary");
      if (!cfg.locality) throw CertificationFailure("local cutoff bound needs locality metadata");
      return cutoff_bound_local(*cfg.locality, cfg.eps);
    case CutoffSource::Explicit:
      return cfg.cutoff_value;
  }
  throw InvalidArgument("unknown cutoff source");
}

}  // namespace

RunResult run_tspp(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  RunResult r;
  r.backend = cfg.backend;
  r.cutoff_source = cfg.cutoff;

  const Spectrum s0 = diagonalize(cfg.h0);
  const Spectrum s1 = diagonalize(cfg.h1);
  const Index d = s0.size();
  const ThermoData th = free_energy_difference(s0, s1, cfg.beta);
  r.deltaA = th.deltaA;

  NonEqUnitary U;
  if (cfg.unitary.type == UnitaryDescriptor::Type::Custom) {
    if (unitarity_defect(*cfg.custom_unitary) > 1e-10)
      throw InvalidArgument("run config: custom unitary is not unitary");
    U.matrix = *cfg.custom_unitary;
    U.descriptor = cfg.unitary;
  } else {
    U = build_unitary(cfg.unitary, cfg.h0, cfg.h1 - cfg.h0, s0, s1, cfg.beta);
  }
  r.unitary_label = cfg.unitary.label();
  r.unitary_steps = U.steps_used;

  // work cutoff
  const ForwardResult fwd = forward_distribution(s0, s1, cfg.beta, U.matrix);
  r.w_l = select_cutoff(cfg, U.matrix, fwd, th);
  r.cutoff = check_cutoff(fwd.dist, cfg.beta, th.deltaA, cfg.eps, r.w_l);
  if (!r.cutoff.satisfied) {
    r.certified = false;
    if (!cfg.trust_theorem) {
      std::ostringstream os;
      os << "cutoff condition fails at w_l = " << r.w_l << " (" << to_string(cfg.cutoff)
         << "): lhs " << r.cutoff.lhs << " > budget " << r.cutoff.budget;
      throw CertificationFailure(os.str());
    }
  }

  // operator approximation
  r.w_max = s1.max() - s0.min();
  const FourierSeries series = build_series(select_parameters(cfg.beta, r.w_max, r.w_l, cfg.eps));
  r.series = series.params;
  r.alpha = series.l1;
  const RealVector wv = work_eigenvalues(s0, s1);
  r.certification = certify_constraints(series, std::vector<double>(wv.data(), wv.data() + wv.size()));
  if (!r.certification.passed()) {
    r.certified = false;
    if (!cfg.trust_theorem) {
      std::ostringstream os;
      os << "series certification failed: " << r.certification.violations
         << " violations, worst relative error above w_l " << r.certification.worst_above;
      throw CertificationFailure(os.str());
    }
  }

  // U_W = e^{i delta beta W / 2} in the product eigenbasis of W
  const Matrix Q = kron(s1.eigenvectors, s0.eigenvectors.conjugate());
  Vector ph(wv.size());
  for (Index i = 0; i < wv.size(); ++i)
    ph(i) = std::polar(1.0, series.params.delta * cfg.beta * wv(i) / 2.0);
  const Matrix UW = Q * ph.asDiagonal() * Q.adjoint();

  const Vector psi0 = cfg.initial_state ? *cfg.initial_state : purification(s0, cfg.beta).amplitudes;
  const Matrix Id = Matrix::Identity(d, d);
  const Vector phi = apply_kron(U.matrix, Id, psi0);

  BlockEncodingResult be;
  double scale = series.l1;  // top block = X phi / scale
  if (cfg.backend == Backend::Lcu) {
    be = simulate_lcu(series, UW, phi);
  } else {
    const QspPhaseSet phases = solve_series_phases(series, cfg.qsp);
    r.qsp_residual = std::max(phases.residual1, phases.residual2);
    be = simulate_qsp(phases, UW, phi);
    scale = 2.0 * series.l1;
  }
  r.ancilla_count = be.ancilla_count;

  const AmplificationResult amp = amplitude_amplification(be.full_state, d * d);
  r.rounds = amp.report;
  r.expected_rounds = expected_rounds(series.l1, cfg.beta, th.deltaA);
  r.rounds.expected_rounds = r.expected_rounds;
  r.measured_rounds_ratio = series.l1 / (scale * be.top_block.norm());

  r.psi1 = apply_kron(Id, U.matrix.conjugate(), amp.state);
  r.tau1 = partial_trace_second(r.psi1, d, d);
  r.rho1 = thermal_state(s1, cfg.beta);
  r.trace_distance = trace_distance(r.tau1, r.rho1);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace tspp
