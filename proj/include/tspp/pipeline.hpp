#pragma once

#include <optional>
#include <string>

#include "tspp/circuitsim.hpp"
#include "tspp/nonequilibrium.hpp"
#include "tspp/workstats.hpp"

namespace tspp {

enum class Backend { Lcu, Qsp };
enum class CutoffSource { Exact, Thm2, Thm3, Thm4, Explicit };

const char* to_string(Backend b);
const char* to_string(CutoffSource c);

struct RunConfig {
  Matrix h0, h1;                          // dense Hamiltonians, H1 = H0 + V
  std::optional<LocalityMetadata> locality;  // needed by the local-Hamiltonian bound
  double beta = 1.0;
  double eps = 0.05;
  UnitaryDescriptor unitary;
  std::optional<Matrix> custom_unitary;   // used when unitary.type == Custom
  Backend backend = Backend::Lcu;
  CutoffSource cutoff = CutoffSource::Exact;
  double cutoff_value = 0.0;              // for CutoffSource::Explicit
  bool trust_theorem = false;             // skip the exact checks before simulating
  std::optional<Vector> initial_state;    // replaces the purification of rho0 (chained runs)
  QspSolveOptions qsp;

  void validate() const;
};

struct RunResult {
  DensityMatrix tau1, rho1;
  Vector psi1;                 // prepared state on s (x) s'
  double trace_distance = 0.0;
  double w_l = 0.0;
  double w_max = 0.0;
  double deltaA = 0.0;
  CutoffReport cutoff;
  CertificationReport certification;
  SeriesParameters series;
  double alpha = 0.0;          // l1 norm of the series
  int ancilla_count = 0;
  AmplificationReport rounds;
  double expected_rounds = 0.0;
  double measured_rounds_ratio = 0.0;  // alpha / ||X (U (x) 1) Psi0||
  double qsp_residual = 0.0;
  std::string unitary_label;
  int unitary_steps = 0;
  Backend backend = Backend::Lcu;
  CutoffSource cutoff_source = CutoffSource::Exact;
  bool certified = true;
  double wall_time = 0.0;
};

RunResult run_tspp(const RunConfig& cfg);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// 2 alpha e^{beta deltaA / 2}
double expected_rounds(double series_l1, double beta, double deltaA);

// L 2^m ((alpha0 + alpha1) delta beta + ln(Q'/eps))
double gate_cost_estimate(double L, int m, double alpha0, double alpha1, double delta, double beta,
                          double Qprime, double eps);
// commuting H0, V: alpha_V replaces alpha0 + alpha1
double gate_cost_estimate_commuting(double L, int m, double alphaV, double delta, double beta,
                                    double Qprime, double eps);

}  // namespace tspp
