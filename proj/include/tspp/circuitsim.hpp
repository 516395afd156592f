#pragma once

#include <vector>

#include "tspp/approx.hpp"

namespace tspp {

struct BlockEncodingResult {
  Vector top_block;   // ancilla <0| component
  double orth_norm = 0.0;
  int ancilla_count = 0;
  Vector full_state;  // ancilla-major: index a * D + i
};

// B with B|0> = b (b normalized)
Matrix prepare_unitary(const Vector& b);

// Ancilla register size for 2J+1 coefficients: 2J+2 rounded up to a power of two.
int lcu_ancilla_count(int J);

BlockEncodingResult simulate_lcu(const std::vector<cplx>& coeffs, const Matrix& U,
                                 const Vector& psi);
BlockEncodingResult simulate_lcu(const FourierSeries& s, const Matrix& U, const Vector& psi);

// (1/alpha) sum_j alpha_j U^j |psi>, built directly for cross-checks
Vector lcu_direct(const std::vector<cplx>& coeffs, const Matrix& U, const Vector& psi);

// Chebyshev pieces of f(e^{i theta}) = p1(cos th/2) + sin(th/2) q2(cos th/2)
struct ChebyshevSplit {
  std::vector<double> p1;  // coefficient of T_{2j}, j = 0..J
  std::vector<double> q2;  // coefficient of R_{2j-1}, j = 1..J, stored at j-1
  double alpha = 0.0;
};

ChebyshevSplit chebyshev_split(const FourierSeries& s);
double chebyshev_T(int k, double y);
double chebyshev_R(int k, double y);  // second kind
double eval_even_T(const std::vector<double>& c, double y);            // sum c_j T_{2j}(y)
double eval_odd_R(const std::vector<double>& c, double y);             // sum c_j R_{2j+1}(y)
double eval_sqrt_odd_R(const std::vector<double>& c, double y, int sign);  // sign*sqrt(1-y^2)*eval_odd_R

enum class QspKind { First, Second };

// V_Phi(y) with the + branch of the signal operator
Eigen::Matrix2cd qsp_unitary(const std::vector<double>& phases, double y, int sign = +1);

enum class QspMethod { GaussNewton, Lbfgs };

struct QspSolveOptions {
  QspMethod method = QspMethod::GaussNewton;
  int max_iterations = 10000;
  double gradient_tolerance = 1e-12;
  double accept_residual = 1e-6;
  int fit_points = 0;      // Chebyshev nodes on (0, 1]; 0 picks 2J+2
  int verify_points = 2001;
};

struct QspSolveResult {
  std::vector<double> phases;
  double residual = 0.0;  // max error on the verification grid
  int iterations = 0;
  bool converged = false;
};

// Fit 2J+1 phases to an even T-series (First) or odd R-series (Second).
QspSolveResult solve_qsp_phases(const std::vector<double>& target, QspKind kind,
                                const QspSolveOptions& opt = {});
double qsp_residual(const std::vector<double>& phases, const std::vector<double>& target,
                    QspKind kind, int points = 2001);

struct QspPhaseSet {
  std::vector<double> phases1, phases2;
  double residual1 = 0.0, residual2 = 0.0;
  std::vector<double> target_p1, target_q2;
  double alpha = 0.0;
  bool certified(double tol = 1e-6) const { return residual1 <= tol && residual2 <= tol; }
};

// throws SolverNonConvergence when either solve misses the acceptance residual
QspPhaseSet solve_series_phases(const FourierSeries& s, const QspSolveOptions& opt = {});

// Three-ancilla block encoding of X / (2 alpha)
BlockEncodingResult simulate_qsp(const QspPhaseSet& phases, const Matrix& U, const Vector& psi);

struct AmplificationReport {
  int rounds_used = 0;
  double initial_amplitude = 0.0;
  double final_overlap = 0.0;      // success amplitude after the last round
  double predicted_amplitude = 0.0;  // sin((2k+1) asin a)
  double expected_rounds = 0.0;
};

struct AmplificationResult {
  Vector state;  // normalized good-subspace component
  AmplificationReport report;
};

// The good subspace is the leading good_dim entries (ancilla all zero).
AmplificationResult amplitude_amplification(const Vector& prepared, Index good_dim,
                                            int max_rounds = 1 << 20);

}  // namespace tspp
