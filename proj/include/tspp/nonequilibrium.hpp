#pragma once

#include <string>
#include <vector>

#include "tspp/hamiltonians.hpp"

namespace tspp {

struct UnitaryDescriptor {
  enum class Type { Identity, Interpolation, Optimal, Custom };
  Type type = Type::Identity;
  double T = 0.0;
  int steps = 0;  // 0 selects steps automatically
  double eps = 0.0;
  double tol = 1e-8;       // doubling criterion for automatic steps
  int max_steps = 1 << 16;

  static UnitaryDescriptor identity() { return {}; }
  static UnitaryDescriptor interpolation(double T, int steps = 0);
  static UnitaryDescriptor optimal(double eps);
  std::string label() const;
};

struct NonEqUnitary {
  Matrix matrix;
  UnitaryDescriptor descriptor;
  int steps_used = 0;
  double last_doubling_change = 0.0;  // ||U_2S - U_S|| at the accepted step count
  bool converged = true;
};

// pi[n] = m: the H1 eigenstate n is reached from the H0 eigenstate m
struct PermutationAssignment {
  std::vector<int> pi;
  bool is_bijective() const;
};

// Midpoint-rule product of exp(-i dt H(t_mid)), H(t) = H0 + (t/T) V.
NonEqUnitary interpolated_evolution(const Matrix& h0, const Matrix& v, double T, int steps);
NonEqUnitary interpolated_evolution_auto(const Matrix& h0, const Matrix& v, double T,
                                         double tol = 1e-8, int max_steps = 1 << 16);

// Greedy eigenstate matching for a given cutoff.
PermutationAssignment greedy_assignment(const Spectrum& s0, const Spectrum& s1, double w_l_star);
Matrix permutation_unitary(const Spectrum& s0, const Spectrum& s1,
                           const PermutationAssignment& a);

struct OptimalResult {
  NonEqUnitary unitary;
  PermutationAssignment assignment;
  double w_l_star = 0.0;
};
OptimalResult optimal_unitary(const Spectrum& s0, const Spectrum& s1, double w_l_star);

// Largest cutoff reachable by any unitary at accuracy eps, and the greedy unitary for it.
OptimalResult optimal_unitary_for_eps(const Spectrum& s0, const Spectrum& s1, double beta,
                                      double eps);

// sum of P1(e1_n) over n whose forward work e1_n - e0_pi(n) lies below w_l_star
double cost_function(const PermutationAssignment& a, const Spectrum& s0, const Spectrum& s1,
                     double beta, double w_l_star);

NonEqUnitary conjugate_unitary(const NonEqUnitary& u);

NonEqUnitary build_unitary(const UnitaryDescriptor& d, const Matrix& h0, const Matrix& v,
                           const Spectrum& s0, const Spectrum& s1, double beta);

}  // namespace tspp
