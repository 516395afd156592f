#pragma once

#include <vector>

#include "tspp/hamiltonians.hpp"

namespace tspp {

using DensityMatrix = Matrix;

struct PureState {
  Vector amplitudes;
  std::vector<Index> factor_dims;
  bool normalized = true;

  Index dim() const { return amplitudes.size(); }
};

struct ThermoData {
  double beta = 0.0;
  double Z0 = 1.0, Z1 = 1.0;
  double logZ0 = 0.0, logZ1 = 0.0;  // kept so huge beta*||H|| stays finite
  double deltaA = 0.0;
};

// ln sum_i e^{-beta e_i}, evaluated with the minimum shifted out
double log_partition(const RealVector& energies, double beta);

// Boltzmann probabilities e^{-beta e_i}/Z
RealVector boltzmann(const RealVector& energies, double beta);

DensityMatrix thermal_state(const Spectrum& s, double beta);

// (1/sqrt Z) sum_m e^{-beta e_m/2} |phi_m> (x) |phi_m*>
PureState purification(const Spectrum& s, double beta);

ThermoData free_energy_difference(const Spectrum& s0, const Spectrum& s1, double beta);

// rotation angle of the product-state preparation for H0 = sum Z_j
double u0_angle(double beta);

// R_y(theta)^{(x)n} on register s, then CNOT(q -> n+q) for each q
PureState u0_product_circuit(int n, double beta);

}  // namespace tspp
