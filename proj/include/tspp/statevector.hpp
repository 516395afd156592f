#pragma once

#include "tspp/linalg.hpp"

namespace tspp {

// Plain qubit register, qubit 0 is the most significant bit.
class Statevector {
 public:
  explicit Statevector(int nqubits) : n_(nqubits), psi_(Vector::Zero(Index{1} << nqubits)) {
    psi_(0) = 1.0;
  }
  Statevector(int nqubits, Vector amps) : n_(nqubits), psi_(std::move(amps)) {}

  int qubits() const { return n_; }
  const Vector& amplitudes() const { return psi_; }
  Vector& amplitudes() { return psi_; }

  void apply_1q(int q, const Eigen::Matrix2cd& g) {
    const Index stride = Index{1} << (n_ - 1 - q);
    for (Index base = 0; base < psi_.size(); base += 2 * stride)
      for (Index off = 0; off < stride; ++off) {
        const Index i0 = base + off, i1 = i0 + stride;
        const cplx a = psi_(i0), b = psi_(i1);
        psi_(i0) = g(0, 0) * a + g(0, 1) * b;
        psi_(i1) = g(1, 0) * a + g(1, 1) * b;
      }
  }

  void apply_cnot(int control, int target) {
    const Index cm = Index{1} << (n_ - 1 - control);
    const Index tm = Index{1} << (n_ - 1 - target);
    for (Index i = 0; i < psi_.size(); ++i)
      if ((i & cm) && !(i & tm)) std::swap(psi_(i), psi_(i | tm));
  }

 private:
  int n_;
  Vector psi_;
};

}  // namespace tspp
