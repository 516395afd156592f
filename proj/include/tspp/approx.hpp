#pragma once

#include <vector>

#include "tspp/linalg.hpp"

namespace tspp {

struct SeriesParameters {
  double beta = 0.0;
  double w_max = 0.0;
  double w_l = 0.0;
  double eps = 0.0;
  double Delta = 0.0;
  double z = 0.0;
  double delta = 0.0;
  int J = 0;
};

struct FourierSeries {
  SeriesParameters params;
  std::vector<cplx> coeffs;  // alpha_{-J..J}, coeffs[j + J]
  double l1 = 0.0;

  int J() const { return params.J; }
  cplx alpha(int j) const { return coeffs[j + params.J]; }
};

struct HsSeries {
  double beta = 0.0;
  double w_max = 0.0;
  double eps = 0.0;
  double delta = 0.0;
  int J = 0;
  std::vector<double> coeffs;  // j = -J..J
  double sum() const;
};

SeriesParameters select_parameters(double beta, double w_max, double w_l, double eps);

// H(w) = sqrt(2 pi) F(w) G(w)
cplx fourier_kernel(double omega, double Delta);
// target profile h(x) = e^{-x} (1 + erf(Delta + x)) / 2
double smoothed_profile(double x, double Delta);

FourierSeries build_series(const SeriesParameters& p);

// sum_j alpha_j e^{i j delta beta w / 2}
cplx evaluate_series(const FourierSeries& s, double w);

struct CertificationEntry {
  double w = 0.0;
  double rel_error = 0.0;  // |e^{-beta w/2} - X(w)| / e^{-beta w/2}
  double allowed = 0.0;
  bool ok = true;
};

struct CertificationReport {
  std::vector<CertificationEntry> entries;
  int violations = 0;
  double worst_above = 0.0;  // max rel error over w >= w_l
  double worst_below = 0.0;
  bool passed() const { return violations == 0; }
};

CertificationReport certify_constraints(const FourierSeries& s, const std::vector<double>& ws);

HsSeries hs_parameters(double beta, double w_max, double eps);
cplx evaluate_hs(const HsSeries& s, double w);

}  // namespace tspp
