#include "tspp/approx.hpp"

#include <algorithm>
#include <cmath>

#include "tspp/errors.hpp"

namespace tspp {

namespace {
using ld = long double;
using lcplx = std::complex<long double>;
const ld kSqrt2Pi = std::sqrt(2.0L * 3.141592653589793238462643383279502884L);
}  // namespace

SeriesParameters select_parameters(double beta, double w_max, double w_l, double eps) {
  if (!(eps > 0)) throw InvalidArgument("select_parameters: eps must be > 0");
  if (w_max < w_l) throw InvalidArgument("select_parameters: need w_max >= w_l");
  if (beta < 0) throw InvalidArgument("select_parameters: beta must be >= 0");
  SeriesParameters p;
  p.beta = beta;
  p.w_max = w_max;
  p.w_l = w_l;
  p.eps = eps;
  p.Delta = std::max(4.0, std::sqrt(std::max(0.0, std::log(6.0 / eps))));
  p.z = beta * (w_max - w_l) + 2.0 * p.Delta * p.Delta;
  p.delta = 2.0 * kPi / p.z;
  p.J = static_cast<int>(std::ceil(std::pow(p.z, 1.5) / 3.0)) - 1;
  return p;
}

cplx fourier_kernel(double omega, double Delta) {
  const ld w = omega, D = Delta;
  const ld mag = std::exp(D + 0.5L - (w * w + 1.0L) / 4.0L) / (kSqrt2Pi * (1.0L + w * w));
  const lcplx v = mag * lcplx(1.0L, -w) * std::polar(1.0L, w * (D + 0.5L));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double smoothed_profile(double x, double Delta) {
  return std::exp(-x) * (1.0 + std::erf(Delta + x)) / 2.0;
}

FourierSeries build_series(const SeriesParameters& p) {
  FourierSeries s;
  s.params = p;
  s.coeffs.resize(2 * p.J + 1);
  const ld pre = std::exp(-(ld)p.beta * p.w_l / 2.0L) * (ld)p.delta / kSqrt2Pi;
  for (int j = 0; j <= p.J; ++j) {
    const ld om = (ld)j * p.delta;
    const cplx H = fourier_kernel(static_cast<double>(om), p.Delta);
    const lcplx a = pre * lcplx(H.real(), H.imag()) *
                    std::polar(1.0L, -om * (ld)p.beta * p.w_l / 2.0L);
    const cplx ad(static_cast<double>(a.real()), static_cast<double>(a.imag()));
    s.coeffs[p.J + j] = ad;
    s.coeffs[p.J - j] = std::conj(ad);
  }
  s.coeffs[p.J] = s.coeffs[p.J].real();
  ld l1 = 0;
  for (const auto& a : s.coeffs) l1 += std::abs(lcplx(a.real(), a.imag()));
  s.l1 = static_cast<double>(l1);
  return s;
}

cplx evaluate_series(const FourierSeries& s, double w) {
  const auto& p = s.params;
  const ld theta = (ld)p.delta * p.beta * w / 2.0L;
  lcplx acc = s.coeffs[p.J].real();
  // conjugate symmetry: alpha_j e^{ij theta} + c.c.
  for (int j = 1; j <= p.J; ++j) {
    const cplx a = s.coeffs[p.J + j];
    const lcplx t = lcplx(a.real(), a.imag()) * std::polar(1.0L, (ld)j * theta);
    acc += 2.0L * t.real();
  }
  return {static_cast<double>(acc.real()), 0.0};
}

CertificationReport certify_constraints(const FourierSeries& s, const std::vector<double>& ws) {
  CertificationReport r;
  r.entries.reserve(ws.size());
  const auto& p = s.params;
  for (double w : ws) {
    CertificationEntry e;
    e.w = w;
    const ld target = std::exp(-(ld)p.beta * w / 2.0L);
    const cplx x = evaluate_series(s, w);
    e.rel_error = static_cast<double>(std::abs(lcplx(x.real(), x.imag()) - target) / target);
    e.allowed = w >= p.w_l ? p.eps / 3.0 : 2.0;
    e.ok = e.rel_error <= e.allowed;
    if (!e.ok) ++r.violations;
    if (w >= p.w_l)
      r.worst_above = std::max(r.worst_above, e.rel_error);
    else
      r.worst_below = std::max(r.worst_below, e.rel_error);
    r.entries.push_back(e);
  }
  return r;
}

double HsSeries::sum() const {
  double s = 0.0;
  for (double c : coeffs) s += c;
  return s;
}

HsSeries hs_parameters(double beta, double w_max, double eps) {
  if (!(eps > 0)) throw InvalidArgument("hs_parameters: eps must be > 0");
  if (w_max < 0) throw InvalidArgument("hs_parameters: requires a non-negative work operator");
  HsSeries h;
  h.beta = beta;
  h.w_max = w_max;
  h.eps = eps;
  const double a = std::sqrt(beta * w_max);
  const double b = std::sqrt(6.0 * std::log(2.0 / eps));
  h.delta = 1.0 / (2.0 * kPi * (a + b));
  h.J = static_cast<int>(std::ceil(2.0 * kPi * b * (a + b)));
  h.coeffs.resize(2 * h.J + 1);
  for (int j = -h.J; j <= h.J; ++j) {
    const double om = j * h.delta;
    h.coeffs[j + h.J] = h.delta / std::sqrt(2.0 * kPi) * std::exp(-om * om / 2.0);
  }
  return h;
}

cplx evaluate_hs(const HsSeries& s, double w) {
  if (w < 0) throw InvalidArgument("evaluate_hs: work value must be >= 0");
  const double x = std::sqrt(s.beta * w);
  cplx acc = 0.0;
  for (int j = -s.J; j <= s.J; ++j) acc += s.coeffs[j + s.J] * std::polar(1.0, j * s.delta * x);
  return acc;
}

}  // namespace tspp
