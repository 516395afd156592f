#include "tspp/workstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tspp/errors.hpp"

namespace tspp {

double WorkDistribution::total() const {
  double s = 0.0;
  for (const auto& b : bins) s += b.P;
  return s;
}

double WorkDistribution::mean() const {
  double s = 0.0;
  for (const auto& b : bins) s += b.P * b.w;
  return s;
}

Matrix work_operator(const Matrix& h1, const Matrix& h0) {
  if (h1.rows() != h0.rows() || h1.cols() != h0.cols())
    throw InvalidArgument("work_operator: dimension mismatch");
  const Index d = h0.rows();
  Matrix id = Matrix::Identity(d, d);
  return kron(h1, id) - kron(id, conjugate(h0));
}

RealVector work_eigenvalues(const Spectrum& s0, const Spectrum& s1) {
  const Index d = s0.size();
  RealVector w(d * d);
  for (Index n = 0; n < d; ++n)
    for (Index m = 0; m < d; ++m) w(n * d + m) = s1.eigenvalues(n) - s0.eigenvalues(m);
  return w;
}

BinGrid make_bin_grid(const std::vector<double>& values) {
  BinGrid g;
  if (values.empty()) return g;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  g.tolerance = 1e-9 * std::max(1.0, std::abs(*lo) + std::abs(*hi));
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  g.pair_bin.assign(values.size(), 0);
  double sum = 0.0, prev = values[order[0]];
  int count = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double v = values[order[k]];
    if (k > 0 && v - prev > g.tolerance) {
      g.centers.push_back(sum / count);
      sum = 0.0;
      count = 0;
    }
    sum += v;
    ++count;
    prev = v;
    g.pair_bin[order[k]] = static_cast<int>(g.centers.size());
  }
  g.centers.push_back(sum / count);
  return g;
}

static void check_unitary(const Matrix& U, Index d, const char* who) {
  if (U.rows() != d || U.cols() != d) throw InvalidArgument(std::string(who) + ": U has wrong size");
  if (unitarity_defect(U) > 1e-10) throw ContractViolation(std::string(who) + ": U is not unitary");
}

ForwardResult forward_distribution(const Spectrum& s0, const Spectrum& s1, double beta,
                                   const Matrix& U) {
  const Index d = s0.size();
  check_unitary(U, d, "forward_distribution");
  Matrix amp = s1.eigenvectors.adjoint() * U * s0.eigenvectors;  // (n, m)
  RealVector p0 = boltzmann(s0.eigenvalues, beta);
  ThermoData th = free_energy_difference(s0, s1, beta);

  ForwardResult r;
  r.table.beta = beta;
  r.table.deltaA = th.deltaA;
  r.table.pairs.reserve(d * d);
  std::vector<double> ws;
  ws.reserve(d * d);
  for (Index n = 0; n < d; ++n)
    for (Index m = 0; m < d; ++m) {
      const cplx a = amp(n, m);
      WorkPair wp;
      wp.m = static_cast<int>(m);
      wp.n = static_cast<int>(n);
      wp.w = s1.eigenvalues(n) - s0.eigenvalues(m);
      wp.p = p0(m) * std::norm(a);
      wp.phase = std::arg(a);
      r.table.pairs.push_back(wp);
      ws.push_back(wp.w);
    }
  r.grid = make_bin_grid(ws);
  r.dist.tolerance = r.grid.tolerance;
  r.dist.bins.resize(r.grid.centers.size());
  for (std::size_t b = 0; b < r.grid.centers.size(); ++b) r.dist.bins[b].w = r.grid.centers[b];
  for (std::size_t k = 0; k < r.table.pairs.size(); ++k)
    r.dist.bins[r.grid.pair_bin[k]].P += r.table.pairs[k].p;
  return r;
}

WorkDistribution reverse_distribution(const Spectrum& s0, const Spectrum& s1, double beta,
                                      const Matrix& U) {
  const Index d = s0.size();
  check_unitary(U, d, "reverse_distribution");
  Matrix amp = s1.eigenvectors.adjoint() * U * s0.eigenvectors;
  RealVector p1 = boltzmann(s1.eigenvalues, beta);
  std::vector<double> ws;
  ws.reserve(d * d);
  for (Index n = 0; n < d; ++n)
    for (Index m = 0; m < d; ++m) ws.push_back(s1.eigenvalues(n) - s0.eigenvalues(m));
  BinGrid g = make_bin_grid(ws);
  const int nb = static_cast<int>(g.centers.size());
  WorkDistribution dist;
  dist.tolerance = g.tolerance;
  dist.bins.resize(nb);
  for (int b = 0; b < nb; ++b) dist.bins[b].w = -g.centers[nb - 1 - b];
  for (Index n = 0; n < d; ++n)
    for (Index m = 0; m < d; ++m)
      dist.bins[nb - 1 - g.pair_bin[n * d + m]].P += p1(n) * std::norm(amp(n, m));
  return dist;
}

FluctuationResiduals verify_fluctuation_identities(const WorkDistribution& fwd,
                                                   const WorkDistribution& rev,
                                                   const ThermoData& th) {
  const double beta = th.beta;
  const double ratio = std::exp(th.logZ1 - th.logZ0);  // e^{-beta dA}
  const double tol = std::max(fwd.tolerance, rev.tolerance);
  FluctuationResiduals r;
  double m2 = 0.0;
  for (const auto& b : fwd.bins) {
    const double wt = b.P * std::exp(-beta * b.w);
    r.jarzynski_sum += wt;
    m2 += wt * b.w * b.w;
    // reverse bin at -w
    auto it = std::lower_bound(rev.bins.begin(), rev.bins.end(), -b.w - tol,
                               [](const WorkBin& x, double v) { return x.w < v; });
    double prev = 0.0;
    if (it != rev.bins.end() && std::abs(it->w + b.w) <= tol) prev = it->P;
    r.crooks_max_bin = std::max(r.crooks_max_bin, std::abs(wt - ratio * prev));
  }
  for (const auto& b : rev.bins) r.reverse_second_moment += b.P * b.w * b.w;
  // reverse mass with no forward partner also violates the identity
  for (const auto& b : rev.bins) {
    auto it = std::lower_bound(fwd.bins.begin(), fwd.bins.end(), -b.w - tol,
                               [](const WorkBin& x, double v) { return x.w < v; });
    if (it == fwd.bins.end() || std::abs(it->w + b.w) > tol)
      r.crooks_max_bin = std::max(r.crooks_max_bin, ratio * b.P);
  }
  r.jarzynski = std::abs(r.jarzynski_sum - ratio);
  r.crooks_second_moment = std::abs(m2 - ratio * r.reverse_second_moment);
  return r;
}

static double reweighted(const WorkBin& b, double beta, double deltaA) {
  if (b.P <= 0.0) return 0.0;
  return std::exp(std::log(b.P) - beta * (b.w - deltaA));
}

double cutoff_lhs(const WorkDistribution& dist, double beta, double deltaA, double w_l) {
  double s = 0.0;
  for (const auto& b : dist.bins) {
    if (b.w >= w_l - dist.tolerance) break;
    s += reweighted(b, beta, deltaA);
  }
  return s;
}

CutoffReport check_cutoff(const WorkDistribution& dist, double beta, double deltaA, double eps,
                          double w_l) {
  CutoffReport r;
  r.w_l = w_l;
  r.budget = (eps / 6.0) * (eps / 6.0);
  r.lhs = cutoff_lhs(dist, beta, deltaA, w_l);
  r.satisfied = r.lhs <= r.budget;
  return r;
}

CutoffReport largest_cutoff(const WorkDistribution& dist, double beta, double deltaA, double eps) {
  if (eps < 0) throw InvalidArgument("largest_cutoff: eps must be >= 0");
  if (dist.bins.empty()) throw InvalidArgument("largest_cutoff: empty distribution");
  CutoffReport r;
  r.budget = (eps / 6.0) * (eps / 6.0);
  double prefix = 0.0;
  r.w_l = dist.bins.front().w;
  r.lhs = 0.0;
  r.satisfied = true;
  for (std::size_t k = 1; k <= dist.bins.size(); ++k) {
    prefix += reweighted(dist.bins[k - 1], beta, deltaA);
    if (prefix > r.budget) break;
    r.w_l = k < dist.bins.size() ? dist.bins[k].w : dist.bins.back().w + 1.0;
    r.lhs = prefix;
  }
  return r;
}

double cutoff_bound_general(double normVU, double eps) {
  if (eps <= 0) throw InvalidArgument("cutoff_bound_general: eps must be > 0");
  return -6.0 * normVU / eps;
}

double cutoff_bound_commuting(double normV) { return -normV; }

double cutoff_bound_local(const LocalityMetadata& md, double eps) {
  if (eps <= 0) throw InvalidArgument("cutoff_bound_local: eps must be > 0");
  return -2.0 * md.M * md.v - 2.0 * md.h * md.g * md.k * std::log(6.0 / eps);
}

OverlapCheck eigenspace_overlap_check(const Spectrum& s0, const Spectrum& s1,
                                      const LocalityMetadata& md, double eps0, double eps1) {
  if (eps1 > eps0) throw InvalidArgument("eigenspace_overlap_check: need eps1 <= eps0");
  std::vector<Index> low, high;
  for (Index i = 0; i < s1.size(); ++i)
    if (s1.eigenvalues(i) <= eps1) low.push_back(i);
  for (Index i = 0; i < s0.size(); ++i)
    if (s0.eigenvalues(i) > eps0) high.push_back(i);
  OverlapCheck r;
  const double hgk = md.h * md.g * md.k;
  const double gap = eps0 - eps1 - 2.0 * md.M * md.v;
  if (hgk > 0)
    r.bound = std::exp(-gap / (2.0 * hgk));
  else
    r.bound = gap > 0 ? 0.0 : 1.0;
  if (low.empty() || high.empty()) return r;
  Matrix a(low.size(), high.size());
  for (std::size_t i = 0; i < low.size(); ++i)
    for (std::size_t j = 0; j < high.size(); ++j)
      a(i, j) = s1.eigenvectors.col(low[i]).dot(s0.eigenvectors.col(high[j]));
  Eigen::JacobiSVD<Matrix> svd(a);
  r.lhs = svd.singularValues()(0);
  return r;
}

}  // namespace tspp
