#pragma once

#include <vector>

#include "tspp/thermal.hpp"

namespace tspp {

struct WorkPair {
  int m = 0, n = 0;  // H0 index, H1 index
  double w = 0.0;
  double p = 0.0;
  double phase = 0.0;
};

struct WorkTable {
  std::vector<WorkPair> pairs;
  double beta = 0.0;
  double deltaA = 0.0;
};

struct WorkBin {
  double w = 0.0;
  double P = 0.0;
};

struct WorkDistribution {
  std::vector<WorkBin> bins;  // ascending in w
  double tolerance = 0.0;

  double total() const;
  double w_min() const { return bins.front().w; }
  double w_max() const { return bins.back().w; }
  double mean() const;
};

struct CutoffReport {
  double w_l = 0.0;
  double lhs = 0.0;
  double budget = 0.0;
  bool satisfied = false;
};

// H1 (x) I - I (x) H0*
Matrix work_operator(const Matrix& h1, const Matrix& h0);

// eigenvalues of the work operator, index n*d + m -> e1_n - e0_m
RealVector work_eigenvalues(const Spectrum& s0, const Spectrum& s1);

// Bin grid shared by the forward process and (negated) by the reverse one.
struct BinGrid {
  std::vector<double> centers;  // ascending
  std::vector<int> pair_bin;    // per pair, index into centers
  double tolerance = 0.0;
};
BinGrid make_bin_grid(const std::vector<double>& values);

struct ForwardResult {
  WorkTable table;
  WorkDistribution dist;
  BinGrid grid;
};

ForwardResult forward_distribution(const Spectrum& s0, const Spectrum& s1, double beta,
                                   const Matrix& U);

// Start in rho1, apply U^dagger, w = e0_m - e1_n. Uses the negated forward grid.
WorkDistribution reverse_distribution(const Spectrum& s0, const Spectrum& s1, double beta,
                                      const Matrix& U);

struct FluctuationResiduals {
  double jarzynski = 0.0;
  double crooks_max_bin = 0.0;
  double crooks_second_moment = 0.0;
  double jarzynski_sum = 0.0;   // sum P e^{-beta w}
  double reverse_second_moment = 0.0;  // sum P^rev w^2
};

FluctuationResiduals verify_fluctuation_identities(const WorkDistribution& forward,
                                                   const WorkDistribution& reverse,
                                                   const ThermoData& thermo);

// sum_{w < w_l} P(w) e^{-beta (w - deltaA)}
double cutoff_lhs(const WorkDistribution& dist, double beta, double deltaA, double w_l);
CutoffReport check_cutoff(const WorkDistribution& dist, double beta, double deltaA, double eps,
                          double w_l);
CutoffReport largest_cutoff(const WorkDistribution& dist, double beta, double deltaA, double eps);

double cutoff_bound_general(double normVU, double eps);
double cutoff_bound_commuting(double normV);
double cutoff_bound_local(const LocalityMetadata& meta, double eps);

struct OverlapCheck {
  double lhs = 0.0;
  double bound = 0.0;
};
// || Pi^1_{<= eps1} Pi^0_{> eps0} || against exp(-(eps0-eps1-2Mv)/(2hgk))
OverlapCheck eigenspace_overlap_check(const Spectrum& s0, const Spectrum& s1,
                                      const LocalityMetadata& meta, double eps0, double eps1);

}  // namespace tspp
