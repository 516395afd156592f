#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tspp/errors.hpp"
#include "tspp/nonequilibrium.hpp"
#include "tspp/workstats.hpp"

using namespace tspp;

namespace {

Matrix Z() { return oracle::pauli2('Z'); }

struct Instance {
  Spectrum s0, s1;
  Matrix u;
  double beta;
};

Instance random_instance(std::mt19937_64& rng, Index d, double beta, bool random_u) {
  const Matrix h0 = oracle::random_hermitian(d, rng);
  const Matrix h1 = h0 + oracle::random_hermitian(d, rng, 0.6);
  return {diagonalize(h0), diagonalize(h1),
          random_u ? oracle::random_unitary(d, rng) : Matrix(Matrix::Identity(d, d)), beta};
}

// p_{m,n} straight from the definition
double oracle_p(const Instance& in, int m, int n) {
  const double lz0 = oracle::log_sum_exp_neg(in.s0.eigenvalues, in.beta);
  const cplx amp = in.s1.eigenvectors.col(n).dot(in.u * in.s0.eigenvectors.col(m));
  return std::exp(-in.beta * in.s0.eigenvalues(m) - lz0) * std::norm(amp);
}

double bin_mass(const WorkDistribution& d, double w) {
  for (const auto& b : d.bins)
    if (std::abs(b.w - w) < 1e-9) return b.P;
  return 0.0;
}

}  // namespace

TEST(WorkOperator, SpectraOfSmallExamples) {
  const RealVector a = diagonalize(work_operator(Z(), Z())).eigenvalues;
  EXPECT_NEAR(a(0), -2, 1e-12);
  EXPECT_NEAR(a(1), 0, 1e-12);
  EXPECT_NEAR(a(2), 0, 1e-12);
  EXPECT_NEAR(a(3), 2, 1e-12);

  const Matrix z2 = 2 * Z();
  const RealVector b = diagonalize(work_operator(z2, Z())).eigenvalues;
  const double expect[] = {-3, -1, 1, 3};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(b(i), expect[i], 1e-12);

  RealVector w = work_eigenvalues(diagonalize(Z()), diagonalize(z2));
  std::sort(w.data(), w.data() + w.size());
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(w(i), expect[i], 1e-12);

  EXPECT_THROW(work_operator(Z(), Matrix::Identity(4, 4)), InvalidArgument);
}

TEST(WorkOperator, MatchesOracleKron) {
  std::mt19937_64 rng(31);
  const Matrix h0 = oracle::random_hermitian(4, rng), h1 = oracle::random_hermitian(4, rng);
  const Matrix ref = oracle::kron(h1, Matrix::Identity(4, 4)) -
                     oracle::kron(Matrix::Identity(4, 4), h0.conjugate());
  EXPECT_LT(max_abs(work_operator(h1, h0) - ref), 1e-14);
  const RealVector we = work_eigenvalues(diagonalize(h0), diagonalize(h1));
  const Spectrum s0 = diagonalize(h0), s1 = diagonalize(h1);
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m)
      EXPECT_NEAR(we(n * 4 + m), s1.eigenvalues(n) - s0.eigenvalues(m), 1e-12);
}

TEST(Forward, ZToTwoZ) {
  const Spectrum s0 = diagonalize(Z()), s1 = diagonalize(Matrix(2 * Z()));
  const ForwardResult f = forward_distribution(s0, s1, 1.0, Matrix::Identity(2, 2));
  const double c = 2 * std::cosh(1.0);
  EXPECT_NEAR(bin_mass(f.dist, 1.0), std::exp(-1.0) / c, 1e-14);
  EXPECT_NEAR(bin_mass(f.dist, -1.0), std::exp(1.0) / c, 1e-14);
  EXPECT_NEAR(f.dist.total(), 1.0, 1e-14);

  const WorkDistribution r = reverse_distribution(s0, s1, 1.0, Matrix::Identity(2, 2));
  const double c2 = 2 * std::cosh(2.0);
  EXPECT_NEAR(bin_mass(r, -1.0), std::exp(-2.0) / c2, 1e-14);
  EXPECT_NEAR(bin_mass(r, 1.0), std::exp(2.0) / c2, 1e-14);
}

TEST(Forward, TrivialProcess) {
  const Spectrum s = diagonalize(build_tfim(2, 1.0, 0.5));
  const ForwardResult f = forward_distribution(s, s, 1.0, Matrix::Identity(4, 4));
  EXPECT_NEAR(bin_mass(f.dist, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(bin_mass(reverse_distribution(s, s, 1.0, Matrix::Identity(4, 4)), 0.0), 1.0, 1e-12);
}

TEST(Forward, RejectsNonUnitary) {
  const Spectrum s = diagonalize(Z());
  EXPECT_THROW(forward_distribution(s, s, 1.0, 2.0 * Matrix::Identity(2, 2)), ContractViolation);
}

TEST(Forward, TableMatchesDefinition) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 10; ++t) {
    const Instance in = random_instance(rng, 4, 0.9, true);
    const ForwardResult f = forward_distribution(in.s0, in.s1, in.beta, in.u);
    double tot = 0;
    for (const auto& p : f.table.pairs) {
      EXPECT_NEAR(p.p, oracle_p(in, p.m, p.n), 1e-12);
      EXPECT_NEAR(p.w, in.s1.eigenvalues(p.n) - in.s0.eigenvalues(p.m), 1e-12);
      EXPECT_GE(p.p, 0.0);
      tot += p.p;
    }
    EXPECT_NEAR(tot, 1.0, 1e-10);
    EXPECT_NEAR(f.dist.total(), 1.0, 1e-10);
    for (std::size_t i = 1; i < f.dist.bins.size(); ++i)
      EXPECT_LT(f.dist.bins[i - 1].w, f.dist.bins[i].w);
  }
}

TEST(Forward, TfimSixIdentity) {
  const PauliSum h1 = build_tfim(6, 1.0, 0.5);
  const Spectrum s0 = diagonalize(h1.part(TermRole::H0)), s1 = diagonalize(h1);
  const ForwardResult f = forward_distribution(s0, s1, 1.0, Matrix::Identity(64, 64));
  EXPECT_EQ(f.table.pairs.size(), 64u * 64u);
  EXPECT_NEAR(f.dist.total(), 1.0, 1e-10);
}

TEST(Fluctuation, ZToTwoZJarzynskiSum) {
  const Spectrum s0 = diagonalize(Z()), s1 = diagonalize(Matrix(2 * Z()));
  const Matrix I = Matrix::Identity(2, 2);
  const FluctuationResiduals r =
      verify_fluctuation_identities(forward_distribution(s0, s1, 1.0, I).dist,
                                    reverse_distribution(s0, s1, 1.0, I),
                                    free_energy_difference(s0, s1, 1.0));
  EXPECT_NEAR(r.jarzynski_sum, std::cosh(2.0) / std::cosh(1.0), 1e-12);
  EXPECT_LT(r.jarzynski, 1e-12);
  EXPECT_LT(r.crooks_max_bin, 1e-12);
  EXPECT_LT(r.crooks_second_moment, 1e-12);
}

TEST(Fluctuation, RandomInstancesAndSecondMomentBound) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 20; ++t) {
    const Index d = Index{1} << (1 + t % 3);
    const Matrix h0 = oracle::random_hermitian(d, rng);
    const Matrix v = oracle::random_hermitian(d, rng, 0.5);
    const Spectrum s0 = diagonalize(h0), s1 = diagonalize(Matrix(h0 + v));
    const double beta = 0.5 + 0.1 * t;
    const Matrix u = t % 2 ? oracle::random_unitary(d, rng) : Matrix(Matrix::Identity(d, d));
    const FluctuationResiduals r = verify_fluctuation_identities(
        forward_distribution(s0, s1, beta, u).dist, reverse_distribution(s0, s1, beta, u),
        free_energy_difference(s0, s1, beta));
    EXPECT_LT(r.jarzynski, 1e-10);
    EXPECT_LT(r.crooks_max_bin, 1e-10);
    EXPECT_LT(r.crooks_second_moment, 1e-10);
    if (t % 2 == 0) EXPECT_LE(r.reverse_second_moment, std::pow(spectral_norm(v), 2) + 1e-10);
  }
}

TEST(Cutoff, LargestCutoffBoundaries) {
  const Spectrum s0 = diagonalize(Z()), s1 = diagonalize(Matrix(2 * Z()));
  const ForwardResult f = forward_distribution(s0, s1, 1.0, Matrix::Identity(2, 2));
  const double dA = free_energy_difference(s0, s1, 1.0).deltaA;
  EXPECT_NEAR(largest_cutoff(f.dist, 1.0, dA, 0.0).w_l, -1.0, 1e-12);
  // eps >= 6: budget >= 1 = total reweighted mass, so everything passes
  const CutoffReport r = largest_cutoff(f.dist, 1.0, dA, 6.0);
  EXPECT_NEAR(r.w_l, f.dist.w_max() + 1, 1e-12);
  const double full = cutoff_lhs(f.dist, 1.0, dA, 1e9);
  EXPECT_NEAR(full, 1.0, 1e-12);
  EXPECT_TRUE(r.satisfied);
}

TEST(Cutoff, ReportsMatchDirectSumAndFootnote) {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 20; ++t) {
    const Instance in = random_instance(rng, 8, 1.0, t % 2);
    const ForwardResult f = forward_distribution(in.s0, in.s1, in.beta, in.u);
    const double dA = free_energy_difference(in.s0, in.s1, in.beta).deltaA;
    double prev = -1e300;
    for (double eps : {0.0, 0.001, 0.01, 0.05, 0.1, 0.5, 1.0}) {
      const CutoffReport r = largest_cutoff(f.dist, in.beta, dA, eps);
      double direct = 0;
      for (const auto& p : f.table.pairs)
        if (p.w < r.w_l - 1e-9) direct += p.p * std::exp(-in.beta * (p.w - dA));
      EXPECT_NEAR(r.lhs, direct, 1e-12);
      EXPECT_EQ(r.satisfied, r.lhs <= r.budget);
      EXPECT_TRUE(r.satisfied);
      EXPECT_NEAR(r.budget, std::pow(eps / 6, 2), 1e-15);
      EXPECT_GE(std::exp(in.beta * (dA - r.w_l) / 2), 0.986);
      EXPECT_GE(r.w_l, prev);
      prev = r.w_l;
      // the next candidate up must fail
      for (const auto& b : f.dist.bins)
        if (b.w > r.w_l + 1e-9) {
          EXPECT_FALSE(check_cutoff(f.dist, in.beta, dA, eps, b.w).satisfied);
          break;
        }
    }
  }
}

// sum_{w<w_l} P e^{-beta(w - dA)} = ||e^{-beta W/2} Pi_{<w_l} (U x 1) Psi0||^2 e^{beta dA}
TEST(Cutoff, ProjectorFormEquivalence) {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 5; ++t) {
    const Index d = 4;
    const Matrix h0 = oracle::random_hermitian(d, rng), h1 = oracle::random_hermitian(d, rng);
    const Matrix u = oracle::random_unitary(d, rng);
    const double beta = 0.8;
    const Spectrum s0 = diagonalize(h0), s1 = diagonalize(h1);
    const ForwardResult f = forward_distribution(s0, s1, beta, u);
    const double dA = free_energy_difference(s0, s1, beta).deltaA;
    const Vector psi = apply_kron(u, Matrix::Identity(d, d), purification(s0, beta).amplitudes);
    Eigen::SelfAdjointEigenSolver<Matrix> es(work_operator(h1, h0));
    for (const auto& b : f.dist.bins) {
      Vector g(d * d);
      for (Index i = 0; i < d * d; ++i) {
        const double w = es.eigenvalues()(i);
        g(i) = w < b.w - 1e-9 ? std::exp(-beta * w / 2) : 0.0;
      }
      const Vector out = es.eigenvectors() * g.asDiagonal() * es.eigenvectors().adjoint() * psi;
      EXPECT_NEAR(cutoff_lhs(f.dist, beta, dA, b.w), out.squaredNorm() * std::exp(beta * dA),
                  1e-10);
    }
  }
}

TEST(CutoffBounds, Formulas) {
  EXPECT_NEAR(cutoff_bound_general(1.0, 0.6), -10.0, 1e-12);
  EXPECT_NEAR(cutoff_bound_general(0.0, 0.6), 0.0, 1e-15);
  EXPECT_NEAR(cutoff_bound_commuting(1.0), -1.0, 1e-15);
  const LocalityMetadata m{2, 2, 1.0, 0.5, 5};
  EXPECT_NEAR(cutoff_bound_local(m, 6.0 / std::exp(1.0)), -13.0, 1e-12);
  EXPECT_NEAR(cutoff_bound_local(m, 0.005), -5.0 - 8.0 * std::log(1200.0), 1e-12);
  EXPECT_NEAR(cutoff_bound_local(m, 0.005), -61.72, 5e-3);
  EXPECT_NEAR(cutoff_bound_local(m, 6.0), -5.0, 1e-12);
}

TEST(CutoffBounds, GeneralUnitarySatisfied) {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 20; ++t) {
    const Matrix h0 = oracle::random_hermitian(4, rng), h1 = oracle::random_hermitian(4, rng);
    const Matrix u = t % 2 ? oracle::random_unitary(4, rng) : Matrix(Matrix::Identity(4, 4));
    const Spectrum s0 = diagonalize(h0), s1 = diagonalize(h1);
    const double nvu = spectral_norm(Matrix(h1 - u * h0 * u.adjoint()));
    const double w = cutoff_bound_general(nvu, 0.5);
    const double dA = free_energy_difference(s0, s1, 1.0).deltaA;
    EXPECT_TRUE(check_cutoff(forward_distribution(s0, s1, 1.0, u).dist, 1.0, dA, 0.5, w).satisfied);
  }
  // H1 = U H0 U^dagger: no negative work at all
  const Matrix h0 = oracle::random_hermitian(4, rng);
  const Matrix u = oracle::random_unitary(4, rng);
  const Spectrum s0 = diagonalize(h0), s1 = diagonalize(Matrix(u * h0 * u.adjoint()));
  const ForwardResult f = forward_distribution(s0, s1, 1.0, u);
  EXPECT_NEAR(cutoff_lhs(f.dist, 1.0, 0.0, -1e-7), 0.0, 1e-12);
}

TEST(CutoffBounds, CommutingSumBelowIsZero) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 20; ++t) {
    Matrix h0 = Matrix::Zero(8, 8), v = Matrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i) {
      h0(i, i) = u(rng);
      v(i, i) = u(rng);
    }
    const Spectrum s0 = diagonalize(h0), s1 = diagonalize(Matrix(h0 + v));
    const ForwardResult f = forward_distribution(s0, s1, 1.0, Matrix::Identity(8, 8));
    const double w = cutoff_bound_commuting(spectral_norm(v));
    EXPECT_EQ(cutoff_lhs(f.dist, 1.0, 0.0, w - 1e-9), 0.0);
  }
  const Spectrum s0 = diagonalize(Z()), s1 = diagonalize(Matrix(2 * Z()));
  // bins span every pair; the lowest one carrying weight sits exactly at -||V||
  double lowest = 1e300;
  for (const WorkBin& b : forward_distribution(s0, s1, 1.0, Matrix::Identity(2, 2)).dist.bins)
    if (b.P > 1e-14) lowest = std::min(lowest, b.w);
  EXPECT_NEAR(lowest, cutoff_bound_commuting(1.0), 1e-12);
}

TEST(CutoffBounds, LocalSatisfiedOnTfim) {
  for (int n : {4, 6}) {
    const PauliSum h1 = build_tfim(n, 1.0, 0.5);
    const Spectrum s0 = diagonalize(h1.part(TermRole::H0)), s1 = diagonalize(h1);
    const ForwardResult f = forward_distribution(s0, s1, 1.0, Matrix::Identity(s0.size(), s0.size()));
    const double dA = free_energy_difference(s0, s1, 1.0).deltaA;
    for (double eps : {0.05, 0.005}) {
      const double w = cutoff_bound_local(*h1.locality, eps);
      EXPECT_TRUE(check_cutoff(f.dist, 1.0, dA, eps, w).satisfied);
    }
  }
}

TEST(Overlap, TrivialCases) {
  const Spectrum s = diagonalize(build_tfim(3, 1.0, 0.5));
  const LocalityMetadata m{2, 2, 1.0, 0.0, 0};
  const OverlapCheck c = eigenspace_overlap_check(s, s, m, 0.5, 0.0);
  EXPECT_NEAR(c.lhs, 0.0, 1e-12);
  const LocalityMetadata m2{2, 2, 1.0, 0.5, 2};
  EXPECT_GE(eigenspace_overlap_check(s, s, m2, 1.0, 0.5).bound, 1.0);
}

TEST(Overlap, TfimSixGrid) {
  const PauliSum h1 = build_tfim(6, 1.0, 0.5);
  const Spectrum s0 = diagonalize(h1.part(TermRole::H0)), s1 = diagonalize(h1);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j <= i; ++j) {
      const double e0 = -6 + 1.3 * i, e1 = -6 + 1.3 * j - 0.2;
      const OverlapCheck c = eigenspace_overlap_check(s0, s1, *h1.locality, e0, e1);
      EXPECT_LE(c.lhs, c.bound + 1e-12);
    }
}
