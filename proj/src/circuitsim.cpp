#include "tspp/circuitsim.hpp"

#include <algorithm>
#include <cmath>

#include "tspp/errors.hpp"

namespace tspp {

Matrix prepare_unitary(const Vector& b) {
  const Index A = b.size();
  if (std::abs(b.norm() - 1.0) > 1e-12) throw InvalidArgument("prepare_unitary: b must be normalized");
  Matrix m(A, A + 1);
  m.col(0) = b;
  m.rightCols(A) = Matrix::Identity(A, A);
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(A, A);
  // first column is b up to a phase; the rest stays orthogonal to it
  q.col(0) = b;
  return q;
}

int lcu_ancilla_count(int J) {
  int m = 0;
  while ((Index(1) << m) < 2 * Index(J) + 2) ++m;
  return m;
}

BlockEncodingResult simulate_lcu(const std::vector<cplx>& coeffs, const Matrix& U,
                                 const Vector& psi) {
  if (coeffs.size() % 2 == 0) throw InvalidArgument("simulate_lcu: need 2J+1 coefficients");
  const int J = static_cast<int>(coeffs.size() / 2);
  const int m = lcu_ancilla_count(J);
  const Index A = Index(1) << m, D = psi.size();
  if (U.rows() != D || U.cols() != D) throw InvalidArgument("simulate_lcu: dimension mismatch");
  if (unitarity_defect(U) > 1e-10) throw ContractViolation("simulate_lcu: U is not unitary");

  double alpha = 0.0;
  for (const auto& c : coeffs) alpha += std::abs(c);
  if (!(alpha > 0)) throw InvalidArgument("simulate_lcu: all coefficients vanish");
  Vector b = Vector::Zero(A);
  for (std::size_t j = 0; j < coeffs.size(); ++j) b(j) = std::sqrt(coeffs[j] / alpha);
  b /= b.norm();  // sum |b_j|^2 = 1 up to roundoff
  const Matrix B = prepare_unitary(b);

  // rows: ancilla value, columns: system index
  Matrix st = B.col(0) * psi.transpose();
  Matrix p = U;
  for (int t = 0; t < m; ++t) {
    const Matrix pt = p.transpose();
    for (Index a = 0; a < A; ++a)
      if (a >> t & 1) st.row(a) = st.row(a) * pt;
    if (t + 1 < m) p = p * p;
  }
  st = B.transpose() * st;
  st = st * matrix_power(U, -J).transpose();

  BlockEncodingResult r;
  r.ancilla_count = m;
  r.top_block = st.row(0).transpose();
  r.orth_norm = st.bottomRows(A - 1).norm();
  r.full_state.resize(A * D);
  for (Index a = 0; a < A; ++a) r.full_state.segment(a * D, D) = st.row(a).transpose();
  return r;
}

BlockEncodingResult simulate_lcu(const FourierSeries& s, const Matrix& U, const Vector& psi) {
  return simulate_lcu(s.coeffs, U, psi);
}

Vector lcu_direct(const std::vector<cplx>& coeffs, const Matrix& U, const Vector& psi) {
  const int J = static_cast<int>(coeffs.size() / 2);
  double alpha = 0.0;
  for (const auto& c : coeffs) alpha += std::abs(c);
  Vector acc = coeffs[J] * psi;
  Vector fwd = psi, bwd = psi;
  const Matrix Ud = U.adjoint();
  for (int j = 1; j <= J; ++j) {
    fwd = U * fwd;
    bwd = Ud * bwd;
    acc += coeffs[J + j] * fwd + coeffs[J - j] * bwd;
  }
  return acc / alpha;
}

ChebyshevSplit chebyshev_split(const FourierSeries& s) {
  ChebyshevSplit c;
  const int J = s.J();
  c.alpha = s.l1;
  for (int j = 0; j <= J; ++j)
    if (std::abs(s.alpha(-j) - std::conj(s.alpha(j))) > 1e-12 * std::max(1.0, std::abs(s.alpha(j))))
      throw InvalidArgument("chebyshev_split: coefficients are not conjugate symmetric");
  c.p1.resize(J + 1);
  c.q2.resize(J);
  c.p1[0] = s.alpha(0).real() / c.alpha;
  for (int j = 1; j <= J; ++j) {
    c.p1[j] = 2.0 * s.alpha(j).real() / c.alpha;
    c.q2[j - 1] = -2.0 * s.alpha(j).imag() / c.alpha;
  }
  return c;
}

double chebyshev_T(int k, double y) {
  y = std::clamp(y, -1.0, 1.0);
  return std::cos(k * std::acos(y));
}

double chebyshev_R(int k, double y) {
  y = std::clamp(y, -1.0, 1.0);
  const double g = std::acos(y);
  const double s = std::sin(g);
  if (std::abs(s) < 1e-300) return (k + 1) * (y > 0 || k % 2 == 0 ? 1.0 : -1.0);
  return std::sin((k + 1) * g) / s;
}

double eval_even_T(const std::vector<double>& c, double y) {
  const double g = std::acos(std::clamp(y, -1.0, 1.0));
  double acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) acc += c[j] * std::cos(2.0 * j * g);
  return acc;
}

double eval_odd_R(const std::vector<double>& c, double y) {
  double acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) acc += c[j] * chebyshev_R(2 * int(j) + 1, y);
  return acc;
}

double eval_sqrt_odd_R(const std::vector<double>& c, double y, int sign) {
  // sqrt(1-y^2) R_{2j+1}(y) = sin((2j+2) acos y)
  const double g = std::acos(std::clamp(y, -1.0, 1.0));
  double acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) acc += c[j] * std::sin((2.0 * j + 2.0) * g);
  return sign * acc;
}

Eigen::Matrix2cd qsp_unitary(const std::vector<double>& phases, double y, int sign) {
  const cplx I(0, 1);
  const double s = sign * std::sqrt(std::max(0.0, 1.0 - y * y));
  Eigen::Matrix2cd W;
  W << y, I * s, I * s, y;
  Eigen::Matrix2cd v = Eigen::Matrix2cd::Identity();
  for (std::size_t k = 0; k < phases.size(); ++k) {
    if (k > 0) v = v * W;
    Eigen::Matrix2cd a = Eigen::Matrix2cd::Zero();
    a(0, 0) = std::polar(1.0, phases[k]);
    a(1, 1) = std::polar(1.0, -phases[k]);
    v = v * a;
  }
  return v;
}

namespace {

// two-branch register: x0 holds the q=0 amplitude block, x1 the q=1 block
struct QubitBlock {
  Vector x0, x1;
};

enum class Op { Phase, Had, C0U, C0Ud, C1U, C1Ud };
struct Gate {
  Op op;
  double phi = 0.0;
};

std::vector<Gate> compile_phases(const std::vector<double>& phi) {
  const int d = static_cast<int>(phi.size()) - 1;
  std::vector<Gate> g;
  g.push_back({Op::Phase, phi[d]});
  for (int r = 1; r <= d; ++r) {
    g.push_back({Op::Had});
    g.push_back({r % 2 == 1 ? Op::C0U : Op::C1Ud});
    g.push_back({Op::Had});
    g.push_back({Op::Phase, phi[d - r]});
  }
  return g;
}

Gate inverse(Gate g) {
  switch (g.op) {
    case Op::Phase: g.phi = -g.phi; break;
    case Op::Had: break;
    case Op::C0U: g.op = Op::C0Ud; break;
    case Op::C0Ud: g.op = Op::C0U; break;
    case Op::C1U: g.op = Op::C1Ud; break;
    case Op::C1Ud: g.op = Op::C1U; break;
  }
  return g;
}

void apply(const Gate& g, QubitBlock& b, const Matrix& U, const Matrix& Ud) {
  switch (g.op) {
    case Op::Phase:
      b.x0 *= std::polar(1.0, g.phi);
      b.x1 *= std::polar(1.0, -g.phi);
      break;
    case Op::Had: {
      const double h = std::sqrt(0.5);
      Vector a = (b.x0 + b.x1) * h;
      b.x1 = (b.x0 - b.x1) * h;
      b.x0 = std::move(a);
      break;
    }
    case Op::C0U: b.x0 = U * b.x0; break;
    case Op::C0Ud: b.x0 = Ud * b.x0; break;
    case Op::C1U: b.x1 = U * b.x1; break;
    case Op::C1Ud: b.x1 = Ud * b.x1; break;
  }
}

void run(const std::vector<Gate>& gs, bool adjoint, QubitBlock& b, const Matrix& U,
         const Matrix& Ud) {
  if (!adjoint) {
    for (const auto& g : gs) apply(g, b, U, Ud);
  } else {
    for (auto it = gs.rbegin(); it != gs.rend(); ++it) apply(inverse(*it), b, U, Ud);
  }
}

// c * X on the q register
void apply_x(QubitBlock& b, cplx c) {
  std::swap(b.x0, b.x1);
  b.x0 *= c;
  b.x1 *= c;
}

}  // namespace

BlockEncodingResult simulate_qsp(const QspPhaseSet& ph, const Matrix& U, const Vector& psi) {
  if (!ph.certified())
    throw CertificationFailure("simulate_qsp: phase residual above 1e-6, refusing to simulate");
  if (ph.phases1.size() % 2 == 0 || ph.phases2.size() % 2 == 0)
    throw InvalidArgument("simulate_qsp: phase lists must have odd length");
  const Index D = psi.size();
  const Matrix Ud = U.adjoint();
  const auto g1 = compile_phases(ph.phases1);
  const auto g2 = compile_phases(ph.phases2);
  const cplx I(0, 1);

  // branches indexed by (a1, a2); each starts from (1/2)|0>|psi>
  QubitBlock br[2][2];
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2) br[a1][a2] = {0.5 * psi, Vector::Zero(D)};
  run(g1, false, br[1][1], U, Ud);
  run(g1, true, br[0][1], U, Ud);
  apply_x(br[1][0], -I);  // e^{-i pi X / 2}
  run(g2, false, br[1][0], U, Ud);
  run(g2, true, br[0][0], U, Ud);
  apply_x(br[0][0], I);

  BlockEncodingResult r;
  r.ancilla_count = 3;
  r.full_state.resize(8 * D);
  for (int b1 = 0; b1 < 2; ++b1)
    for (int b2 = 0; b2 < 2; ++b2) {
      QubitBlock out{Vector::Zero(D), Vector::Zero(D)};
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
          const double sg = ((a1 & b1) ^ (a2 & b2)) ? -0.5 : 0.5;
          out.x0 += sg * br[a1][a2].x0;
          out.x1 += sg * br[a1][a2].x1;
        }
      const Index base = (b1 * 4 + b2 * 2) * D;
      r.full_state.segment(base, D) = out.x0;
      r.full_state.segment(base + D, D) = out.x1;
    }
  r.top_block = r.full_state.head(D);
  r.orth_norm = r.full_state.tail(7 * D).norm();
  return r;
}

AmplificationResult amplitude_amplification(const Vector& prepared, Index good_dim,
                                            int max_rounds) {
  if (good_dim <= 0 || good_dim > prepared.size())
    throw InvalidArgument("amplitude_amplification: bad good-subspace size");
  const Vector s = prepared / prepared.norm();
  const double a = s.head(good_dim).norm();
  if (!(a > 1e-300)) throw CertificationFailure("amplitude_amplification: zero success amplitude");
  const double th = std::asin(std::min(1.0, a));

  auto score = [&](long k) { return std::pow(std::sin((2 * k + 1) * th), 2); };
  long best = 0;
  const long k0 = std::max(0L, static_cast<long>(std::floor(kPi / (4 * th) - 0.5)));
  for (long k : {k0, k0 + 1})
    if (k <= max_rounds && score(k) > score(best)) best = k;

  Vector x = s;
  for (long k = 0; k < best; ++k) {
    x.head(good_dim) = -x.head(good_dim);            // 1 - 2P
    x -= 2.0 * s * s.dot(x);                          // 1 - 2|s><s|
    x = -x;
  }
  AmplificationResult out;
  const Vector good = x.head(good_dim);
  out.report.rounds_used = static_cast<int>(best);
  out.report.initial_amplitude = a;
  out.report.final_overlap = good.norm();
  out.report.predicted_amplitude = std::abs(std::sin((2 * best + 1) * th));
  out.state = good / good.norm();
  return out;
}

}  // namespace tspp
