#include "tspp/hamiltonians.hpp"

#include <algorithm>
#include <cmath>

#include "tspp/errors.hpp"

namespace tspp {

PauliString PauliString::parse(const std::string& s) {
  PauliString p;
  p.factors.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'I': case 'i': p.factors.push_back(Pauli::I); break;
      case 'X': case 'x': p.factors.push_back(Pauli::X); break;
      case 'Y': case 'y': p.factors.push_back(Pauli::Y); break;
      case 'Z': case 'z': p.factors.push_back(Pauli::Z); break;
      default: throw InvalidArgument("bad Pauli label '" + std::string(1, c) + "' in \"" + s + "\"");
    }
  }
  return p;
}

PauliString PauliString::identity(int n) {
  PauliString p;
  p.factors.assign(n, Pauli::I);
  return p;
}

PauliString PauliString::single(int n, int q, Pauli op) {
  auto p = identity(n);
  p.factors.at(q) = op;
  return p;
}

PauliString PauliString::pair(int n, int q1, Pauli p1, int q2, Pauli p2) {
  auto p = identity(n);
  p.factors.at(q1) = p1;
  p.factors.at(q2) = p2;
  return p;
}

int PauliString::weight() const {
  return static_cast<int>(std::count_if(factors.begin(), factors.end(),
                                        [](Pauli p) { return p != Pauli::I; }));
}

std::string PauliString::str() const {
  std::string s;
  for (Pauli p : factors) s.push_back(static_cast<char>(p));
  return s;
}

// P|b> = phase(b) |b ^ flip>, qubit q sits at bit (n-1-q)
Matrix PauliString::dense() const {
  const int n = size();
  const Index dim = Index{1} << n;
  std::uint64_t flip = 0;
  for (int q = 0; q < n; ++q)
    if (factors[q] == Pauli::X || factors[q] == Pauli::Y) flip |= std::uint64_t{1} << (n - 1 - q);
  Matrix m = Matrix::Zero(dim, dim);
  for (Index b = 0; b < dim; ++b) {
    cplx ph = 1.0;
    for (int q = 0; q < n; ++q) {
      const bool bit = (static_cast<std::uint64_t>(b) >> (n - 1 - q)) & 1u;
      switch (factors[q]) {
        case Pauli::Z: if (bit) ph = -ph; break;
        case Pauli::Y: ph *= bit ? cplx(0, -1) : cplx(0, 1); break;
        default: break;
      }
    }
    m(static_cast<Index>(static_cast<std::uint64_t>(b) ^ flip), b) = ph;
  }
  return m;
}

void PauliSum::add(double coeff, PauliString s, TermRole role) {
  if (s.size() != n)
    throw InvalidArgument("Pauli string length " + std::to_string(s.size()) +
                          " does not match qubit count " + std::to_string(n));
  terms.push_back({coeff, std::move(s), role});
}

Matrix PauliSum::dense() const {
  Matrix m = Matrix::Zero(dim(), dim());
  for (const auto& t : terms) m += t.coeff * t.string.dense();
  return m;
}

PauliSum PauliSum::part(TermRole role) const {
  PauliSum out;
  out.n = n;
  for (const auto& t : terms)
    if (t.role == role) out.terms.push_back(t);
  return out;
}

LocalityMetadata scan_locality(const PauliSum& h) {
  LocalityMetadata md;
  std::vector<int> touch0(h.n, 0), touch1(h.n, 0);
  for (const auto& t : h.terms) {
    md.k = std::max(md.k, t.string.weight());
    auto& touch = t.role == TermRole::H0 ? touch0 : touch1;
    for (int q = 0; q < h.n; ++q)
      if (t.string.touches(q)) ++touch[q];
    if (t.role == TermRole::H0) {
      md.h = std::max(md.h, std::abs(t.coeff));
    } else {
      md.v = std::max(md.v, std::abs(t.coeff));
      ++md.M;
    }
  }
  for (int q = 0; q < h.n; ++q) md.g = std::max({md.g, touch0[q], touch1[q]});
  return md;
}

PauliSum build_tfim(int n, double field, double coupling) {
  if (n < 1) throw InvalidArgument("build_tfim: n must be >= 1");
  PauliSum h;
  h.n = n;
  for (int j = 0; j < n; ++j) h.add(field, PauliString::single(n, j, Pauli::Z), TermRole::H0);
  for (int j = 0; j + 1 < n; ++j)
    h.add(-coupling, PauliString::pair(n, j, Pauli::X, j + 1, Pauli::X), TermRole::V);
  h.locality = scan_locality(h);
  return h;
}

Matrix Spectrum::reconstruct() const {
  return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
}

Spectrum diagonalize(const Matrix& h) {
  if (h.rows() != h.cols()) throw ContractViolation("diagonalize: matrix is not square");
  const double scale = std::max(1.0, max_abs(h));
  if (hermiticity_defect(h) > 1e-9 * scale)
    throw ContractViolation("diagonalize: matrix is not Hermitian");
  Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) throw ContractViolation("diagonalize: eigensolver failed");
  Spectrum s;
  s.eigenvalues = es.eigenvalues();
  s.eigenvectors = es.eigenvectors();
  s.source_dim = h.rows();
  // largest-magnitude component real positive; first index wins near-ties
  for (Index c = 0; c < s.eigenvectors.cols(); ++c) {
    auto col = s.eigenvectors.col(c);
    const double top = col.cwiseAbs().maxCoeff();
    Index arg = 0;
    while (std::abs(col(arg)) < top * (1.0 - 1e-10)) ++arg;
    col *= std::conj(col(arg)) / std::abs(col(arg));
    col(arg) = std::abs(col(arg));
  }
  return s;
}

Spectrum diagonalize(const PauliSum& h) { return diagonalize(h.dense()); }

Matrix conjugate(const Matrix& h) { return h.conjugate(); }

double spectral_norm(const Spectrum& s) {
  return s.size() ? std::max(std::abs(s.min()), std::abs(s.max())) : 0.0;
}

double spectral_norm(const Matrix& h) { return spectral_norm(diagonalize(h)); }

double degeneracy_tolerance(const Spectrum& s) {
  return 1e-9 * std::max(1.0, spectral_norm(s));
}

}  // namespace tspp
