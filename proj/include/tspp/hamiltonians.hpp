#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tspp/linalg.hpp"

namespace tspp {

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

struct PauliString {
  std::vector<Pauli> factors;

  static PauliString parse(const std::string& s);
  static PauliString identity(int n);
  // single-site or two-site helpers, qubit 0 leftmost
  static PauliString single(int n, int q, Pauli p);
  static PauliString pair(int n, int q1, Pauli p1, int q2, Pauli p2);

  int size() const { return static_cast<int>(factors.size()); }
  int weight() const;
  bool touches(int q) const { return factors[q] != Pauli::I; }
  std::string str() const;
  Matrix dense() const;
};

// Terms carry a role so that H1 = H0 + V can be split again for locality
// bounds that treat the two parts separately.
enum class TermRole { H0, V };

struct PauliTerm {
  double coeff = 0.0;
  PauliString string;
  TermRole role = TermRole::H0;
};

struct LocalityMetadata {
  int k = 0;       // max qubits per term
  int g = 0;       // max terms of one part touching a qubit
  double h = 0.0;  // max |coeff| over H0 terms
  double v = 0.0;  // max |coeff| over V terms
  int M = 0;       // number of V terms
  bool operator==(const LocalityMetadata&) const = default;
};

struct PauliSum {
  int n = 0;
  std::vector<PauliTerm> terms;
  std::optional<LocalityMetadata> locality;

  void add(double coeff, PauliString s, TermRole role = TermRole::H0);
  Matrix dense() const;
  PauliSum part(TermRole role) const;
  Index dim() const { return Index{1} << n; }
};

LocalityMetadata scan_locality(const PauliSum& h);

// field * sum Z_j - coupling * sum X_j X_{j+1}, open chain.
// Z terms are tagged H0, XX terms V.
PauliSum build_tfim(int n, double field, double coupling);

struct Spectrum {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns
  Index source_dim = 0;

  Index size() const { return eigenvalues.size(); }
  Matrix reconstruct() const;
  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }
};

Spectrum diagonalize(const Matrix& h);
Spectrum diagonalize(const PauliSum& h);

Matrix conjugate(const Matrix& h);
double spectral_norm(const Matrix& h);
double spectral_norm(const Spectrum& s);

// eigenvalue tolerance used for degeneracy decisions downstream
double degeneracy_tolerance(const Spectrum& s);

}  // namespace tspp
