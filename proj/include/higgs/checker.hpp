#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "higgs/grassmann.hpp"
#include "higgs/ramification.hpp"

namespace higgs {

struct CheckerConfig {
  Window window{-8, 8};
  int cutoff = kDefaultCutoff;
  /// Working precision of p; must cover the widest window used.
  int precision = 64;
  /// Exponent of the z^-gamma normalization in the residue equations.
  int gamma = 0;

  /// Window, cutoff and precision all doubled.
  CheckerConfig doubled() const;
};

struct Residual {
  int u = 0;  ///< index into the window basis of T W^⊥ for this f
  int f = 0;  ///< index into the generators of Ω^-1
  int v = 0;  ///< index into the window basis of W
  Rational value;
};

struct CheckReport {
  bool contained = false;
  Window window;
  std::vector<Residual> residuals;
  bool consistent = true;
  /// From check(): whether every residual vanished, and whether the
  /// power-trace expansion reproduced the table (empty if it did not run).
  bool residuals_vanish = false;
  std::optional<bool> expansion_agrees;
  /// Index of W, when it was needed.
  std::optional<int> index;
  /// Set when the index equals (r - n) / 2.
  bool excluded_index = false;
};

/// T b ∈ W·Ω for every window basis vector b of W.
CheckReport check_containment(const GrassmannPoint& W, const GrassmannPoint& omega, const CheckerConfig& cfg);

/// Per generator f of Ω^-1: the window of T W^⊥ that pairs with f·W.
struct ResidualBlock {
  LaurentSeries f;
  GrassmannPoint tw_perp;
};

struct ResidualSetup {
  SpectralPolynomial p;
  GrassmannPoint W;
  std::vector<ResidualBlock> blocks;
};

ResidualSetup residual_setup(const GrassmannPoint& W, const GrassmannPoint& omega_inv, const CheckerConfig& cfg);
/// Res Tr(u f v z^-gamma) over all (u, f, v).
std::vector<Residual> evaluate_residuals(const ResidualSetup& setup, int gamma);

/// The pairing of T W^⊥ with Ω^-1 W; contained is true iff every entry is 0.
CheckReport residual_matrix(const GrassmannPoint& W, const GrassmannPoint& omega_inv, const CheckerConfig& cfg);

/// The same entries through sum_k sum_(i+j=k) Res(u(i) f v(j) Tr(T^(k-1)) z^-gamma),
/// with u(i) the coordinates of T times the T W^⊥ basis vector.
CheckReport totally_ramified_residuals(const GrassmannPoint& W, const GrassmannPoint& omega_inv,
                                       const CheckerConfig& cfg);

/// Containment, residual matrix and (for partition (n)) the expansion, with
/// the consistency flag set from all of them.
CheckReport check(const GrassmannPoint& W, const GrassmannPoint& omega, const GrassmannPoint& omega_inv,
                  const CheckerConfig& cfg);

struct Trivialization {
  SeriesMatrix P;  ///< P A P^-1 is the companion matrix of p
  SpectralPolynomial p;
};

Trivialization cyclic_trivialization(const SeriesMatrix& a);

/// Sparse polynomial over the rationals in a fixed number of variables.
class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}
  static MultiPoly constant(int nvars, const Rational& c);
  static MultiPoly variable(int nvars, int i);

  int nvars() const { return nvars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  /// Exact quotient; throws NotDivisible.
  MultiPoly divided_by(const MultiPoly& d) const;
  /// Substitute a value for variable i (the variable stays, with degree 0).
  MultiPoly substituted(int i, const MultiPoly& value) const;
  MultiPoly with_variables_swapped(int i, int j) const;
  std::string to_string() const;

  void add_term(const Exponents& e, const Rational& c);

 private:
  int nvars_;
  std::map<Exponents, Rational> terms_;
};

struct TauDeterminant {
  /// Variable index of x_k on component i is i * N + k.
  int N = 0;
  int r = 0;
  MultiPoly determinant;
  MultiPoly vandermonde;
  MultiPoly tau;
};

/// f[j][i] is the j-th function on component i, a power series truncated
/// below `degree` in its local parameter.
TauDeterminant tau_from_basis(const std::vector<std::vector<LaurentSeries>>& f, int N, int degree);

/// Basis of V+ ∩ T_•^N W from the window, evaluated on each branch.
/// Requires dim = N r and V = V+ + T_•^N W inside the window.
TauDeterminant abel_tau_determinant(const GrassmannPoint& W, int N, int degree);

struct HiggsFixture {
  std::string name;
  SpectralPolynomial p;
  GrassmannPoint W;
  GrassmannPoint Omega;
  GrassmannPoint Omega_inv;
  /// Expected verdict by construction; empty for perturbed instances until checked.
  std::optional<bool> expected;
};

/// Positive fixtures W = A{h, hT, .., hT^(n-1)} with Ω = z^e A, the
/// projective-line fixtures, and single-generator perturbations.
std::vector<HiggsFixture> fixture_catalogue(const CheckerConfig& cfg);
std::vector<std::string> fixture_names();
HiggsFixture named_fixture(const std::string& name, const CheckerConfig& cfg);

}  // namespace higgs
