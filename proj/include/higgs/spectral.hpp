#pragma once

#include <vector>

#include "higgs/series.hpp"

namespace higgs {

inline constexpr int kDefaultPrecision = 16;

/// Monic p(T) = T^n - a1 T^(n-1) + a2 T^(n-2) - ... + (-1)^n an over k[[z]],
/// with every a_i held to the same working precision.
class SpectralPolynomial {
 public:
  SpectralPolynomial() = default;
  /// a[i] holds a_(i+1).
  SpectralPolynomial(std::vector<PowerSeries> a, int precision = kDefaultPrecision);
  /// From the ordinary monic coefficients: p = T^n + c[n-1] T^(n-1) + ... + c[0].
  static SpectralPolynomial from_monic(const std::vector<PowerSeries>& c, int precision = kDefaultPrecision);

  int n() const { return static_cast<int>(a_.size()); }
  int precision() const { return precision_; }
  /// a_i for 1 <= i <= n, zero for i > n.
  PowerSeries a(int i) const;
  const std::vector<PowerSeries>& coefficients() const { return a_; }
  /// c[0..n-1] with p = T^n + sum c[j] T^j.
  std::vector<PowerSeries> monic_coefficients() const;

  bool operator==(const SpectralPolynomial& other) const;

 private:
  std::vector<PowerSeries> a_;
  int precision_ = kDefaultPrecision;
};

/// c0 + c1 T + ... + c_(n-1) T^(n-1) in V_p = k((z))[T]/p(T).
struct AlgebraElement {
  std::vector<LaurentSeries> c;

  static AlgebraElement scalar(const LaurentSeries& s, int n);
  static AlgebraElement one(int n, int precision);
  /// T^k for 0 <= k < n.
  static AlgebraElement t_power(int k, int n, int precision);

  int n() const { return static_cast<int>(c.size()); }
  int order() const;
  int precision() const;
  bool is_zero() const;
  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const LaurentSeries& s) const;
  AlgebraElement shifted(int k) const;
  AlgebraElement truncated(int precision) const;
  bool operator==(const AlgebraElement& o) const;
};

class SeriesMatrix {
 public:
  SeriesMatrix() = default;
  SeriesMatrix(int rows, int cols, int precision);
  static SeriesMatrix identity(int n, int precision);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  LaurentSeries& operator()(int i, int j) { return e_[static_cast<std::size_t>(i * cols_ + j)]; }
  const LaurentSeries& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * cols_ + j)]; }

  SeriesMatrix operator*(const SeriesMatrix& o) const;
  SeriesMatrix operator+(const SeriesMatrix& o) const;
  bool operator==(const SeriesMatrix& o) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<LaurentSeries> e_;
};

/// Division-free determinant (expansion over column subsets).
LaurentSeries determinant(const SeriesMatrix& m);
/// Gaussian elimination over k((z)); throws NotInvertible when singular to precision.
SeriesMatrix inverse(const SeriesMatrix& m);
std::vector<LaurentSeries> solve(const SeriesMatrix& m, std::vector<LaurentSeries> rhs);

SeriesMatrix companion_matrix(const SpectralPolynomial& p);
/// Column j holds the coordinates of a * T^j.
SeriesMatrix multiplication_matrix(const AlgebraElement& a, const SpectralPolynomial& p);

AlgebraElement mul_mod(const AlgebraElement& a, const AlgebraElement& b, const SpectralPolynomial& p);
AlgebraElement invert_element(const AlgebraElement& a, const SpectralPolynomial& p);
/// a^k, negative k through invert_element.
AlgebraElement power(const AlgebraElement& a, int k, const SpectralPolynomial& p);
/// The class of T in V_p (the scalar a_1 when n = 1).
AlgebraElement t_element(const SpectralPolynomial& p);

/// Tr(T^k) for k = 0..kmax via the Newton recursion.
std::vector<LaurentSeries> power_traces(const SpectralPolynomial& p, int kmax);
/// Tr(T^k) for k >= -1.
LaurentSeries power_trace(int k, const SpectralPolynomial& p);
/// Tr(T^k) as the k x k determinant with first column (a1, 2a2, ..., k ak),
/// a_(i-j) below the diagonal and ones above it.
LaurentSeries power_trace_determinant(int k, const SpectralPolynomial& p);
LaurentSeries element_trace(const AlgebraElement& a, const SpectralPolynomial& p);
/// Res_{z=0} Tr(a b) dz.
Rational trace_pairing(const AlgebraElement& a, const AlgebraElement& b, const SpectralPolynomial& p);

/// a_i = sum of principal i x i minors.
SpectralPolynomial matrix_char_coefficients(const SeriesMatrix& m);
/// Resultant of p and p' (the norm of p'(T)), up to sign.
LaurentSeries discriminant(const SpectralPolynomial& p);
bool is_separable(const SpectralPolynomial& p);

}  // namespace higgs
