#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace higgs {

using Rational = mpq_class;

/// Parses "p/q" or "p"; rejects a zero denominator. Result is canonical.
Rational parse_rational(std::string_view text);
/// Always "num/den", e.g. "0/1", "-3/2".
std::string rational_string(const Rational& q);

/// Truncated Laurent series over the rationals: sum c_e z^e for
/// order <= e < precision, plus an unknown tail O(z^precision).
///
/// Normalized: a nonzero series has a nonzero coefficient at order();
/// a series that vanishes on its whole known window has order() == precision()
/// and no stored coefficients.
class LaurentSeries {
 public:
  LaurentSeries() = default;

  static LaurentSeries zero(int precision);
  static LaurentSeries constant(const Rational& c, int precision);
  static LaurentSeries monomial(const Rational& c, int exponent, int precision);
  /// coeffs[i] is the coefficient of z^(order + i); entries at or beyond
  /// `precision` are dropped.
  static LaurentSeries from_coeffs(int order, std::vector<Rational> coeffs, int precision);
  static LaurentSeries from_terms(const std::map<int, Rational>& terms, int precision);

  int order() const { return order_; }
  int precision() const { return precision_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_power_series() const { return order_ >= 0; }

  /// Coefficient of z^e. Throws PrecisionError when e >= precision().
  Rational coeff(int e) const;
  /// Nonzero terms in increasing exponent order.
  std::map<int, Rational> terms() const;

  LaurentSeries truncated(int precision) const;
  /// Reinterprets the known coefficients as an exact polynomial padded with
  /// zeros up to `precision`. Only meaningful when the caller knows the
  /// truncated tail is genuinely zero (or is iterating toward a solution).
  LaurentSeries extended(int precision) const;
  /// Multiplication by z^k.
  LaurentSeries shifted(int k) const;
  LaurentSeries derivative() const;

  LaurentSeries operator-() const;
  LaurentSeries& operator+=(const LaurentSeries& rhs);
  LaurentSeries& operator-=(const LaurentSeries& rhs);
  LaurentSeries& operator*=(const LaurentSeries& rhs);
  LaurentSeries& operator*=(const Rational& c);

  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(LaurentSeries a, const Rational& c) { return a *= c; }
  friend LaurentSeries operator*(const Rational& c, LaurentSeries a) { return a *= c; }

  /// Equal on the common known window [min order, min precision).
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);
  friend bool operator!=(const LaurentSeries& a, const LaurentSeries& b) { return !(a == b); }
  /// Same coefficients and same precision.
  bool identical(const LaurentSeries& other) const;

  std::string to_string() const;

 private:
  void normalize();

  int order_ = 0;
  int precision_ = 0;
  std::vector<Rational> coeffs_;
};

using PowerSeries = LaurentSeries;

LaurentSeries invert(const LaurentSeries& a);
LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries pow(const LaurentSeries& a, int k);
/// Coefficient of z^-1.
Rational residue(const LaurentSeries& a);
/// f(g(z)) for power series f, g with g(0) = 0.
PowerSeries compose(const PowerSeries& f, const PowerSeries& g);

/// Polynomial relation R(s) = sum_m coeffs[m] * s^m in an unknown series s.
struct SeriesRelation {
  std::vector<LaurentSeries> coeffs;

  LaurentSeries evaluate(const LaurentSeries& s) const;
  LaurentSeries derivative_at(const LaurentSeries& s) const;
};

/// Newton iteration with precision doubling for a simple root of `relation`
/// starting from `initial_guess`.
PowerSeries solve_implicit(const SeriesRelation& relation, const PowerSeries& initial_guess,
                           int target_precision);

}  // namespace higgs
