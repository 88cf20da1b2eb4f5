#pragma once

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "higgs/series.hpp"
#include "higgs/spectral.hpp"

namespace higgs::testing {

/// S({{-1, "2"}, {0, "3"}}, 8) = 2 z^-1 + 3 + O(z^8)
inline LaurentSeries S(std::initializer_list<std::pair<int, const char*>> terms, int precision) {
  std::map<int, Rational> m;
  for (const auto& [e, c] : terms) m[e] += parse_rational(c);
  return LaurentSeries::from_terms(m, precision);
}

inline Rational Q(const char* s) { return parse_rational(s); }

class Random {
 public:
  explicit Random(unsigned seed) : gen_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  Rational rational(int span = 5) {
    Rational q(integer(-span, span), integer(1, 3));
    q.canonicalize();
    return q;
  }

  LaurentSeries series(int order, int precision, int density_pct = 70) {
    std::map<int, Rational> m;
    for (int e = order; e < precision; ++e)
      if (integer(1, 100) <= density_pct) m[e] = rational();
    return LaurentSeries::from_terms(m, precision);
  }

  /// Series with a nonzero coefficient at `order`.
  LaurentSeries unit_like(int order, int precision) {
    LaurentSeries s = series(order, precision);
    Rational lead;
    do lead = rational(); while (lead == 0);
    return s - LaurentSeries::monomial(s.coeff(order), order, precision) +
           LaurentSeries::monomial(lead, order, precision);
  }

  SpectralPolynomial polynomial(int n, int precision) {
    std::vector<PowerSeries> a;
    for (int i = 0; i < n; ++i) a.push_back(series(0, precision));
    return SpectralPolynomial(std::move(a), precision);
  }

  AlgebraElement element(int n, int order, int precision) {
    AlgebraElement e;
    for (int i = 0; i < n; ++i) e.c.push_back(series(order, precision));
    return e;
  }

  std::mt19937& engine() { return gen_; }

 private:
  std::mt19937 gen_;
};

}  // namespace higgs::testing
