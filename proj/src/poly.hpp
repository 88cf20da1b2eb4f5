#pragma once

// Dense univariate polynomials used internally by the factorization code.

#include <utility>
#include <vector>

#include "higgs/series.hpp"
#include "higgs/spectral.hpp"

namespace higgs::detail {

/// Coefficients low to high over k((z)); the last entry is the leading one.
using Poly = std::vector<LaurentSeries>;
/// Exact rational polynomial, low to high, no trailing zeros.
using RPoly = std::vector<Rational>;

Poly poly_from_spectral(const SpectralPolynomial& p);
SpectralPolynomial spectral_from_poly(const Poly& q);
int poly_precision(const Poly& a);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
/// Division by a polynomial whose leading coefficient is exactly 1.
std::pair<Poly, Poly> poly_divmod_monic(const Poly& a, const Poly& h);
Poly poly_truncated(const Poly& a, int precision);
Poly poly_extended(const Poly& a, int precision);
/// Drops leading coefficients that vanish to their precision.
void poly_trim(Poly& a);
/// a(T + c).
Poly poly_shift(const Poly& a, const Rational& c);
Poly poly_from_rational(const RPoly& a, int precision);
RPoly poly_residue(const Poly& a);

void rpoly_trim(RPoly& a);
RPoly rpoly_mul(const RPoly& a, const RPoly& b);
RPoly rpoly_sub(const RPoly& a, const RPoly& b);
std::pair<RPoly, RPoly> rpoly_divmod(const RPoly& a, const RPoly& b);
Rational rpoly_eval(const RPoly& a, const Rational& x);
/// s, t with s a + t b = 1 for coprime a, b.
std::pair<RPoly, RPoly> rpoly_bezout(const RPoly& a, const RPoly& b);

}  // namespace higgs::detail
