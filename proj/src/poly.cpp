#include "poly.hpp"

#include <algorithm>

#include "higgs/errors.hpp"

namespace higgs::detail {

Poly poly_from_spectral(const SpectralPolynomial& p) {
  Poly out = p.monic_coefficients();
  out.push_back(LaurentSeries::constant(1, p.precision()));
  return out;
}

int poly_precision(const Poly& a) {
  int prec = a.empty() ? 0 : a.front().precision();
  for (const auto& c : a) prec = std::min(prec, c.precision());
  return prec;
}

SpectralPolynomial spectral_from_poly(const Poly& q) {
  if (q.size() < 2) fail(ErrorKind::InvalidArgument, "factor must have degree >= 1");
  if (q.back() != LaurentSeries::constant(1, q.back().precision()))
    fail(ErrorKind::InvalidArgument, "factor is not monic");
  std::vector<PowerSeries> c(q.begin(), q.end() - 1);
  int prec = poly_precision(c);
  return SpectralPolynomial::from_monic(c, prec);
}

Poly poly_add(const Poly& a, const Poly& b) {
  const Poly& longer = a.size() >= b.size() ? a : b;
  const Poly& shorter = a.size() >= b.size() ? b : a;
  Poly out = longer;
  for (std::size_t i = 0; i < shorter.size(); ++i) out[i] += shorter[i];
  return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly neg = b;
  for (auto& c : neg) c = -c;
  return poly_add(a, neg);
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  std::vector<bool> set(out.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      LaurentSeries t = a[i] * b[j];
      out[i + j] = set[i + j] ? out[i + j] + t : t;
      set[i + j] = true;
    }
  return out;
}

std::pair<Poly, Poly> poly_divmod_monic(const Poly& a, const Poly& h) {
  if (h.empty()) fail(ErrorKind::InvalidArgument, "division by the empty polynomial");
  const std::size_t dh = h.size() - 1;
  if (a.size() <= dh) return {Poly{}, a};
  Poly r = a;
  Poly q(a.size() - dh);
  for (std::size_t k = a.size(); k-- > dh;) {
    LaurentSeries lead = r[k];
    q[k - dh] = lead;
    for (std::size_t j = 0; j <= dh; ++j) r[k - dh + j] -= lead * h[j];
  }
  r.resize(dh);
  return {q, r};
}

Poly poly_truncated(const Poly& a, int precision) {
  Poly out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(c.truncated(precision));
  return out;
}

Poly poly_extended(const Poly& a, int precision) {
  Poly out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(c.extended(precision));
  return out;
}

void poly_trim(Poly& a) {
  while (a.size() > 1 && a.back().is_zero()) a.pop_back();
}

Poly poly_shift(const Poly& a, const Rational& c) {
  if (a.empty()) return a;
  int prec = poly_precision(a);
  Poly acc{a.back()};
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    // acc = acc * (T + c) + a[k]
    Poly next(acc.size() + 1, LaurentSeries::zero(prec));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] += acc[i];
      next[i] += acc[i] * c;
    }
    next[0] += a[k];
    acc = std::move(next);
  }
  return acc;
}

Poly poly_from_rational(const RPoly& a, int precision) {
  Poly out;
  for (const auto& c : a) out.push_back(LaurentSeries::constant(c, precision));
  return out;
}

RPoly poly_residue(const Poly& a) {
  RPoly out;
  for (const auto& c : a) {
    if (c.order() < 0) fail(ErrorKind::InvalidArgument, "residue of a polynomial with poles");
    out.push_back(c.coeff(0));
  }
  rpoly_trim(out);
  return out;
}

void rpoly_trim(RPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

RPoly rpoly_mul(const RPoly& a, const RPoly& b) {
  if (a.empty() || b.empty()) return {};
  RPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  rpoly_trim(out);
  return out;
}

RPoly rpoly_sub(const RPoly& a, const RPoly& b) {
  RPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  rpoly_trim(out);
  return out;
}

std::pair<RPoly, RPoly> rpoly_divmod(const RPoly& a, const RPoly& b) {
  if (b.empty()) fail(ErrorKind::InvalidArgument, "division by zero polynomial");
  RPoly r = a;
  rpoly_trim(r);
  if (r.size() < b.size()) return {RPoly{}, r};
  RPoly q(r.size() - b.size() + 1);
  for (std::size_t d = q.size(); d-- > 0;) {
    Rational f = r[d + b.size() - 1] / b.back();
    q[d] = f;
    for (std::size_t j = 0; j < b.size(); ++j) r[d + j] -= f * b[j];
  }
  rpoly_trim(q);
  rpoly_trim(r);
  return {q, r};
}

Rational rpoly_eval(const RPoly& a, const Rational& x) {
  Rational acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::pair<RPoly, RPoly> rpoly_bezout(const RPoly& a, const RPoly& b) {
  // Extended Euclid keeping r_i = s_i a + t_i b.
  RPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  rpoly_trim(r0);
  rpoly_trim(r1);
  while (!r1.empty()) {
    auto [q, r] = rpoly_divmod(r0, r1);
    RPoly s2 = rpoly_sub(s0, rpoly_mul(q, s1));
    RPoly t2 = rpoly_sub(t0, rpoly_mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) fail(ErrorKind::InvalidArgument, "polynomials are not coprime");
  Rational inv = 1 / r0[0];
  for (auto& c : s0) c *= inv;
  for (auto& c : t0) c *= inv;
  return {s0, t0};
}

}  // namespace higgs::detail
