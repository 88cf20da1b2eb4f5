#include "higgs/ramification.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "higgs/errors.hpp"
#include "higgs/linalg.hpp"
#include "poly.hpp"

namespace higgs {

using detail::Poly;
using detail::RPoly;

namespace {

// Positive divisors of |x| by trial division; x != 0.
std::vector<mpz_class> divisors(mpz_class x) {
  x = abs(x);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= x; ++d) {
    if (x % d != 0) continue;
    small.push_back(d);
    if (d * d != x) large.push_back(x / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Rational roots with multiplicity; throws when an irreducible nonlinear
// factor is left over.
std::vector<std::pair<Rational, int>> residual_roots(RPoly f) {
  std::vector<std::pair<Rational, int>> roots;
  int zeros = 0;
  while (!f.empty() && f.front() == 0) {
    f.erase(f.begin());
    ++zeros;
  }
  if (zeros > 0) roots.emplace_back(0, zeros);
  if (f.size() > 1) {
    mpz_class lcm = 1;
    for (const auto& c : f) lcm = lcm * c.get_den() / gcd(lcm, c.get_den());
    mpz_class a0 = Rational(f.front() * lcm).get_num();
    mpz_class an = Rational(f.back() * lcm).get_num();
    for (const auto& num : divisors(a0)) {
      for (const auto& den : divisors(an)) {
        for (int sign : {1, -1}) {
          Rational x(mpz_class(sign * num), den);
          x.canonicalize();
          if (std::any_of(roots.begin(), roots.end(), [&](const auto& r) { return r.first == x; })) continue;
          int mult = 0;
          while (f.size() > 1 && detail::rpoly_eval(f, x) == 0) {
            f = detail::rpoly_divmod(f, RPoly{-x, 1}).first;
            ++mult;
          }
          if (mult > 0) roots.emplace_back(x, mult);
        }
      }
    }
  }
  if (f.size() > 1)
    fail(ErrorKind::ResidualFieldExtensionRequired,
         "p mod z has an irreducible factor of degree " + std::to_string(f.size() - 1) + " over the rationals");
  std::sort(roots.begin(), roots.end());
  return roots;
}

RPoly linear_power(const Rational& c, int m) {
  RPoly out{1};
  for (int i = 0; i < m; ++i) out = detail::rpoly_mul(out, RPoly{-c, 1});
  return out;
}

Poly one_poly(int precision) { return Poly{LaurentSeries::constant(1, precision)}; }

void require_degree(Poly& a, std::size_t size) {
  detail::poly_trim(a);
  if (a.size() > size) fail(ErrorKind::NoConvergence, "Hensel step produced a factor of the wrong degree");
  while (a.size() < size) a.push_back(LaurentSeries::zero(a.empty() ? 0 : a.front().precision()));
}

// f = g h with g = g0, h = h0 mod z, both monic; quadratic lifting.
std::pair<Poly, Poly> hensel_lift(const Poly& f, const RPoly& g0, const RPoly& h0) {
  const int target = detail::poly_precision(f);
  auto [s0, t0] = detail::rpoly_bezout(g0, h0);
  Poly g = detail::poly_from_rational(g0, 1), h = detail::poly_from_rational(h0, 1);
  Poly s = detail::poly_from_rational(s0, 1), t = detail::poly_from_rational(t0, 1);
  int k = 1;
  while (k < target) {
    const int K = std::min(2 * k, target);
    g = detail::poly_extended(g, K);
    h = detail::poly_extended(h, K);
    s = detail::poly_extended(s, K);
    t = detail::poly_extended(t, K);
    auto tr = [K](const Poly& a) { return detail::poly_truncated(a, K); };

    Poly e = tr(detail::poly_sub(detail::poly_truncated(f, K), detail::poly_mul(g, h)));
    auto [q, r] = detail::poly_divmod_monic(tr(detail::poly_mul(s, e)), h);
    Poly g1 = tr(detail::poly_add(detail::poly_add(g, detail::poly_mul(t, e)), detail::poly_mul(tr(q), g)));
    Poly h1 = tr(detail::poly_add(h, tr(r)));
    require_degree(g1, g0.size());
    require_degree(h1, h0.size());

    Poly b = tr(detail::poly_sub(detail::poly_add(detail::poly_mul(s, g1), detail::poly_mul(t, h1)), one_poly(K)));
    auto [c, d] = detail::poly_divmod_monic(tr(detail::poly_mul(s, b)), h1);
    Poly s1 = tr(detail::poly_sub(s, tr(d)));
    Poly t1 = tr(detail::poly_sub(detail::poly_sub(t, detail::poly_mul(t, b)), detail::poly_mul(tr(c), g1)));
    detail::poly_trim(s1);
    detail::poly_trim(t1);

    g = std::move(g1);
    h = std::move(h1);
    s = std::move(s1);
    t = std::move(t1);
    k = K;
  }
  g = detail::poly_truncated(detail::poly_extended(g, target), target);
  h = detail::poly_truncated(detail::poly_extended(h, target), target);
  return {g, h};
}

int valuation(const LaurentSeries& s) { return s.is_zero() ? s.precision() : s.order(); }

// b is a block shifted so that b = T^m mod z. Peels linear factors along
// integer slopes of the Newton polygon until a single Eisenstein or linear
// block remains. Factors are returned in the shifted variable.
std::vector<Poly> polygon_split(Poly b) {
  std::vector<Poly> out;
  while (b.size() > 2) {
    const int m = static_cast<int>(b.size()) - 1;
    const LaurentSeries& b0 = b[0];
    if (!b0.is_zero() && b0.order() == 1) break;  // Eisenstein
    LaurentSeries alpha;
    if (b0.is_zero()) {
      alpha = LaurentSeries::zero(b0.precision());
    } else {
      // Leftmost segment must run from (0, v0) to (1, v1) alone.
      const int v0 = b0.order();
      if (b[1].is_zero()) fail(ErrorKind::NotEisenstein, "Newton polygon has a non-Eisenstein segment");
      const int v1 = b[1].order();
      const int mu = v0 - v1;
      bool alone = mu >= 1;
      for (int j = 2; j <= m && alone; ++j) {
        if (b[static_cast<std::size_t>(j)].is_zero()) continue;
        int vj = b[static_cast<std::size_t>(j)].order();
        // (v0 - vj) / j < mu
        if (v0 - vj >= mu * j) alone = false;
      }
      if (!alone) fail(ErrorKind::NotEisenstein, "Newton polygon has a slope other than 1/n or an integer");
      // T = z^mu S, Q(S) = b(z^mu S) / z^v0 has a simple nonzero root mod z.
      SeriesRelation rel;
      int target = 0;
      for (int j = 0; j <= m; ++j) {
        LaurentSeries c = b[static_cast<std::size_t>(j)].shifted(j * mu - v0);
        target = j == 0 ? c.precision() : std::min(target, c.precision());
        rel.coeffs.push_back(c);
      }
      Rational s0 = -rel.coeffs[0].coeff(0) / rel.coeffs[1].coeff(0);
      LaurentSeries s = solve_implicit(rel, LaurentSeries::constant(s0, target), target);
      alpha = s.shifted(mu);
    }
    // b = (T - alpha) c + remainder
    Poly c(b.size() - 1);
    c.back() = b.back();
    for (std::size_t j = c.size() - 1; j-- > 0;) c[j] = b[j + 1] + alpha * c[j + 1];
    int prec = detail::poly_precision(c);
    c.back() = LaurentSeries::constant(1, prec);
    out.push_back(Poly{-alpha, LaurentSeries::constant(1, alpha.precision())});
    b = detail::poly_truncated(c, prec);
  }
  out.push_back(b);
  return out;
}

AlgebraElement pad(const AlgebraElement& a, int n) {
  AlgebraElement out = a;
  int prec = a.precision();
  while (out.n() < n) out.c.push_back(LaurentSeries::zero(prec));
  return out;
}

AlgebraElement reduce_mod(const Poly& a, const SpectralPolynomial& q) {
  Poly r = detail::poly_divmod_monic(a, detail::poly_from_spectral(q)).second;
  int prec = detail::poly_precision(a);
  while (static_cast<int>(r.size()) < q.n()) r.push_back(LaurentSeries::zero(prec));
  return AlgebraElement{r};
}

}  // namespace

std::vector<SpectralPolynomial> hensel_split(const SpectralPolynomial& p) {
  if (!is_separable(p)) fail(ErrorKind::NotSeparable, "p has zero discriminant to the working precision");
  Poly f = detail::poly_from_spectral(p);
  RPoly fbar = detail::poly_residue(f);
  auto roots = residual_roots(fbar);

  std::vector<std::pair<Rational, Poly>> blocks;
  RPoly rest = fbar;
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    RPoly g0 = linear_power(roots[i].first, roots[i].second);
    RPoly h0 = detail::rpoly_divmod(rest, g0).first;
    auto [g, h] = hensel_lift(f, g0, h0);
    blocks.emplace_back(roots[i].first, g);
    f = h;
    rest = h0;
  }
  blocks.emplace_back(roots.back().first, f);

  std::vector<SpectralPolynomial> out;
  for (const auto& [c, block] : blocks) {
    for (const Poly& piece : polygon_split(detail::poly_shift(block, c))) {
      out.push_back(detail::spectral_from_poly(detail::poly_shift(piece, -c)));
    }
  }
  return out;
}

RamifiedComponent eisenstein_normalize(const SpectralPolynomial& q) {
  const int n = q.n();
  const int P = q.precision();
  RamifiedComponent comp;
  comp.n = n;
  comp.factor = q;
  comp.shift = q.a(1).coeff(0) / n;
  Poly b = detail::poly_shift(detail::poly_from_spectral(q), comp.shift);
  for (int j = 0; j < n; ++j)
    if (valuation(b[static_cast<std::size_t>(j)]) < 1)
      fail(ErrorKind::NotEisenstein, "factor is not a power of a single linear form modulo z");

  if (n == 1) {
    comp.u = LaurentSeries::constant(1, P);
    comp.z_of_T = LaurentSeries::monomial(1, 1, P);
    comp.t_of_param = -b[0];
    return comp;
  }
  if (valuation(b[0]) != 1)
    fail(ErrorKind::NotEisenstein, "shifted constant term has z-valuation " + std::to_string(valuation(b[0])) +
                                       ", not 1");
  const int target = n * P;
  SeriesRelation rel;
  for (int m = 0; m < P; ++m) {
    std::map<int, Rational> terms;
    if (m == 0) terms[n] = 1;
    for (int j = 0; j < n; ++j) {
      Rational c = b[static_cast<std::size_t>(j)].coeff(m);
      if (c != 0) terms[j] = c;
    }
    rel.coeffs.push_back(LaurentSeries::from_terms(terms, target));
  }
  comp.z_of_T = solve_implicit(rel, LaurentSeries::zero(target), target);
  comp.u = LaurentSeries::monomial(1, n, target) / comp.z_of_T;
  comp.t_of_param = LaurentSeries::monomial(1, 1, target);
  return comp;
}

Decomposition decompose(const SpectralPolynomial& p) {
  Decomposition dec;
  dec.p = p;
  for (const auto& q : hensel_split(p)) dec.components.push_back(eisenstein_normalize(q));
  std::stable_sort(dec.components.begin(), dec.components.end(), [](const auto& a, const auto& b) {
    if (a.n != b.n) return a.n > b.n;
    return a.shift < b.shift;
  });
  for (const auto& c : dec.components) dec.partition.push_back(c.n);
  return dec;
}

LaurentSeries uniformizer_residual(const RamifiedComponent& comp) {
  Poly b = detail::poly_shift(detail::poly_from_spectral(comp.factor), comp.shift);
  LaurentSeries acc = pow(comp.t_of_param, comp.n);
  for (int j = 0; j < comp.n; ++j) {
    acc += compose(b[static_cast<std::size_t>(j)], comp.z_of_T) * pow(comp.t_of_param, j);
  }
  return acc;
}

LaurentSeries pull_back_scalar(const LaurentSeries& f, const RamifiedComponent& comp) {
  const int zval = comp.z_of_T.is_zero() ? comp.z_of_T.precision() : comp.z_of_T.order();
  if (f.is_zero()) {
    long long prec = static_cast<long long>(f.precision()) * zval;
    return LaurentSeries::zero(static_cast<int>(std::min<long long>(prec, comp.z_of_T.precision())));
  }
  const int o = f.order();
  LaurentSeries regular = f.shifted(-o);
  return pow(comp.z_of_T, o) * compose(regular, comp.z_of_T);
}

LaurentSeries component_value(const AlgebraElement& v, const Decomposition& dec, std::size_t i) {
  const RamifiedComponent& comp = dec.components.at(i);
  AlgebraElement r = reduce_mod(v.c, comp.factor);
  LaurentSeries t = comp.t_of_param + LaurentSeries::constant(comp.shift, comp.t_of_param.precision());
  LaurentSeries acc = pull_back_scalar(r.c.back(), comp);
  for (std::size_t k = r.c.size() - 1; k-- > 0;) acc = acc * t + pull_back_scalar(r.c[k], comp);
  return acc;
}

AlgebraElement uniformizer(const RamifiedComponent& comp) {
  const int P = comp.factor.precision();
  if (comp.n == 1) return AlgebraElement{{LaurentSeries::monomial(1, 1, P)}};
  AlgebraElement pi = AlgebraElement::t_power(1, comp.n, P);
  pi.c[0] = LaurentSeries::constant(-comp.shift, P);
  return pi;
}

std::vector<AlgebraElement> idempotents(const Decomposition& dec) {
  const int n = dec.p.n();
  const std::size_t r = dec.components.size();
  if (r == 1) return {AlgebraElement::one(n, dec.p.precision())};
  std::vector<AlgebraElement> out;
  for (std::size_t i = 0; i < r; ++i) {
    Poly others = one_poly(dec.p.precision());
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) others = detail::poly_mul(others, detail::poly_from_spectral(dec.components[j].factor));
    const SpectralPolynomial& qi = dec.components[i].factor;
    AlgebraElement inv = invert_element(reduce_mod(others, qi), qi);
    AlgebraElement lifted{others};
    out.push_back(mul_mod(pad(lifted, n), pad(inv, n), dec.p));
  }
  return out;
}

AlgebraElement assemble(const Decomposition& dec, const std::vector<AlgebraElement>& parts) {
  const int n = dec.p.n();
  if (parts.size() != dec.components.size())
    fail(ErrorKind::InvalidArgument, "one part per component is required");
  if (parts.size() == 1) return pad(parts[0], n);
  auto e = idempotents(dec);
  AlgebraElement acc;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    AlgebraElement term = mul_mod(e[i], pad(parts[i], n), dec.p);
    acc = i == 0 ? term : acc + term;
  }
  return acc;
}

int quotient_dimension(const AlgebraElement& v, const SpectralPolynomial& p) {
  const int n = p.n();
  SeriesMatrix m = multiplication_matrix(v, p);
  SeriesMatrix minv = inverse(m);
  int lo = 0, hi = 0, prec = m(0, 0).precision();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!m(i, j).is_zero()) lo = std::min(lo, m(i, j).order());
      if (!minv(i, j).is_zero()) hi = std::max(hi, -minv(i, j).order());
      prec = std::min(prec, m(i, j).precision());
    }
  // z^hi V+ lies inside v V+, so the index is read off modulo z^hi.
  if (prec < hi) fail(ErrorKind::PrecisionError, "multiplication matrix is not known to z^" + std::to_string(hi));
  const int width = hi - lo;
  std::vector<RowVector> rows;
  for (int j = 0; j < n; ++j) {
    int colorder = hi;
    for (int i = 0; i < n; ++i)
      if (!m(i, j).is_zero()) colorder = std::min(colorder, m(i, j).order());
    for (int a = 0; colorder + a < hi; ++a) {
      RowVector row(static_cast<std::size_t>(n * width));
      for (int i = 0; i < n; ++i)
        for (const auto& [e, c] : m(i, j).shifted(a).truncated(hi).terms())
          row[static_cast<std::size_t>((e - lo) * n + i)] = c;
      rows.push_back(std::move(row));
    }
  }
  return n * hi - rref(std::move(rows), n * width).rank();
}

namespace {

int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

AlgebraElement from_exponents(const Decomposition& dec, const std::vector<int>& x, int zpow) {
  std::vector<AlgebraElement> parts;
  for (std::size_t i = 0; i < dec.components.size(); ++i) {
    const auto& comp = dec.components[i];
    AlgebraElement y = power(uniformizer(comp), x[i], comp.factor);
    parts.push_back(y.shifted(zpow));
  }
  return assemble(dec, parts);
}

void closed_form_exponents(int m, int n, int r, std::vector<int>& x, int& zpow) {
  const int d = n - r;
  if (2 * m <= r - n) {
    int q = floor_div(-m, d);
    int p = -m - q * d;
    int s = p / r, t = p % r;
    x.assign(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < r; ++i) x[static_cast<std::size_t>(i)] = q + s + (i < t ? 1 : 0);
    zpow = -q;
    return;
  }
  closed_form_exponents(r - n - m, n, r, x, zpow);
  for (auto& xi : x) xi = 1 - xi;
  zpow = -1 - zpow;
}

}  // namespace

AlgebraElement choose_vm(int m, const Decomposition& dec) {
  const int r = static_cast<int>(dec.components.size());
  const int base = floor_div(m, r);
  const int extra = m - base * r;
  std::vector<int> x;
  for (int i = 0; i < r; ++i) x.push_back(base + (i < extra ? 1 : 0));
  try {
    AlgebraElement v = from_exponents(dec, x, 0);
    if (quotient_dimension(v, dec.p) == m) return v;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PrecisionError && e.kind() != ErrorKind::NotInvertible) throw;
  }
  fail(ErrorKind::NoSuchElement, "no element of quotient dimension " + std::to_string(m) + " at this precision");
}

std::optional<AlgebraElement> closed_form_vm(int m, const Decomposition& dec) {
  const int n = dec.p.n();
  const int r = static_cast<int>(dec.components.size());
  if (n == r) return std::nullopt;
  std::vector<int> x;
  int zpow = 0;
  closed_form_exponents(m, n, r, x, zpow);
  return from_exponents(dec, x, zpow);
}

}  // namespace higgs
