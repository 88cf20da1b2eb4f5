#include "higgs/checker.hpp"

#include <algorithm>
#include <sstream>

#include "higgs/errors.hpp"

namespace higgs {

CheckerConfig CheckerConfig::doubled() const {
  CheckerConfig c = *this;
  c.window = {2 * window.low, 2 * window.high};
  c.cutoff = 2 * cutoff;
  c.precision = 2 * precision;
  return c;
}

namespace {

const SpectralPolynomial& ambient(const GrassmannPoint& W) {
  if (!W.p()) fail(ErrorKind::InvalidArgument, "W must be a point of V_p");
  return *W.p();
}

int min_order(const SeriesMatrix& m) {
  int o = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) o = std::min(o, m(i, j).order());
  return o;
}

// How far multiplication by T can raise the z-order of a vector.
int t_raise(const SpectralPolynomial& p) {
  try {
    return -min_order(inverse(companion_matrix(p)));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotInvertible) fail(ErrorKind::NotInvertible, "T is a zero divisor in V_p");
    throw;
  }
}

int scalar_order(const GrassmannPoint& omega_inv, std::size_t j) {
  const LaurentSeries& f = omega_inv.generators()[j].c[0];
  if (f.is_zero()) fail(ErrorKind::InvalidArgument, "zero generator in the inverse twist");
  return f.order();
}

// Window bases for the pairing, with `extra` more digits on the high end.
ResidualSetup make_setup(const GrassmannPoint& W, const GrassmannPoint& omega_inv, const CheckerConfig& cfg,
                         int extra) {
  const SpectralPolynomial& p = ambient(W);
  if (omega_inv.n() != 1) fail(ErrorKind::InvalidArgument, "the inverse twist must be a point of k((z))");
  const int L = cfg.window.low, H = cfg.window.high, g = cfg.gamma;
  const int delta = trace_dual_defect(p);
  const int raise = t_raise(p);
  ResidualSetup setup;
  setup.p = p;
  setup.W = W.rewindowed({L, H + extra}, cfg.cutoff);
  for (std::size_t j = 0; j < omega_inv.generators().size(); ++j) {
    const int o = scalar_order(omega_inv, j);
    const Window u{-H - o + g, -L - o + g + extra};
    // W^⊥ lands on [-high', -low' - delta); pick W's window so that it
    // reaches u.low - raise below and u.high above.
    const Window wj{-u.high - delta, -u.low + raise};
    GrassmannPoint perp = orthogonal_complement(W.rewindowed(wj, cfg.cutoff));
    setup.blocks.push_back({omega_inv.generators()[j].c[0], apply_T(perp).rewindowed(u)});
  }
  return setup;
}

Rational pairing(const AlgebraElement& u, const LaurentSeries& f, const AlgebraElement& v, const SpectralPolynomial& p,
                 int gamma) {
  AlgebraElement prod = mul_mod(u, v * f, p);
  return residue(element_trace(prod, p).shifted(-gamma));
}

bool all_zero(const std::vector<Residual>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const Residual& r) { return r.value == 0; });
}

// Basis rows of a lifted window whose pivots lie below `high`; these
// truncate to the basis of the narrower window, in the same order.
std::vector<AlgebraElement> lifted_rows(const GrassmannPoint& w, int high, std::size_t expected) {
  std::vector<AlgebraElement> out;
  auto b = w.basis();
  auto piv = w.pivot_exponents();
  for (std::size_t i = 0; i < b.size(); ++i)
    if (piv[i] < high) out.push_back(b[i]);
  if (out.size() != expected) fail(ErrorKind::WindowUnstable, "lifted window basis does not match");
  return out;
}

}  // namespace

CheckReport check_containment(const GrassmannPoint& W, const GrassmannPoint& omega, const CheckerConfig& cfg) {
  const SpectralPolynomial& p = ambient(W);
  GrassmannPoint w = W.rewindowed(cfg.window, cfg.cutoff);
  GrassmannPoint wo = module_product(omega.rewindowed(cfg.window, cfg.cutoff), w);
  CheckReport rep;
  rep.window = cfg.window;
  rep.contained = true;
  const AlgebraElement t = t_element(p);
  for (const auto& b : w.basis()) {
    if (!contains(wo, mul_mod(t, b, p).truncated(cfg.window.high))) {
      rep.contained = false;
      break;
    }
  }
  return rep;
}

ResidualSetup residual_setup(const GrassmannPoint& W, const GrassmannPoint& omega_inv, const CheckerConfig& cfg) {
  return make_setup(W, omega_inv, cfg, 0);
}

std::vector<Residual> evaluate_residuals(const ResidualSetup& setup, int gamma) {
  std::vector<Residual> out;
  auto vs = setup.W.basis();
  for (std::size_t j = 0; j < setup.blocks.size(); ++j) {
    auto us = setup.blocks[j].tw_perp.basis();
    for (std::size_t i = 0; i < us.size(); ++i)
      for (std::size_t k = 0; k < vs.size(); ++k)
        out.push_back({static_cast<int>(i), static_cast<int>(j), static_cast<int>(k),
                       pairing(us[i], setup.blocks[j].f, vs[k], setup.p, gamma)});
  }
  return out;
}

CheckReport residual_matrix(const GrassmannPoint& W, const GrassmannPoint& omega_inv, const CheckerConfig& cfg) {
  CheckReport rep;
  rep.window = cfg.window;
  rep.residuals = evaluate_residuals(residual_setup(W, omega_inv, cfg), cfg.gamma);
  rep.contained = all_zero(rep.residuals);
  return rep;
}

CheckReport totally_ramified_residuals(const GrassmannPoint& W, const GrassmannPoint& omega_inv,
                                       const CheckerConfig& cfg) {
  const SpectralPolynomial& p = ambient(W);
  const int n = p.n();
  Decomposition dec = decompose(p);
  if (dec.partition != std::vector<int>{n})
    fail(ErrorKind::NotTotallyRamified, "p has more than one branch over z = 0");

  CheckReport rep;
  rep.window = cfg.window;
  rep.index = index(W.rewindowed(cfg.window, cfg.cutoff)).index;
  rep.excluded_index = 2 * *rep.index == 1 - n;

  // Tr(T^-1) has a pole; lift the bases so its product stays determined.
  std::vector<LaurentSeries> traces{power_trace(-1, p)};
  for (const auto& t : power_traces(p, 2 * n - 2)) traces.push_back(t);
  const int extra = traces[0].is_zero() ? 0 : std::max(0, -traces[0].order());
  ResidualSetup small = residual_setup(W, omega_inv, cfg);
  ResidualSetup lifted = make_setup(W, omega_inv, cfg, extra);

  auto vs = lifted_rows(lifted.W, cfg.window.high, small.W.echelon().rank());
  const AlgebraElement t = t_element(p);
  for (std::size_t j = 0; j < lifted.blocks.size(); ++j) {
    const GrassmannPoint& uw = small.blocks[j].tw_perp;
    auto us = lifted_rows(lifted.blocks[j].tw_perp, uw.window().high, uw.echelon().rank());
    const LaurentSeries& f = lifted.blocks[j].f;
    for (std::size_t i = 0; i < us.size(); ++i) {
      AlgebraElement tu = mul_mod(t, us[i], p);
      for (std::size_t k = 0; k < vs.size(); ++k) {
        Rational total = 0;
        for (int a = 0; a < n; ++a) {
          LaurentSeries uf = tu.c[static_cast<std::size_t>(a)] * f;
          for (int b = 0; b < n; ++b) {
            // k - 1 = a + b - 1, stored at offset a + b
            LaurentSeries term = uf * vs[k].c[static_cast<std::size_t>(b)] * traces[static_cast<std::size_t>(a + b)];
            total += residue(term.shifted(-cfg.gamma));
          }
        }
        rep.residuals.push_back({static_cast<int>(i), static_cast<int>(j), static_cast<int>(k), total});
      }
    }
  }
  rep.contained = all_zero(rep.residuals);
  return rep;
}

CheckReport check(const GrassmannPoint& W, const GrassmannPoint& omega, const GrassmannPoint& omega_inv,
                  const CheckerConfig& cfg) {
  CheckReport contain = check_containment(W, omega, cfg);
  CheckReport rm = residual_matrix(W, omega_inv, cfg);
  CheckReport rep = rm;
  rep.contained = contain.contained;
  rep.residuals_vanish = rm.contained;
  rep.consistent = contain.contained == rm.contained;

  bool single_branch = false;
  try {
    single_branch = decompose(ambient(W)).partition.size() == 1;
  } catch (const Error&) {
    single_branch = false;
  }
  if (single_branch) {
    CheckReport tr = totally_ramified_residuals(W, omega_inv, cfg);
    rep.index = tr.index;
    rep.excluded_index = tr.excluded_index;
    bool same = tr.residuals.size() == rm.residuals.size();
    for (std::size_t i = 0; same && i < tr.residuals.size(); ++i) same = tr.residuals[i].value == rm.residuals[i].value;
    rep.expansion_agrees = same;
    rep.consistent = rep.consistent && same;
  }
  return rep;
}

// ---------------------------------------------------------------------------

Trivialization cyclic_trivialization(const SeriesMatrix& a) {
  const int n = a.rows();
  if (n != a.cols()) fail(ErrorKind::InvalidArgument, "matrix must be square");
  SpectralPolynomial p = matrix_char_coefficients(a);
  if (!is_separable(p)) fail(ErrorKind::NotSeparable, "characteristic polynomial is not separable");
  const int prec = p.precision();

  std::vector<std::vector<Rational>> candidates;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(i)] = 1;
    candidates.push_back(e);
  }
  for (int c = 1; c <= 3; ++c)
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> v(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = (j == i) ? Rational(c) : Rational(1);
      candidates.push_back(v);
      std::vector<Rational> w(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = Rational(1, j + c);
      candidates.push_back(w);
    }

  std::optional<SeriesMatrix> best;
  for (const auto& cand : candidates) {
    SeriesMatrix k(n, n, prec);
    std::vector<LaurentSeries> col;
    for (int j = 0; j < n; ++j) col.push_back(LaurentSeries::constant(cand[static_cast<std::size_t>(j)], prec));
    for (int c = 0; c < n; ++c) {
      for (int j = 0; j < n; ++j) k(j, c) = col[static_cast<std::size_t>(j)];
      std::vector<LaurentSeries> next;
      for (int i = 0; i < n; ++i) {
        LaurentSeries acc = LaurentSeries::zero(prec);
        for (int j = 0; j < n; ++j) acc += a(i, j) * col[static_cast<std::size_t>(j)];
        next.push_back(acc);
      }
      col = std::move(next);
    }
    LaurentSeries det = determinant(k);
    if (det.is_zero()) continue;
    if (det.order() == 0) {
      best = k;
      break;
    }
    if (!best) best = k;
  }
  if (!best) fail(ErrorKind::NoCyclicVector, "no cyclic vector among the candidates");
  return {inverse(*best), p};
}

// ---------------------------------------------------------------------------

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
  MultiPoly m(nvars);
  m.add_term(Exponents(static_cast<std::size_t>(nvars)), c);
  return m;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  MultiPoly m(nvars);
  Exponents e(static_cast<std::size_t>(nvars));
  e[static_cast<std::size_t>(i)] = 1;
  m.add_term(e, 1);
  return m;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly out(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MultiPoly MultiPoly::divided_by(const MultiPoly& d) const {
  if (d.is_zero()) fail(ErrorKind::NotDivisible, "division by zero");
  const auto& [dlead, dcoef] = *d.terms_.rbegin();
  MultiPoly rest = *this, quotient(nvars_);
  while (!rest.is_zero()) {
    const auto [lead, coef] = *rest.terms_.rbegin();
    Exponents e = lead;
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] -= dlead[i];
      if (e[i] < 0) fail(ErrorKind::NotDivisible, "leading term is not divisible");
    }
    const Rational q = coef / dcoef;
    quotient.add_term(e, q);
    for (const auto& [de, dc] : d.terms_) {
      Exponents t = de;
      for (std::size_t i = 0; i < t.size(); ++i) t[i] += e[i];
      rest.add_term(t, -q * dc);
    }
  }
  return quotient;
}

MultiPoly MultiPoly::substituted(int i, const MultiPoly& value) const {
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents base = e;
    int k = base[static_cast<std::size_t>(i)];
    base[static_cast<std::size_t>(i)] = 0;
    MultiPoly term(nvars_);
    term.add_term(base, c);
    for (int j = 0; j < k; ++j) term = term * value;
    out = out + term;
  }
  return out;
}

MultiPoly MultiPoly::with_variables_swapped(int i, int j) const {
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    std::swap(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]);
    out.add_term(f, c);
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rational_string(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) os << "*x" << i << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
  }
  return os.str();
}

TauDeterminant tau_from_basis(const std::vector<std::vector<LaurentSeries>>& f, int N, int degree) {
  if (f.empty() || N <= 0) fail(ErrorKind::InvalidArgument, "tau needs N >= 1 and a nonempty basis");
  const int r = static_cast<int>(f[0].size());
  const int m = N * r;
  if (static_cast<int>(f.size()) != m)
    fail(ErrorKind::InvalidArgument, "expected " + std::to_string(m) + " functions, got " + std::to_string(f.size()));
  // entry(j, col): f_j on component col / N evaluated at x_col
  auto entry = [&](int j, int col) {
    const LaurentSeries& s = f[static_cast<std::size_t>(j)][static_cast<std::size_t>(col / N)];
    if (!s.is_zero() && s.order() < 0) fail(ErrorKind::InvalidArgument, "basis function has a pole");
    if (s.precision() < degree) fail(ErrorKind::PrecisionError, "basis function known below the requested degree");
    MultiPoly out(m);
    for (const auto& [e, c] : s.truncated(degree).terms()) {
      MultiPoly::Exponents ex(static_cast<std::size_t>(m));
      ex[static_cast<std::size_t>(col)] = e;
      out.add_term(ex, c);
    }
    return out;
  };
  // Expansion along rows, indexed by the set of columns already used.
  std::vector<MultiPoly> dp(std::size_t{1} << m, MultiPoly(m));
  dp[0] = MultiPoly::constant(m, 1);
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (dp[mask].is_zero()) continue;
    const int row = __builtin_popcount(static_cast<unsigned>(mask));
    if (row == m) continue;
    for (int c = 0; c < m; ++c) {
      if (mask & (std::size_t{1} << c)) continue;
      int above = __builtin_popcount(static_cast<unsigned>(mask >> (c + 1)));
      MultiPoly term = dp[mask] * entry(row, c);
      std::size_t next = mask | (std::size_t{1} << c);
      dp[next] = (above % 2 == 0) ? dp[next] + term : dp[next] - term;
    }
  }
  TauDeterminant out;
  out.N = N;
  out.r = r;
  out.determinant = dp.back();
  out.vandermonde = MultiPoly::constant(m, 1);
  out.tau = out.determinant;
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < N; ++k)
      for (int l = k + 1; l < N; ++l) {
        MultiPoly factor = MultiPoly::variable(m, i * N + l) - MultiPoly::variable(m, i * N + k);
        out.vandermonde = out.vandermonde * factor;
        out.tau = out.tau.divided_by(factor);
      }
  return out;
}

TauDeterminant abel_tau_determinant(const GrassmannPoint& W, int N, int degree) {
  const SpectralPolynomial& p = ambient(W);
  Decomposition dec = decompose(p);
  const std::size_t r = dec.components.size();
  std::vector<AlgebraElement> parts;
  for (const auto& comp : dec.components) parts.push_back(power(uniformizer(comp), N, comp.factor));
  AlgebraElement tn = assemble(dec, parts);
  std::vector<AlgebraElement> gens;
  for (const auto& g : W.generators()) gens.push_back(mul_mod(tn, g, p));
  GrassmannPoint shifted = GrassmannPoint::module(p, W.algebra(), gens, W.window(), W.cutoff());

  WindowReport rep = index(shifted);
  if (rep.dim_cokernel != 0)
    fail(ErrorKind::InvalidArgument, "V is not V+ + T^N W inside the window");
  if (rep.dim_intersection != N * static_cast<int>(r))
    fail(ErrorKind::InvalidArgument, "V+ ∩ T^N W has dimension " + std::to_string(rep.dim_intersection) +
                                         ", expected " + std::to_string(N * static_cast<int>(r)));
  std::vector<std::vector<LaurentSeries>> f;
  auto basis = shifted.basis();
  auto piv = shifted.pivot_exponents();
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (piv[j] < 0) continue;
    std::vector<LaurentSeries> row;
    for (std::size_t i = 0; i < r; ++i) row.push_back(component_value(basis[j], dec, i));
    f.push_back(std::move(row));
  }
  return tau_from_basis(f, N, degree);
}

// ---------------------------------------------------------------------------

namespace {

struct PositiveSpec {
  std::string name;
  std::vector<std::vector<std::pair<int, const char*>>> a;  // a_1 .. a_n as sparse polynomials in z
  std::vector<std::pair<int, const char*>> h;
};

std::vector<PositiveSpec> positive_specs() {
  return {
      {"T2-z", {{}, {{1, "-1"}}}, {{0, "1"}, {1, "1"}}},
      {"T2-z-z2", {{}, {{1, "-1"}, {2, "-1"}}}, {{0, "1"}}},
      {"(T-1)(T-z)", {{{0, "1"}, {1, "1"}}, {{1, "1"}}}, {{0, "1"}, {1, "-1"}}},
      {"T3-z", {{}, {}, {{1, "1"}}}, {{0, "1"}, {2, "1"}}},
      {"T3-3zT+z+z2", {{}, {{1, "-3"}}, {{1, "-1"}, {2, "-1"}}}, {{0, "1"}}},
      {"T3-T+z", {{}, {{0, "-1"}}, {{1, "-1"}}}, {{0, "2"}, {1, "1"}}},
      {"(T-1/2)3-z(2+T)", {{{0, "3/2"}}, {{0, "3/4"}, {1, "-1"}}, {{0, "1/8"}, {1, "2"}}}, {{0, "1"}}},
  };
}

LaurentSeries sparse(const std::vector<std::pair<int, const char*>>& t, int precision) {
  std::map<int, Rational> m;
  for (const auto& [e, c] : t) m[e] += parse_rational(c);
  return LaurentSeries::from_terms(m, precision);
}

HiggsFixture from_line(const LineFixture& f, std::optional<bool> expected) {
  return {f.name, f.p, f.W, f.Omega, f.Omega_inv, expected};
}

}  // namespace

namespace {

// Builds the catalogue, or only the entry called `only` when given; names
// alone when `names` is set.
std::vector<HiggsFixture> build_catalogue(const CheckerConfig& cfg, const std::string* only,
                                          std::vector<std::string>* names = nullptr) {
  auto wanted = [&](const std::string& name) {
    if (names) names->push_back(name);
    return !names && (!only || *only == name);
  };
  const int exact = 4 * cfg.precision;
  const CoordinateAlgebra alg{{LaurentSeries::monomial(1, -1, exact)}};
  auto line = [&](int e) {
    return GrassmannPoint::module(1, alg, {AlgebraElement{{LaurentSeries::monomial(1, e, exact)}}}, cfg.window,
                                  cfg.cutoff);
  };
  std::vector<HiggsFixture> out;
  for (const auto& [name, verdict] : std::vector<std::pair<std::string, bool>>{
           {"p1-ramified-positive", true}, {"p1-unramified", true}, {"p1-trivial-negative", false}})
    if (wanted(name)) out.push_back(from_line(projective_line_fixture(name, cfg.window, cfg.cutoff, cfg.precision), verdict));

  for (const auto& spec : positive_specs()) {
    const int n = static_cast<int>(spec.a.size());
    std::vector<PowerSeries> a;
    int e = 0;
    for (const auto& ai : spec.a) {
      a.push_back(sparse(ai, exact));
      for (const auto& [k, c] : ai) e = std::max(e, k);
    }
    SpectralPolynomial p(a, cfg.precision);
    LaurentSeries h = sparse(spec.h, exact);
    auto gens_for = [&](int which, int shift) {
      std::vector<AlgebraElement> gens;
      for (int j = 0; j < n; ++j) {
        AlgebraElement g;
        for (int i = 0; i < n; ++i) g.c.push_back(i == j ? h : LaurentSeries::zero(exact));
        if (j == which) {
          // perturbation by z^shift in the top coordinate (or the constant one for the last generator)
          int coord = which == n - 1 ? 0 : n - 1;
          g.c[static_cast<std::size_t>(coord)] += LaurentSeries::monomial(1, shift, exact);
        }
        gens.push_back(std::move(g));
      }
      return gens;
    };
    auto make = [&](std::string name, std::vector<AlgebraElement> gens, std::optional<bool> expected) {
      if (!wanted(name)) return;
      out.push_back({std::move(name), p, GrassmannPoint::module(p, alg, std::move(gens), cfg.window, cfg.cutoff),
                     line(e), line(-e), expected});
    };
    make(spec.name, gens_for(-1, 0), true);
    make(spec.name + "+z^1", gens_for(0, 1), std::nullopt);
    make(spec.name + "+z^2", gens_for(0, 2), std::nullopt);
    make(spec.name + "+z^1@last", gens_for(n - 1, 1), std::nullopt);
  }
  return out;
}

}  // namespace

std::vector<HiggsFixture> fixture_catalogue(const CheckerConfig& cfg) { return build_catalogue(cfg, nullptr); }

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  build_catalogue(CheckerConfig{}, nullptr, &names);
  return names;
}

HiggsFixture named_fixture(const std::string& name, const CheckerConfig& cfg) {
  auto found = build_catalogue(cfg, &name);
  if (!found.empty()) return found.front();
  fail(ErrorKind::UnknownFixture, "unknown fixture '" + name + "'");
}

}  // namespace higgs
