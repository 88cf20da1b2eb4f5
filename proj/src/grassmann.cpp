#include "higgs/grassmann.hpp"

#include <algorithm>

#include "higgs/errors.hpp"

namespace higgs {

namespace {

constexpr int kUnitPrecision = 1 << 28;

int element_precision(const AlgebraElement& v) {
  int prec = kUnitPrecision;
  for (const auto& c : v.c) prec = std::min(prec, c.precision());
  return prec;
}

int element_order(const AlgebraElement& v) {
  int ord = kUnitPrecision;
  for (const auto& c : v.c)
    if (!c.is_zero()) ord = std::min(ord, c.order());
  return ord;
}

RowVector to_row(const AlgebraElement& v, int lo, int hi) {
  const int n = v.n();
  RowVector row(static_cast<std::size_t>(n * (hi - lo)));
  for (int i = 0; i < n; ++i) {
    const LaurentSeries& c = v.c[static_cast<std::size_t>(i)];
    if (c.precision() < hi)
      fail(ErrorKind::PrecisionError, "vector known only to z^" + std::to_string(c.precision()) +
                                          ", window needs z^" + std::to_string(hi));
    for (const auto& [e, x] : c.truncated(hi).terms()) {
      if (e < lo) fail(ErrorKind::PrecisionError, "vector has terms below the window");
      row[static_cast<std::size_t>((e - lo) * n + i)] = x;
    }
  }
  return row;
}

AlgebraElement from_row(const RowVector& row, int n, int lo, int hi) {
  AlgebraElement v;
  for (int i = 0; i < n; ++i) {
    std::map<int, Rational> terms;
    for (int e = lo; e < hi; ++e) {
      const Rational& x = row[static_cast<std::size_t>((e - lo) * n + i)];
      if (x != 0) terms[e] = x;
    }
    v.c.push_back(LaurentSeries::from_terms(terms, hi));
  }
  return v;
}

// Rows with pivot at or beyond `offset`, sliced to start there.
Echelon tail_rows(const Echelon& e, int offset) {
  Echelon out;
  out.cols = e.cols - offset;
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] < offset) continue;
    out.rows.emplace_back(e.rows[r].begin() + offset, e.rows[r].end());
    out.pivots.push_back(e.pivots[r] - offset);
  }
  return out;
}

std::vector<LaurentSeries> distinct(const std::vector<LaurentSeries>& gens) {
  std::vector<LaurentSeries> out;
  for (const auto& g : gens)
    if (std::none_of(out.begin(), out.end(), [&](const LaurentSeries& h) { return h.identical(g); }))
      out.push_back(g);
  return out;
}

// Monomials of total degree <= cutoff in the generators.
std::vector<LaurentSeries> monomials(const std::vector<LaurentSeries>& gens, int cutoff) {
  std::vector<LaurentSeries> all{LaurentSeries::constant(1, kUnitPrecision)};
  std::vector<std::pair<LaurentSeries, std::size_t>> level{{all[0], 0}};
  for (int d = 1; d <= cutoff && !gens.empty(); ++d) {
    std::vector<std::pair<LaurentSeries, std::size_t>> next;
    for (const auto& [m, first] : level)
      for (std::size_t j = first; j < gens.size(); ++j) {
        next.emplace_back(m * gens[j], j);
        all.push_back(next.back().first);
      }
    level = std::move(next);
  }
  return all;
}

Echelon module_window(int n, const CoordinateAlgebra& a, const std::vector<AlgebraElement>& gens, Window w,
                      int cutoff) {
  std::vector<AlgebraElement> vectors;
  int lo = w.low;
  for (const auto& m : monomials(a.generators, cutoff)) {
    for (const auto& g : gens) {
      AlgebraElement v = g * m;
      int ord = element_order(v);
      if (ord >= w.high) continue;
      lo = std::min(lo, ord);
      vectors.push_back(std::move(v));
    }
  }
  std::vector<RowVector> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) rows.push_back(to_row(v, lo, w.high));
  Echelon full = rref(std::move(rows), n * (w.high - lo));
  return tail_rows(full, (w.low - lo) * n);
}

bool same_echelon(const Echelon& a, const Echelon& b) { return a.pivots == b.pivots && a.rows == b.rows; }

}  // namespace

GrassmannPoint GrassmannPoint::module(int n, CoordinateAlgebra algebra, std::vector<AlgebraElement> generators,
                                      Window window, int cutoff) {
  GrassmannPoint w;
  w.n_ = n;
  w.module_ = true;
  w.algebra_.generators = distinct(algebra.generators);
  w.generators_ = std::move(generators);
  w.window_ = window;
  w.cutoff_ = cutoff;
  w.build();
  return w;
}

GrassmannPoint GrassmannPoint::module(const SpectralPolynomial& p, CoordinateAlgebra algebra,
                                      std::vector<AlgebraElement> generators, Window window, int cutoff) {
  GrassmannPoint w;
  w.n_ = p.n();
  w.p_ = p;
  w.module_ = true;
  w.algebra_.generators = distinct(algebra.generators);
  w.generators_ = std::move(generators);
  w.window_ = window;
  w.cutoff_ = cutoff;
  w.build();
  return w;
}

GrassmannPoint GrassmannPoint::span(int n, std::optional<SpectralPolynomial> p,
                                    const std::vector<AlgebraElement>& basis, Window window) {
  GrassmannPoint w;
  w.n_ = n;
  w.p_ = std::move(p);
  w.module_ = false;
  w.generators_ = basis;
  w.window_ = window;
  w.cutoff_ = 0;
  w.build();
  return w;
}

void GrassmannPoint::build() {
  if (window_.low >= window_.high) fail(ErrorKind::InvalidArgument, "empty window");
  for (const auto& g : generators_)
    if (g.n() != n_) fail(ErrorKind::InvalidArgument, "generator has the wrong number of coordinates");
  if (!module_) {
    std::vector<RowVector> rows;
    for (const auto& g : generators_) rows.push_back(to_row(g, window_.low, window_.high));
    echelon_ = rref(std::move(rows), n_ * window_.width());
    return;
  }
  echelon_ = module_window(n_, algebra_, generators_, window_, cutoff_);
  Echelon more = module_window(n_, algebra_, generators_, window_, cutoff_ + 1);
  if (!same_echelon(echelon_, more))
    fail(ErrorKind::WindowUnstable, "window basis changes when the enumeration cutoff grows");
}

std::vector<AlgebraElement> GrassmannPoint::basis() const {
  std::vector<AlgebraElement> out;
  for (const auto& r : echelon_.rows) out.push_back(from_row(r, n_, window_.low, window_.high));
  return out;
}

std::vector<int> GrassmannPoint::pivot_exponents() const {
  std::vector<int> out;
  for (int c : echelon_.pivots) out.push_back(window_.low + c / n_);
  return out;
}

GrassmannPoint GrassmannPoint::rewindowed(Window window, std::optional<int> cutoff) const {
  if (module_) {
    GrassmannPoint w = *this;
    w.window_ = window;
    w.cutoff_ = cutoff.value_or(cutoff_);
    w.build();
    return w;
  }
  if (window.low < window_.low || window.high > window_.high)
    fail(ErrorKind::PrecisionError, "a span point cannot be widened");
  std::vector<AlgebraElement> kept;
  auto b = basis();
  auto piv = pivot_exponents();
  for (std::size_t i = 0; i < b.size(); ++i)
    if (piv[i] >= window.low && piv[i] < window.high) kept.push_back(b[i].truncated(window.high));
  return span(n_, p_, kept, window);
}

std::vector<AlgebraElement> echelonize(const GrassmannPoint& w) { return w.basis(); }

bool contains(const GrassmannPoint& w, const AlgebraElement& v) {
  const Window win = w.window();
  if (v.n() != w.n()) fail(ErrorKind::InvalidArgument, "vector has the wrong number of coordinates");
  if (element_order(v) < win.low)
    fail(ErrorKind::PrecisionError, "vector has terms below the window low " + std::to_string(win.low));
  const int top = std::min(win.high, element_precision(v));
  if (top <= win.low) fail(ErrorKind::PrecisionError, "vector carries no information inside the window");
  const int n = w.n();
  const std::size_t cols = static_cast<std::size_t>(n * (top - win.low));
  AlgebraElement vt = v.truncated(top);
  RowVector row = to_row(vt, win.low, top);
  const Echelon& e = w.echelon();
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    const std::size_t piv = static_cast<std::size_t>(e.pivots[r]);
    if (piv >= cols || row[piv] == 0) continue;
    Rational f = row[piv];
    for (std::size_t c = piv; c < cols; ++c) row[c] -= f * e.rows[r][c];
  }
  return is_zero(row);
}

namespace {

WindowReport count(const GrassmannPoint& w) {
  const Window win = w.window();
  if (win.low > 0 || win.high < 0) fail(ErrorKind::InvalidArgument, "window must contain exponent 0");
  WindowReport rep;
  rep.window = win;
  int below = 0;
  for (int e : w.pivot_exponents()) (e >= 0 ? rep.dim_intersection : below)++;
  rep.dim_cokernel = w.n() * (-win.low) - below;
  rep.index = rep.dim_intersection - rep.dim_cokernel;
  return rep;
}

}  // namespace

WindowReport index(const GrassmannPoint& w) {
  WindowReport rep = count(w);
  if (w.is_module()) {
    Window wide{2 * w.window().low, 2 * w.window().high};
    WindowReport check = count(w.rewindowed(wide, 2 * w.cutoff()));
    if (check.index != rep.index)
      fail(ErrorKind::WindowUnstable, "index changes from " + std::to_string(rep.index) + " to " +
                                          std::to_string(check.index) + " on the doubled window");
  }
  return rep;
}

GrassmannPoint module_product(const GrassmannPoint& u, const GrassmannPoint& w) {
  if (u.n() != 1) fail(ErrorKind::InvalidArgument, "left factor must be a point of k((z))");
  if (!u.is_module() || !w.is_module()) fail(ErrorKind::InvalidArgument, "module_product needs module points");
  std::vector<AlgebraElement> gens;
  for (const auto& a : u.generators())
    for (const auto& b : w.generators()) gens.push_back(b * a.c[0]);
  CoordinateAlgebra alg = w.algebra();
  for (const auto& g : u.algebra().generators) alg.generators.push_back(g);
  int cutoff = std::max(u.cutoff(), w.cutoff());
  if (w.p()) return GrassmannPoint::module(*w.p(), alg, gens, w.window(), cutoff);
  return GrassmannPoint::module(w.n(), alg, gens, w.window(), cutoff);
}

bool stabilizer_check(const CoordinateAlgebra& a, const GrassmannPoint& w) {
  for (const auto& g : a.generators) {
    for (const auto& b : w.basis()) {
      AlgebraElement v = b * g;
      if (element_order(v) < w.window().low || element_precision(v) <= w.window().low) continue;
      if (!contains(w, v)) return false;
    }
  }
  return true;
}

GrassmannPoint apply_T(const GrassmannPoint& w) {
  if (!w.p()) fail(ErrorKind::InvalidArgument, "apply_T needs a point of V_p");
  const SpectralPolynomial& p = *w.p();
  AlgebraElement t = t_element(p);
  if (w.is_module()) {
    std::vector<AlgebraElement> gens;
    for (const auto& g : w.generators()) gens.push_back(mul_mod(t, g, p));
    return GrassmannPoint::module(p, w.algebra(), gens, w.window(), w.cutoff());
  }
  std::vector<AlgebraElement> basis;
  for (const auto& b : w.basis()) basis.push_back(mul_mod(t, b, p).truncated(w.window().high));
  return GrassmannPoint::span(w.n(), p, basis, w.window());
}

int trace_dual_defect(const SpectralPolynomial& p) {
  const int n = p.n();
  auto t = power_traces(p, 2 * n - 2);
  SeriesMatrix m(n, n, p.precision());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = t[static_cast<std::size_t>(i + j)];
  SeriesMatrix inv = inverse(m);
  int d = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!inv(i, j).is_zero()) d = std::max(d, -inv(i, j).order());
  return d;
}

GrassmannPoint orthogonal_complement(const GrassmannPoint& w) {
  if (!w.p()) fail(ErrorKind::InvalidArgument, "orthogonal_complement needs a point of V_p");
  const SpectralPolynomial& p = *w.p();
  const Window win = w.window();
  const int n = p.n();
  if (p.precision() < win.width())
    fail(ErrorKind::PrecisionError, "p known to z^" + std::to_string(p.precision()) + ", window width is " +
                                        std::to_string(win.width()));
  const int d = trace_dual_defect(p);
  const Window dual{-win.high, -win.low - d};
  if (dual.low >= dual.high)
    fail(ErrorKind::PrecisionError, "window is narrower than the trace-dual defect " + std::to_string(d));

  auto t = power_traces(p, 2 * n - 2);
  const int unknowns = n * win.width();
  std::vector<RowVector> constraints;
  for (const auto& b : w.basis()) {
    RowVector row(static_cast<std::size_t>(unknowns));
    for (int i = 0; i < n; ++i) {
      // Tr(T^i b) = sum_j b_j Tr(T^(i+j))
      LaurentSeries tr = LaurentSeries::zero(win.high);
      for (int j = 0; j < n; ++j) tr += b.c[static_cast<std::size_t>(j)] * t[static_cast<std::size_t>(i + j)];
      // x = z^a T^i pairs to the coefficient of z^(-1-a).
      for (int a = dual.low; a < -win.low; ++a)
        row[static_cast<std::size_t>((a - dual.low) * n + i)] = tr.coeff(-1 - a);
    }
    constraints.push_back(std::move(row));
  }
  std::vector<AlgebraElement> kernel;
  for (const auto& x : nullspace(constraints, unknowns))
    kernel.push_back(from_row(x, n, dual.low, -win.low).truncated(dual.high));
  return GrassmannPoint::span(n, p, kernel, dual);
}

std::vector<std::string> projective_line_fixture_names() {
  return {"p1-ramified-positive", "p1-trivial-negative", "p1-unramified"};
}

LineFixture projective_line_fixture(const std::string& name, Window window, int cutoff, int precision) {
  // Generators are exact; give them room for the doubled windows used in certification.
  const int exact = 4 * precision;
  auto mono = [exact](int e) { return LaurentSeries::monomial(1, e, exact); };
  auto zero = LaurentSeries::zero(exact);
  CoordinateAlgebra a{{mono(-1)}};
  auto line = [&](int e) { return GrassmannPoint::module(1, a, {AlgebraElement{{mono(e)}}}, window, cutoff); };
  LineFixture f;
  f.name = name;
  if (name == "p1-ramified-positive" || name == "p1-trivial-negative") {
    f.p = SpectralPolynomial({zero, -mono(1)}, precision);
    f.W = GrassmannPoint::module(f.p, a, {AlgebraElement{{mono(0), zero}}, AlgebraElement{{zero, mono(-1)}}}, window,
                                 cutoff);
    int e = name == "p1-ramified-positive" ? 2 : 0;
    f.Omega = line(e);
    f.Omega_inv = line(-e);
    return f;
  }
  if (name == "p1-unramified") {
    f.p = SpectralPolynomial({zero, -mono(0)}, precision);
    f.W = GrassmannPoint::module(f.p, a, {AlgebraElement{{mono(0), zero}}, AlgebraElement{{zero, mono(0)}}}, window,
                                 cutoff);
    f.Omega = line(0);
    f.Omega_inv = line(0);
    return f;
  }
  fail(ErrorKind::UnknownFixture, "unknown fixture '" + name + "'");
}

}  // namespace higgs
