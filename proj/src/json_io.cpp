#include "higgs/json_io.hpp"

#include "higgs/errors.hpp"

namespace higgs::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string(what) + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

json window_json(Window w) { return json::array({w.low, w.high}); }

Window window_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::ParseError, "window must be [low, high]");
  Window w{j[0].get<int>(), j[1].get<int>()};
  if (!(w.low < 0 && 0 < w.high)) fail(ErrorKind::ParseError, "window must satisfy low < 0 < high");
  return w;
}

json element_json(const AlgebraElement& e) {
  json out = json::array();
  for (const auto& c : e.c) out.push_back(to_json(c));
  return out;
}

AlgebraElement element_from_json(const json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    fail(ErrorKind::ParseError, "vector must have " + std::to_string(n) + " entries");
  AlgebraElement e;
  for (const auto& c : j) e.c.push_back(series_from_json(c));
  return e;
}

}  // namespace

std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(ErrorKind::ParseError, "coefficient must be a rational string");
  return parse_rational(j.get<std::string>());
}

json to_json(const LaurentSeries& s) {
  json coeffs = json::array();
  for (const auto& [e, c] : s.terms()) coeffs.push_back(json::array({e, rational_to_string(c)}));
  return {{"order", s.order()}, {"precision", s.precision()}, {"coeffs", coeffs}};
}

LaurentSeries series_from_json(const json& j) {
  return guarded("series", [&] {
    const int precision = field(j, "precision").get<int>();
    std::map<int, Rational> terms;
    std::optional<int> last;
    for (const auto& t : field(j, "coeffs")) {
      if (!t.is_array() || t.size() != 2) fail(ErrorKind::ParseError, "coefficient entries are [exponent, value]");
      const int e = t[0].get<int>();
      if (last && e <= *last) fail(ErrorKind::ParseError, "exponents must be strictly increasing");
      if (e >= precision) fail(ErrorKind::ParseError, "coefficient at or beyond the precision");
      last = e;
      terms[e] = rational_from_json(t[1]);
    }
    LaurentSeries s = LaurentSeries::from_terms(terms, precision);
    if (j.contains("order") && j["order"].get<int>() != s.order())
      fail(ErrorKind::ParseError, "order does not match the coefficients");
    return s;
  });
}

json to_json(const SpectralPolynomial& p) {
  json a = json::array();
  for (int i = 1; i <= p.n(); ++i) a.push_back(to_json(p.a(i)));
  return {{"n", p.n()}, {"precision", p.precision()}, {"a", a}};
}

SpectralPolynomial polynomial_from_json(const json& j) {
  return guarded("polynomial", [&] {
    std::vector<PowerSeries> a;
    int precision = 1 << 30;
    for (const auto& s : field(j, "a")) {
      a.push_back(series_from_json(s));
      precision = std::min(precision, a.back().precision());
    }
    if (j.contains("n") && j["n"].get<std::size_t>() != a.size()) fail(ErrorKind::ParseError, "n does not match a");
    if (j.contains("precision")) precision = j["precision"].get<int>();
    return SpectralPolynomial(std::move(a), precision);
  });
}

json to_json(const SeriesMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

SeriesMatrix matrix_from_json(const json& j) {
  return guarded("matrix", [&] {
    if (!j.is_array() || j.empty()) fail(ErrorKind::ParseError, "matrix must be a nonempty array of rows");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    int precision = 1 << 30;
    std::vector<LaurentSeries> entries;
    for (const auto& row : j) {
      if (!row.is_array() || static_cast<int>(row.size()) != cols) fail(ErrorKind::ParseError, "ragged matrix");
      for (const auto& s : row) {
        entries.push_back(series_from_json(s));
        precision = std::min(precision, entries.back().precision());
      }
    }
    SeriesMatrix m(rows, cols, precision);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) m(i, k) = entries[static_cast<std::size_t>(i * cols + k)];
    return m;
  });
}

json to_json(const GrassmannPoint& w) {
  json out;
  out["ambient"] = w.p() ? json{{"p", to_json(*w.p())}} : json{{"n", w.n()}};
  out["window"] = window_json(w.window());
  if (w.is_module()) {
    json gens = json::array();
    for (const auto& g : w.algebra().generators) gens.push_back(to_json(g));
    out["algebra"] = {{"generators", gens}};
    json elems = json::array();
    for (const auto& g : w.generators()) elems.push_back(element_json(g));
    out["generators"] = elems;
    out["cutoff"] = w.cutoff();
  } else {
    json basis = json::array();
    for (const auto& b : w.basis()) basis.push_back(element_json(b));
    out["basis"] = basis;
  }
  return out;
}

GrassmannPoint point_from_json(const json& j) {
  return guarded("point", [&] {
    const json& amb = field(j, "ambient");
    std::optional<SpectralPolynomial> p;
    int n = 0;
    if (amb.contains("p")) {
      p = polynomial_from_json(amb["p"]);
      n = p->n();
    } else {
      n = field(amb, "n").get<int>();
    }
    const Window window = window_from_json(field(j, "window"));
    if (j.contains("basis")) {
      std::vector<AlgebraElement> basis;
      for (const auto& b : j["basis"]) basis.push_back(element_from_json(b, n));
      return GrassmannPoint::span(n, p, basis, window);
    }
    CoordinateAlgebra alg;
    for (const auto& g : field(field(j, "algebra"), "generators")) alg.generators.push_back(series_from_json(g));
    std::vector<AlgebraElement> gens;
    for (const auto& g : field(j, "generators")) gens.push_back(element_from_json(g, n));
    const int cutoff = j.contains("cutoff") ? j["cutoff"].get<int>() : kDefaultCutoff;
    return p ? GrassmannPoint::module(*p, alg, gens, window, cutoff)
             : GrassmannPoint::module(n, alg, gens, window, cutoff);
  });
}

json to_json(const ProblemSpec& spec) {
  json out;
  if (spec.p) out["p"] = to_json(*spec.p);
  if (spec.A) out["A"] = to_json(*spec.A);
  if (spec.W) out["W"] = to_json(*spec.W);
  if (spec.Omega) out["Omega"] = to_json(*spec.Omega);
  if (spec.Omega_inv) out["Omega_inv"] = to_json(*spec.Omega_inv);
  out["config"] = {{"window", window_json(spec.config.window)},
                   {"precision", spec.config.precision},
                   {"gamma", spec.config.gamma},
                   {"cutoff", spec.config.cutoff}};
  return out;
}

ProblemSpec problem_from_json(const json& j) {
  return guarded("problem", [&] {
    if (!j.is_object()) fail(ErrorKind::ParseError, "problem must be a JSON object");
    ProblemSpec spec;
    if (j.contains("p")) spec.p = polynomial_from_json(j["p"]);
    if (j.contains("A")) spec.A = matrix_from_json(j["A"]);
    if (j.contains("W")) spec.W = point_from_json(j["W"]);
    if (j.contains("Omega")) spec.Omega = point_from_json(j["Omega"]);
    if (j.contains("Omega_inv")) spec.Omega_inv = point_from_json(j["Omega_inv"]);
    if (spec.p) spec.config.precision = spec.p->precision();
    if (j.contains("config")) {
      const json& c = j["config"];
      if (c.contains("window")) spec.config.window = window_from_json(c["window"]);
      if (c.contains("precision")) spec.config.precision = c["precision"].get<int>();
      if (c.contains("gamma")) spec.config.gamma = c["gamma"].get<int>();
      if (c.contains("cutoff")) spec.config.cutoff = c["cutoff"].get<int>();
    }
    return spec;
  });
}

ProblemSpec problem_from_fixture(const HiggsFixture& f, const CheckerConfig& cfg) {
  ProblemSpec spec;
  spec.p = f.p;
  spec.W = f.W;
  spec.Omega = f.Omega;
  spec.Omega_inv = f.Omega_inv;
  spec.config = cfg;
  return spec;
}

json to_json(const Decomposition& d) {
  json comps = json::array();
  for (const auto& c : d.components)
    comps.push_back({{"n", c.n}, {"shift", rational_to_string(c.shift)}, {"u", to_json(c.u)}, {"z_of_T", to_json(c.z_of_T)}});
  return {{"partition", d.partition}, {"components", comps}};
}

json to_json(const CheckReport& r) {
  json residuals = json::array();
  for (const auto& x : r.residuals)
    residuals.push_back({{"u", x.u}, {"f", x.f}, {"v", x.v}, {"value", rational_to_string(x.value)}});
  json out = {{"contained", r.contained},
              {"precision", {{"window", window_json(r.window)}}},
              {"residuals", residuals},
              {"residuals_vanish", r.residuals_vanish},
              {"consistent", r.consistent}};
  if (r.expansion_agrees) {
    out["power_trace_expansion"] = {{"agrees", *r.expansion_agrees},
                                    {"index", r.index ? json(*r.index) : json(nullptr)},
                                    {"excluded_index", r.excluded_index}};
  } else {
    out["power_trace_expansion"] = nullptr;
  }
  return out;
}

}  // namespace higgs::io
