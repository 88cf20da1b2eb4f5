#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "higgs/errors.hpp"
#include "higgs/json_io.hpp"

namespace higgs::cli {

namespace {

using io::json;

struct Options {
  std::string input = "-";
  std::string output = "-";
  std::string window;
  std::optional<int> precision;
  std::optional<int> gamma;
  int indent = 2;
  bool trivialize = false;
  bool list = false;
  std::string fixture;
};

Window parse_window(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) fail(ErrorKind::InvalidArgument, "--window expects LO:HI");
  Window w;
  try {
    w = {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidArgument, "--window expects integers LO:HI");
  }
  if (!(w.low < 0 && 0 < w.high)) fail(ErrorKind::InvalidArgument, "--window needs LO < 0 < HI");
  return w;
}

json read_input(const std::string& path, std::istream& in) {
  std::stringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::ParseError, "cannot open '" + path + "'");
    buf << f.rdbuf();
  }
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

void write_output(const json& j, const Options& o, std::ostream& out) {
  const std::string text = j.dump(o.indent) + "\n";
  if (o.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.output);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write '" + o.output + "'");
  f << text;
}

CheckerConfig apply_flags(CheckerConfig cfg, const Options& o) {
  if (!o.window.empty()) cfg.window = parse_window(o.window);
  if (o.precision) cfg.precision = *o.precision;
  if (o.gamma) cfg.gamma = *o.gamma;
  return cfg;
}

SpectralPolynomial with_precision(const SpectralPolynomial& p, int precision) {
  if (p.precision() == precision) return p;
  std::vector<PowerSeries> a;
  for (int i = 1; i <= p.n(); ++i) a.push_back(p.a(i));
  return SpectralPolynomial(a, precision);
}

GrassmannPoint over(const GrassmannPoint& w, const SpectralPolynomial& p) {
  if (!w.is_module()) return GrassmannPoint::span(w.n(), p, w.basis(), w.window());
  return GrassmannPoint::module(p, w.algebra(), w.generators(), w.window(), w.cutoff());
}

template <class T>
const T& need(const std::optional<T>& v, const char* what) {
  if (!v) fail(ErrorKind::ParseError, std::string("input has no '") + what + "'");
  return *v;
}

json cmd_decompose(const Options& o, std::istream& in) {
  io::ProblemSpec spec = io::problem_from_json(read_input(o.input, in));
  SpectralPolynomial p = need(spec.p, "p");
  if (o.precision) p = with_precision(p, *o.precision);
  return io::to_json(decompose(p));
}

json cmd_check(const Options& o, std::istream& in) {
  io::ProblemSpec spec = io::problem_from_json(read_input(o.input, in));
  CheckerConfig cfg = apply_flags(spec.config, o);
  const GrassmannPoint& w = need(spec.W, "W");
  SpectralPolynomial p = spec.p ? *spec.p : need(w.p(), "p");
  p = with_precision(p, cfg.precision);
  return io::to_json(check(over(w, p), need(spec.Omega, "Omega"), need(spec.Omega_inv, "Omega_inv"), cfg));
}

json cmd_hitchin(const Options& o, std::istream& in) {
  io::ProblemSpec spec = io::problem_from_json(read_input(o.input, in));
  const SeriesMatrix& a = need(spec.A, "A");
  json out;
  if (o.trivialize) {
    Trivialization t = cyclic_trivialization(a);
    out["p"] = io::to_json(t.p);
    out["P"] = io::to_json(t.P);
  } else {
    out["p"] = io::to_json(matrix_char_coefficients(a));
  }
  return out;
}

json cmd_fixture(const Options& o) {
  CheckerConfig cfg = apply_flags(CheckerConfig{}, o);
  if (o.list) {
    json names = json::array();
    for (const auto& name : fixture_names()) names.push_back(name);
    return names;
  }
  if (o.fixture.empty()) fail(ErrorKind::InvalidArgument, "fixture needs a name (or --list)");
  return io::to_json(io::problem_from_fixture(named_fixture(o.fixture, cfg), cfg));
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Formal Higgs data: spectral decomposition and Higgs checks", "higgs"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool takes_input) {
    if (takes_input) sub->add_option("input", o.input, "Problem JSON (default: stdin)");
    sub->add_option("-o,--output", o.output, "Write the report here (default: stdout)");
    sub->add_option("--window", o.window, "Exponent window LO:HI");
    sub->add_option("--precision", o.precision, "Working precision");
    sub->add_option("--gamma", o.gamma, "Twist exponent in the residue equations");
    sub->add_option("--json-indent", o.indent, "JSON indentation (-1 for compact)");
  };
  CLI::App* dec = app.add_subcommand("decompose", "Split p into ramified components");
  common(dec, true);
  CLI::App* chk = app.add_subcommand("check", "Decide whether (W, p, Omega) is Higgs data");
  common(chk, true);
  CLI::App* hit = app.add_subcommand("hitchin", "Characteristic coefficients of a matrix A");
  common(hit, true);
  hit->add_flag("--trivialize", o.trivialize, "Also return P with P A P^-1 in companion form");
  CLI::App* fix = app.add_subcommand("fixture", "Write a catalogued problem");
  common(fix, false);
  fix->add_option("name", o.fixture, "Fixture name");
  fix->add_flag("--list", o.list, "List fixture names");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "higgs: " << e.what() << "\n";
    return 2;
  }

  try {
    json report;
    if (dec->parsed()) report = cmd_decompose(o, in);
    else if (chk->parsed()) report = cmd_check(o, in);
    else if (hit->parsed()) report = cmd_hitchin(o, in);
    else report = cmd_fixture(o);
    write_output(report, o, out);
    return 0;
  } catch (const Error& e) {
    out << json{{"error", std::string(e.name())}, {"message", e.what()}}.dump(o.indent) << "\n";
    err << "higgs: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace higgs::cli
