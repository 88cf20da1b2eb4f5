#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "higgs/checker.hpp"

namespace higgs::io {

using json = nlohmann::json;

/// Always "num/den", including "0/1".
std::string rational_to_string(const Rational& q);
Rational rational_from_json(const json& j);

json to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const json& j);

/// {"n", "precision", "a": [a_1, .., a_n]}
json to_json(const SpectralPolynomial& p);
SpectralPolynomial polynomial_from_json(const json& j);

json to_json(const SeriesMatrix& m);
SeriesMatrix matrix_from_json(const json& j);

/// Module points carry "algebra" and "generators"; span points carry "basis".
json to_json(const GrassmannPoint& w);
GrassmannPoint point_from_json(const json& j);

struct ProblemSpec {
  std::optional<SpectralPolynomial> p;
  std::optional<SeriesMatrix> A;
  std::optional<GrassmannPoint> W;
  std::optional<GrassmannPoint> Omega;
  std::optional<GrassmannPoint> Omega_inv;
  CheckerConfig config;
};

json to_json(const ProblemSpec& spec);
/// Parse failures and missing fields surface as ParseError.
ProblemSpec problem_from_json(const json& j);
ProblemSpec problem_from_fixture(const HiggsFixture& f, const CheckerConfig& cfg);

json to_json(const Decomposition& d);
json to_json(const CheckReport& r);

}  // namespace higgs::io
