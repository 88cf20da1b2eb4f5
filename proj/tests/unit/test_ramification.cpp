#include <doctest.h>

#include "catalogue.hpp"
#include "higgs/errors.hpp"
#include "higgs/ramification.hpp"

using namespace higgs;
using higgs::testing::S;

namespace {

constexpr int P = 16;

LaurentSeries ser(std::initializer_list<std::pair<int, const char*>> t, int prec = P) { return S(t, prec); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

SpectralPolynomial product(const std::vector<SpectralPolynomial>& fs) {
  auto acc = testing::to_tpoly(fs[0]);
  int prec = fs[0].precision();
  for (std::size_t i = 1; i < fs.size(); ++i) {
    acc = testing::tpoly_mul(acc, testing::to_tpoly(fs[i]));
    prec = std::min(prec, fs[i].precision());
  }
  return testing::to_spectral(acc, prec);
}

}  // namespace

TEST_CASE("hensel_split: two distinct residual roots") {
  SpectralPolynomial p({ser({{0, "1"}, {1, "1"}}), ser({{1, "1"}})}, P);
  auto fs = hensel_split(p);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].n() == 1);
  CHECK(fs[1].n() == 1);
  CHECK(fs[0].a(1) == ser({{1, "1"}}));
  CHECK(fs[1].a(1) == ser({{0, "1"}}));
  CHECK(fs[1].precision() == P);
  CHECK(product(fs) == p);
}

TEST_CASE("hensel_split: single residual root stays whole") {
  SpectralPolynomial p({ser({}), ser({{1, "-1"}})}, P);
  auto fs = hensel_split(p);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0] == p);
}

TEST_CASE("hensel_split: slope split of T (T^2 - z)") {
  // T^3 - zT: a1 = 0, a2 = -z, a3 = 0
  SpectralPolynomial p({ser({}), ser({{1, "-1"}}), ser({})}, P);
  auto fs = hensel_split(p);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].n() == 1);
  CHECK(fs[0].a(1).is_zero());
  CHECK(fs[1].n() == 2);
  CHECK(fs[1].a(2) == ser({{1, "-1"}}));
  CHECK(product(fs) == p);
}

TEST_CASE("hensel_split errors") {
  CHECK(kind_of([] { hensel_split(SpectralPolynomial({ser({}), ser({{0, "-2"}})}, P)); }) ==
        ErrorKind::ResidualFieldExtensionRequired);
  CHECK(kind_of([] { hensel_split(SpectralPolynomial({ser({}), ser({})}, P)); }) == ErrorKind::NotSeparable);
  CHECK(kind_of([] { hensel_split(SpectralPolynomial({ser({}), ser({{3, "-1"}})}, P)); }) ==
        ErrorKind::NotEisenstein);
  CHECK(kind_of([] { hensel_split(SpectralPolynomial({ser({}), ser({{2, "-1"}})}, P)); }) ==
        ErrorKind::NotEisenstein);
}

TEST_CASE("eisenstein_normalize: T^2 - z") {
  auto c = eisenstein_normalize(SpectralPolynomial({ser({}), ser({{1, "-1"}})}, P));
  CHECK(c.n == 2);
  CHECK(c.shift == 0);
  CHECK(c.u == ser({{0, "1"}}, 2 * P));
  CHECK(c.z_of_T == ser({{2, "1"}}, 2 * P));
  CHECK(c.z_of_T.precision() == 2 * P);
}

TEST_CASE("eisenstein_normalize: T^2 - z - z^2") {
  auto c = eisenstein_normalize(SpectralPolynomial({ser({}), ser({{1, "-1"}, {2, "-1"}})}, P));
  CHECK(c.z_of_T == ser({{2, "1"}, {4, "-1"}, {6, "2"}, {8, "-5"}, {10, "14"}}, 11));
  // independent check: z (1 + z) = T^2 and u z = T^2
  auto t2 = LaurentSeries::monomial(1, 2, c.z_of_T.precision());
  CHECK(c.z_of_T * (LaurentSeries::constant(1, 2 * P) + c.z_of_T) == t2);
  CHECK(c.u * c.z_of_T == t2);
  CHECK(c.u.coeff(0) == 1);
}

TEST_CASE("eisenstein_normalize: linear factors") {
  auto c = eisenstein_normalize(SpectralPolynomial({ser({{1, "1"}})}, P));
  CHECK(c.n == 1);
  CHECK(c.shift == 0);
  CHECK(c.u == ser({{0, "1"}}));
  CHECK(c.z_of_T == ser({{1, "1"}}));
  CHECK(c.t_of_param == ser({{1, "1"}}));
  auto d = eisenstein_normalize(SpectralPolynomial({ser({{0, "3"}, {2, "1"}})}, P));
  CHECK(d.shift == 3);
  CHECK(d.t_of_param == ser({{2, "1"}}));
}

TEST_CASE("eisenstein_normalize rejects z^2 constant terms") {
  CHECK(kind_of([] { eisenstein_normalize(SpectralPolynomial({ser({}), ser({{2, "-1"}})}, P)); }) ==
        ErrorKind::NotEisenstein);
}

TEST_CASE("decompose: partitions") {
  CHECK(decompose(SpectralPolynomial({ser({}), ser({{1, "-1"}})}, P)).partition == std::vector<int>{2});
  CHECK(decompose(SpectralPolynomial({ser({{0, "1"}, {1, "1"}}), ser({{1, "1"}})}, P)).partition ==
        std::vector<int>{1, 1});
  // T^3 - 3zT + z(1 + z): a1 = 0, a2 = -3z, a3 = -z - z^2
  auto d = decompose(SpectralPolynomial({ser({}), ser({{1, "-3"}}), ser({{1, "-1"}, {2, "-1"}})}, P));
  CHECK(d.partition == std::vector<int>{3});
}

TEST_CASE("property: catalogue decompositions multiply back and satisfy the uniformizer relation") {
  for (const auto& entry : testing::polynomial_catalogue()) {
    CAPTURE(entry.name);
    auto dec = decompose(entry.p);
    CHECK(dec.partition == entry.partition);
    std::vector<SpectralPolynomial> fs;
    int total = 0;
    for (const auto& c : dec.components) {
      fs.push_back(c.factor);
      total += c.n;
      auto tn = LaurentSeries::monomial(1, c.n, c.z_of_T.precision());
      CHECK(c.z_of_T * c.u == tn);
      CHECK(c.u.coeff(0) != 0);
      auto res = uniformizer_residual(c);
      CHECK(res.is_zero());
      CHECK(res.precision() >= c.n * c.factor.precision());
    }
    CHECK(total == entry.p.n());
    auto prod = product(fs);
    for (int i = 1; i <= entry.p.n(); ++i) CHECK(prod.a(i).truncated(16) == entry.p.a(i).truncated(16));
  }
}

TEST_CASE("pull_back_scalar") {
  auto sq = eisenstein_normalize(SpectralPolynomial({ser({}), ser({{1, "-1"}})}, P));
  CHECK(pull_back_scalar(ser({{1, "1"}}), sq) == ser({{2, "1"}}, 2 * P));
  CHECK(pull_back_scalar(ser({{-1, "1"}}), sq) == ser({{-2, "1"}}, 10));
  // u = 1 + T: z = T^2 / (1 + T), so p(T) = T^2 - z (1 + T) = T^2 - zT - z
  auto c = eisenstein_normalize(SpectralPolynomial({ser({{1, "1"}}), ser({{1, "-1"}})}, P));
  CHECK(c.u == ser({{0, "1"}, {1, "1"}}, 10));
  CHECK(pull_back_scalar(ser({{-1, "1"}}), c) == ser({{-2, "1"}, {-1, "1"}}, 10));
}

TEST_CASE("property: pull_back_scalar is multiplicative") {
  testing::Random rng(41);
  for (const auto& entry : testing::polynomial_catalogue(12)) {
    auto dec = decompose(entry.p);
    for (const auto& c : dec.components) {
      auto f = rng.unit_like(-2, 8).shifted(rng.integer(0, 2));
      auto g = rng.unit_like(-1, 8);
      CHECK(pull_back_scalar(f * g, c) == pull_back_scalar(f, c) * pull_back_scalar(g, c));
      CHECK(pull_back_scalar(f + g, c) == pull_back_scalar(f, c) + pull_back_scalar(g, c));
    }
  }
}

TEST_CASE("idempotents split V_p") {
  for (const auto& entry : testing::polynomial_catalogue(12)) {
    CAPTURE(entry.name);
    auto dec = decompose(entry.p);
    auto e = idempotents(dec);
    AlgebraElement sum = e[0];
    for (std::size_t i = 1; i < e.size(); ++i) sum = sum + e[i];
    CHECK(sum == AlgebraElement::one(entry.p.n(), 12));
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(mul_mod(e[i], e[i], entry.p) == e[i]);
  }
}

TEST_CASE("choose_vm examples") {
  auto sq = decompose(SpectralPolynomial({ser({}), ser({{1, "-1"}})}, P));
  CHECK(choose_vm(0, sq) == AlgebraElement::one(2, P));
  CHECK(choose_vm(1, sq) == AlgebraElement::t_power(1, 2, P));
  auto split = decompose(SpectralPolynomial({ser({{0, "1"}, {1, "1"}}), ser({{1, "1"}})}, P));
  CHECK(choose_vm(2, split) == AlgebraElement::scalar(ser({{1, "1"}}), 2));
}

TEST_CASE("property: choose_vm dimension agrees with the determinant valuation") {
  for (const auto& entry : testing::polynomial_catalogue(16)) {
    CAPTURE(entry.name);
    auto dec = decompose(entry.p);
    for (int m = -3; m <= 4; ++m) {
      CAPTURE(m);
      auto v = choose_vm(m, dec);
      auto det = determinant(multiplication_matrix(v, entry.p));
      CHECK(det.order() == m);
      CHECK(quotient_dimension(v, entry.p) == m);
    }
  }
}

TEST_CASE("closed-form v_m drops m + 2p, not m") {
  // single component of degree 3: -m = 2q + p
  auto d3 = decompose(SpectralPolynomial({ser({}), ser({}), ser({{1, "1"}})}, P));
  for (int m = -4; m <= -1; ++m) {
    int p = (-m) % 2;
    auto v = closed_form_vm(m, d3);
    REQUIRE(v.has_value());
    CHECK(quotient_dimension(*v, d3.p) == m + 2 * p);
  }
  auto split = decompose(SpectralPolynomial({ser({{0, "1"}, {1, "1"}}), ser({{1, "1"}})}, P));
  CHECK_FALSE(closed_form_vm(1, split).has_value());
}
