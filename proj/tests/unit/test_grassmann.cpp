#include <doctest.h>

#include "higgs/errors.hpp"
#include "higgs/grassmann.hpp"
#include "support.hpp"

using namespace higgs;
using higgs::testing::S;

namespace {

constexpr int P = 64;
// Generators are exact data; they carry more precision than p.
constexpr int G = 4 * P;

LaurentSeries mono(int e, const char* c = "1") { return LaurentSeries::monomial(parse_rational(c), e, G); }
LaurentSeries zero() { return LaurentSeries::zero(G); }
AlgebraElement scal(const LaurentSeries& s) { return AlgebraElement{{s}}; }
AlgebraElement vec(const LaurentSeries& a, const LaurentSeries& b) { return AlgebraElement{{a, b}}; }

const CoordinateAlgebra kPoly{{LaurentSeries::monomial(1, -1, G)}};

GrassmannPoint line(int e, Window w = {}) { return GrassmannPoint::module(1, kPoly, {scal(mono(e))}, w); }

SpectralPolynomial t2_minus_z() { return SpectralPolynomial({zero(), -mono(1)}, P); }

LaurentSeries exact(const LaurentSeries& s) { return s.extended(G); }

// Oracle: dim W ∩ V+ and dim V/(W+V+) for W = z^e k[z^-1] by direct count.
int line_index(int e) { return e + 1; }

}  // namespace

TEST_CASE("echelonize k[z^-1]") {
  auto w = line(0, {-4, 4});
  auto b = echelonize(w);
  REQUIRE(b.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(b[static_cast<std::size_t>(i)].c[0].identical(LaurentSeries::monomial(1, i - 4, 4)));
}

TEST_CASE("echelonize rank two free module") {
  auto w = GrassmannPoint::module(2, kPoly, {vec(mono(0), zero()), vec(zero(), mono(0))}, {-2, 2});
  CHECK(w.pivot_exponents() == std::vector<int>{-2, -2, -1, -1, 0, 0});
}

TEST_CASE("echelonize k[z^-1] (1 + z)") {
  auto g = S({{0, "1"}, {1, "1"}}, G);
  auto w = GrassmannPoint::module(1, kPoly, {scal(g)}, {-3, 3});
  auto b = echelonize(w);
  // z^-k (1+z) reduce to z^-3 + ... alternating tails; 1+z itself is in W.
  CHECK(w.pivot_exponents() == std::vector<int>{-3, -2, -1, 0});
  CHECK(contains(w, scal(g)));
  CHECK(contains(w, scal(g * mono(-1))));
  CHECK_FALSE(contains(w, scal(mono(0))));
  // RREF: the last row is 1 + z truncated to z^3
  CHECK(b.back().c[0] == S({{0, "1"}, {1, "1"}}, 3));
}

TEST_CASE("contains") {
  auto w = line(0);
  CHECK(contains(w, scal(mono(-3))));
  CHECK_FALSE(contains(w, scal(mono(1))));
  try {
    contains(w, scal(mono(-9)));
    FAIL("expected PrecisionError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PrecisionError);
  }
}

TEST_CASE("index of z^e k[z^-1]") {
  for (int e = -2; e <= 3; ++e) {
    auto rep = index(line(e));
    CHECK(rep.index == line_index(e));
  }
  CHECK(index(line(0)).dim_intersection == 1);
  CHECK(index(line(0)).dim_cokernel == 0);
  CHECK(index(line(2)).dim_intersection == 3);
  CHECK(index(line(-2)).dim_cokernel == 1);
}

TEST_CASE("module_product") {
  auto a = line(0);
  auto w = line(-3);
  CHECK(module_product(a, w).echelon().rows == w.echelon().rows);
  auto p = t2_minus_z();
  auto wp = GrassmannPoint::module(p, kPoly, {vec(mono(0), zero()), vec(zero(), mono(-1))}, {});
  auto scaled = module_product(line(2), wp);
  auto expect = GrassmannPoint::module(p, kPoly, {vec(mono(2), zero()), vec(zero(), mono(1))}, {});
  CHECK(scaled.echelon().rows == expect.echelon().rows);
  CHECK(module_product(line(-1), line(0)).echelon().rows == line(-1).echelon().rows);
}

TEST_CASE("property: index adds under products of lines") {
  for (int d1 = -2; d1 <= 2; ++d1)
    for (int d2 = -2; d2 <= 2; ++d2) {
      auto prod = module_product(line(d1), line(d2));
      CHECK(index(prod).index == line_index(d1 + d2));
    }
}

TEST_CASE("stabilizer_check") {
  auto g = S({{0, "1"}, {2, "3"}}, G);
  CHECK(stabilizer_check(kPoly, GrassmannPoint::module(1, kPoly, {scal(g)}, {})));
  auto only_one = GrassmannPoint::span(1, std::nullopt, {scal(mono(0))}, {-4, 4});
  CHECK_FALSE(stabilizer_check(kPoly, only_one));
  auto wp = GrassmannPoint::module(t2_minus_z(), kPoly, {vec(mono(0), zero()), vec(zero(), mono(-1))}, {});
  CHECK(stabilizer_check(kPoly, wp));
}

TEST_CASE("apply_T") {
  auto p = t2_minus_z();
  auto wp = GrassmannPoint::module(p, kPoly, {vec(mono(0), zero()), vec(zero(), mono(-1))}, {});
  auto tw = apply_T(wp);
  REQUIRE(tw.generators().size() == 2);
  CHECK(tw.generators()[0] == vec(zero(), mono(0)));
  CHECK(tw.generators()[1] == vec(mono(0), zero()));
  auto one = GrassmannPoint::module(p, kPoly, {vec(mono(0), zero())}, {});
  auto tt = apply_T(apply_T(one));
  CHECK(tt.generators()[0] == vec(mono(1), zero()));
}

TEST_CASE("orthogonal complement of V+ for T^2 - z") {
  auto p = t2_minus_z();
  CHECK(trace_dual_defect(p) == 1);
  // V+ in the window [0, 8): basis z^a, z^a T for a in [0, 8)
  std::vector<AlgebraElement> b;
  for (int a = 0; a < 8; ++a) {
    b.push_back(vec(mono(a), zero()));
    b.push_back(vec(zero(), mono(a)));
  }
  auto vplus = GrassmannPoint::span(2, p, b, {0, 8});
  auto perp = orthogonal_complement(vplus);
  CHECK(perp.window() == Window{-8, -1});
  // k[[z]] 1 + z^-1 k[[z]] T inside [-8, -1) is empty: the complement is tail only.
  CHECK(perp.basis().empty());
  // widen: V+ at [-4, 8) -> complement window [-8, 3): basis 1, z, T z^-1, T, ...
  std::vector<AlgebraElement> b2;
  for (int a = 0; a < 8; ++a) {
    b2.push_back(vec(mono(a), zero()));
    b2.push_back(vec(zero(), mono(a)));
  }
  auto perp2 = orthogonal_complement(GrassmannPoint::span(2, p, b2, {-4, 8}));
  CHECK(perp2.window() == Window{-8, 3});
  // oracle: (V+)^⊥ = k[[z]] ⊕ z^-1 k[[z]] T, so within [-8, 3) the pivots are
  // z^-1 T, 1, T, z, zT, z^2, z^2 T
  CHECK(perp2.pivot_exponents() == std::vector<int>{-1, 0, 0, 1, 1, 2, 2});
  CHECK(contains(perp2, vec(zero(), mono(-1))));
  CHECK_FALSE(contains(perp2, vec(mono(-1), zero())));
}

TEST_CASE("complement of the full window is empty") {
  auto p = t2_minus_z();
  std::vector<AlgebraElement> b;
  for (int a = -4; a < 4; ++a) {
    b.push_back(vec(mono(a), zero()));
    b.push_back(vec(zero(), mono(a)));
  }
  auto perp = orthogonal_complement(GrassmannPoint::span(2, p, b, {-4, 4}));
  CHECK(perp.basis().empty());
}

TEST_CASE("property: double complement restores the window basis") {
  auto p = t2_minus_z();
  auto wp = GrassmannPoint::module(p, kPoly, {vec(mono(0), zero()), vec(zero(), mono(-1))}, {-8, 8});
  auto perp = orthogonal_complement(wp);
  auto back = orthogonal_complement(perp);
  CHECK(back.window() == Window{-7, 7});
  CHECK(back.echelon().rows == wp.rewindowed({-7, 7}).echelon().rows);

  SpectralPolynomial q({S({{0, "1"}}, P), S({{1, "2"}, {2, "1"}}, P), S({{1, "1"}}, P)}, P);
  auto h = S({{0, "1"}, {1, "1"}, {3, "-2"}}, G);
  std::vector<AlgebraElement> gens{AlgebraElement{{h, zero(), zero()}}, AlgebraElement{{zero(), h, zero()}},
                                   AlgebraElement{{zero(), zero(), h * mono(-1)}}};
  auto w3 = GrassmannPoint::module(q, kPoly, gens, {-6, 6});
  int d = trace_dual_defect(q);
  auto back3 = orthogonal_complement(orthogonal_complement(w3));
  CHECK(back3.window() == Window{-6 + d, 6 - d});
  CHECK(back3.echelon().rows == w3.rewindowed({-6 + d, 6 - d}).echelon().rows);
}

TEST_CASE("property: complement is orthogonal to the window basis") {
  auto p = t2_minus_z();
  auto wp = GrassmannPoint::module(p, kPoly, {vec(mono(0), zero()), vec(zero(), mono(-1))}, {-6, 6});
  auto perp = orthogonal_complement(wp);
  const int d = trace_dual_defect(p);
  auto piv = wp.pivot_exponents();
  auto basis = wp.basis();
  int checked = 0;
  for (const auto& x : perp.basis())
    for (std::size_t k = 0; k < basis.size(); ++k) {
      // Unknown tails pair to z^0 and beyond once w starts at low + d.
      if (piv[k] < wp.window().low + d) continue;
      AlgebraElement xe{{exact(x.c[0]), exact(x.c[1])}};
      AlgebraElement we{{exact(basis[k].c[0]), exact(basis[k].c[1])}};
      CHECK(trace_pairing(xe, we, p) == 0);
      ++checked;
    }
  CHECK(checked > 20);
}

TEST_CASE("property: unit translation (gW)^⊥ = g^-1 W^⊥") {
  auto p = t2_minus_z();
  testing::Random rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    auto g = rng.unit_like(0, G);
    g = g * LaurentSeries::constant(1 / g.coeff(0), G);
    std::vector<AlgebraElement> gens{vec(mono(0), zero()), vec(zero(), mono(-1))};
    auto w = GrassmannPoint::module(p, kPoly, gens, {-6, 6});
    std::vector<AlgebraElement> ggens;
    for (const auto& x : gens) ggens.push_back(x * g);
    auto gw = GrassmannPoint::module(p, kPoly, ggens, {-6, 6}, 30);
    auto lhs = orthogonal_complement(gw);
    auto ginv = invert(g);
    std::vector<AlgebraElement> moved;
    auto perp = orthogonal_complement(w);
    for (const auto& x : perp.basis()) moved.push_back((x * ginv).truncated(perp.window().high));
    auto rhs = GrassmannPoint::span(2, p, moved, perp.window());
    CHECK(lhs.echelon().rows == rhs.echelon().rows);
  }
}

TEST_CASE("property: window stability under a doubled cutoff") {
  auto p = t2_minus_z();
  auto wp = GrassmannPoint::module(p, kPoly, {vec(mono(0), zero()), vec(zero(), mono(-1))}, {-8, 8});
  auto wide = wp.rewindowed({-8, 8}, 48);
  CHECK(wide.echelon().rows == wp.echelon().rows);
  CHECK(index(wide).index == index(wp).index);
  CHECK(orthogonal_complement(wide).echelon().rows == orthogonal_complement(wp).echelon().rows);
}

TEST_CASE("insufficient precision is reported, not guessed") {
  SpectralPolynomial low({zero().truncated(8), -mono(1).truncated(8)}, 8);
  auto w = GrassmannPoint::module(low, kPoly,
                                  {AlgebraElement{{mono(0), zero()}}}, {-8, 8});
  try {
    orthogonal_complement(w);
    FAIL("expected PrecisionError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PrecisionError);
  }
}

TEST_CASE("fixtures") {
  auto f = projective_line_fixture("p1-ramified-positive");
  CHECK(f.p.a(2) == -mono(1));
  CHECK(f.W.generators().size() == 2);
  CHECK(index(f.W).index == 1);
  CHECK(stabilizer_check(f.W.algebra(), f.W));
  CHECK(index(f.Omega).index == 3);
  auto u = projective_line_fixture("p1-unramified");
  CHECK(u.p.a(2) == -mono(0));
  try {
    projective_line_fixture("p2-nothing");
    FAIL("expected UnknownFixture");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownFixture);
  }
}
