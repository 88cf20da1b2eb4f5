#pragma once

#include <optional>
#include <string>
#include <vector>

#include "higgs/linalg.hpp"
#include "higgs/spectral.hpp"

namespace higgs {

inline constexpr int kDefaultCutoff = 24;

/// Scalars acting diagonally; the unital algebra they generate.
struct CoordinateAlgebra {
  std::vector<LaurentSeries> generators;
};

/// Exponent range [low, high).
struct Window {
  int low = -8;
  int high = 8;
  int width() const { return high - low; }
  bool operator==(const Window&) const = default;
};

/// A point of the Grassmannian of k((z))^n (or of V_p in the basis 1, T, ..
/// T^(n-1)), known through W ∩ z^low V+ modulo z^high.
///
/// Module points are generated over a coordinate algebra and their window
/// basis is recomputed from the generators; span points are frozen bases.
class GrassmannPoint {
 public:
  GrassmannPoint() = default;

  static GrassmannPoint module(int n, CoordinateAlgebra algebra, std::vector<AlgebraElement> generators,
                               Window window, int cutoff = kDefaultCutoff);
  static GrassmannPoint module(const SpectralPolynomial& p, CoordinateAlgebra algebra,
                               std::vector<AlgebraElement> generators, Window window, int cutoff = kDefaultCutoff);
  /// The k-span of `basis` modulo z^high, with no algebra action.
  static GrassmannPoint span(int n, std::optional<SpectralPolynomial> p, const std::vector<AlgebraElement>& basis,
                             Window window);

  int n() const { return n_; }
  const std::optional<SpectralPolynomial>& p() const { return p_; }
  bool is_module() const { return module_; }
  const CoordinateAlgebra& algebra() const { return algebra_; }
  const std::vector<AlgebraElement>& generators() const { return generators_; }
  Window window() const { return window_; }
  int cutoff() const { return cutoff_; }

  /// Reduced echelon rows over columns (e - low) * n + i, e in [low, high).
  const Echelon& echelon() const { return echelon_; }
  std::vector<AlgebraElement> basis() const;
  /// Leading exponent of each basis vector.
  std::vector<int> pivot_exponents() const;

  /// Module points are recomputed; span points may only shrink.
  GrassmannPoint rewindowed(Window window, std::optional<int> cutoff = std::nullopt) const;

 private:
  void build();

  int n_ = 1;
  std::optional<SpectralPolynomial> p_;
  bool module_ = false;
  CoordinateAlgebra algebra_;
  std::vector<AlgebraElement> generators_;
  Window window_;
  int cutoff_ = kDefaultCutoff;
  Echelon echelon_;
};

struct WindowReport {
  int dim_intersection = 0;  ///< dim W ∩ V+
  int dim_cokernel = 0;      ///< dim V / (W + V+)
  int index = 0;
  Window window;
};

std::vector<AlgebraElement> echelonize(const GrassmannPoint& w);
/// Membership modulo z^min(high, precision of v). PrecisionError when v has
/// terms below the window.
bool contains(const GrassmannPoint& w, const AlgebraElement& v);
/// Certified by recomputing module points at the doubled window and cutoff.
WindowReport index(const GrassmannPoint& w);
/// U is a point of k((z)); the product is generated by pairwise products.
GrassmannPoint module_product(const GrassmannPoint& u, const GrassmannPoint& w);
bool stabilizer_check(const CoordinateAlgebra& a, const GrassmannPoint& w);
GrassmannPoint apply_T(const GrassmannPoint& w);

/// Smallest d >= 0 with z^d (V+)^dual inside V+ under Res Tr.
int trace_dual_defect(const SpectralPolynomial& p);
/// W^⊥ for the pairing Res Tr(x y) dz, as a span point on the window
/// [-high, -low - d) with d = trace_dual_defect(p).
GrassmannPoint orthogonal_complement(const GrassmannPoint& w);

struct LineFixture {
  std::string name;
  SpectralPolynomial p;
  GrassmannPoint W;
  GrassmannPoint Omega;
  GrassmannPoint Omega_inv;
};

/// Projective-line fixtures over A = k[z^-1]: "p1-ramified-positive",
/// "p1-trivial-negative", "p1-unramified".
LineFixture projective_line_fixture(const std::string& name, Window window = {}, int cutoff = kDefaultCutoff,
                                    int precision = 64);
std::vector<std::string> projective_line_fixture_names();

}  // namespace higgs
