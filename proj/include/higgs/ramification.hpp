#pragma once

#include <optional>
#include <vector>

#include "higgs/series.hpp"
#include "higgs/spectral.hpp"

namespace higgs {

/// One local branch T_i^n - z u(T_i) of the spectral cover, T_i = T - shift.
struct RamifiedComponent {
  int n = 0;
  Rational shift;
  /// Unit with z_of_T * u = T_i^n.
  PowerSeries u;
  /// z as a series in the local parameter. For n = 1 the local parameter is
  /// z itself and this is the identity series.
  PowerSeries z_of_T;
  /// T - shift as a series in the local parameter: T_i when n > 1, the
  /// root of the factor (minus shift) when n = 1.
  PowerSeries t_of_param;
  /// Monic degree-n factor of p over k[[z]].
  SpectralPolynomial factor;
};

struct Decomposition {
  SpectralPolynomial p;
  std::vector<RamifiedComponent> components;
  /// Descending.
  std::vector<int> partition;
};

/// Monic factors of p over k[[z]], one per residual root, with blocks at a
/// shared residual root separated further by their Newton polygon.
std::vector<SpectralPolynomial> hensel_split(const SpectralPolynomial& p);
RamifiedComponent eisenstein_normalize(const SpectralPolynomial& q);
Decomposition decompose(const SpectralPolynomial& p);

/// The shifted factor evaluated on the local parametrization; vanishes to
/// its precision for a correct component.
LaurentSeries uniformizer_residual(const RamifiedComponent& comp);

/// f(z_of_T) as a Laurent series in the local parameter.
LaurentSeries pull_back_scalar(const LaurentSeries& f, const RamifiedComponent& comp);

/// The image of v in component i, as a Laurent series in its local parameter.
LaurentSeries component_value(const AlgebraElement& v, const Decomposition& dec, std::size_t i);

/// e_i with e_i = 1 on component i and 0 on the others.
std::vector<AlgebraElement> idempotents(const Decomposition& dec);
/// The local parameter of component i as an element of k((z))[T]/q_i.
AlgebraElement uniformizer(const RamifiedComponent& comp);
/// Element of V_p restricting to parts[i] (an element of k((z))[T]/q_i) on each component.
AlgebraElement assemble(const Decomposition& dec, const std::vector<AlgebraElement>& parts);

/// dim V+/vV+ - dim vV+/V+ for the lattice V+ = k[[z]][T]/p, by row reduction.
int quotient_dimension(const AlgebraElement& v, const SpectralPolynomial& p);

/// Product of uniformizer powers with balanced exponents (earlier components
/// take the remainder) and quotient dimension exactly m.
AlgebraElement choose_vm(int m, const Decomposition& dec);

/// The two-case closed form (z^-1 T)^q T_1^(s+1)...T_r^s and its reflected
/// branch. Empty when n equals the number of components.
std::optional<AlgebraElement> closed_form_vm(int m, const Decomposition& dec);

}  // namespace higgs
