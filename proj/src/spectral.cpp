#include "higgs/spectral.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <optional>

#include "higgs/errors.hpp"

namespace higgs {

namespace {

// Precision used for structural constants (the 1 of an empty product).
constexpr int kExact = 1 << 24;

LaurentSeries signed_term(int sign, const LaurentSeries& s) { return sign > 0 ? s : -s; }

}  // namespace

SpectralPolynomial::SpectralPolynomial(std::vector<PowerSeries> a, int precision)
    : a_(std::move(a)), precision_(precision) {
  if (a_.empty()) fail(ErrorKind::InvalidArgument, "spectral polynomial needs n >= 1");
  for (auto& s : a_) {
    if (!s.is_power_series())
      fail(ErrorKind::InvalidArgument, "characteristic coefficients must be power series");
    if (s.precision() < precision_)
      fail(ErrorKind::PrecisionError, "coefficient precision " + std::to_string(s.precision()) +
                                          " below working precision " + std::to_string(precision_));
    s = s.truncated(precision_);
  }
}

SpectralPolynomial SpectralPolynomial::from_monic(const std::vector<PowerSeries>& c, int precision) {
  int n = static_cast<int>(c.size());
  std::vector<PowerSeries> a(c.size());
  for (int i = 1; i <= n; ++i) {
    const PowerSeries& ci = c[static_cast<std::size_t>(n - i)];
    a[static_cast<std::size_t>(i - 1)] = (i % 2 == 0) ? ci : -ci;
  }
  return SpectralPolynomial(std::move(a), precision);
}

PowerSeries SpectralPolynomial::a(int i) const {
  if (i < 1) fail(ErrorKind::InvalidArgument, "a_i is indexed from 1");
  if (i > n()) return LaurentSeries::zero(precision_);
  return a_[static_cast<std::size_t>(i - 1)];
}

std::vector<PowerSeries> SpectralPolynomial::monic_coefficients() const {
  std::vector<PowerSeries> c(a_.size());
  for (int i = 1; i <= n(); ++i) {
    const PowerSeries& ai = a_[static_cast<std::size_t>(i - 1)];
    c[static_cast<std::size_t>(n() - i)] = (i % 2 == 0) ? ai : -ai;
  }
  return c;
}

bool SpectralPolynomial::operator==(const SpectralPolynomial& other) const {
  if (n() != other.n()) return false;
  for (int i = 1; i <= n(); ++i)
    if (a(i) != other.a(i)) return false;
  return true;
}

// ---------------------------------------------------------------------------

AlgebraElement AlgebraElement::scalar(const LaurentSeries& s, int n) {
  AlgebraElement e;
  e.c.assign(static_cast<std::size_t>(n), LaurentSeries::zero(s.precision()));
  e.c[0] = s;
  return e;
}

AlgebraElement AlgebraElement::one(int n, int precision) {
  return scalar(LaurentSeries::constant(1, precision), n);
}

AlgebraElement AlgebraElement::t_power(int k, int n, int precision) {
  if (k < 0 || k >= n) fail(ErrorKind::InvalidArgument, "t_power needs 0 <= k < n");
  AlgebraElement e;
  e.c.assign(static_cast<std::size_t>(n), LaurentSeries::zero(precision));
  e.c[static_cast<std::size_t>(k)] = LaurentSeries::constant(1, precision);
  return e;
}

int AlgebraElement::order() const {
  int o = INT_MAX;
  for (const auto& s : c) o = std::min(o, s.order());
  return o;
}

int AlgebraElement::precision() const {
  int p = INT_MAX;
  for (const auto& s : c) p = std::min(p, s.precision());
  return p;
}

bool AlgebraElement::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const LaurentSeries& s) { return s.is_zero(); });
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
  return r;
}

AlgebraElement AlgebraElement::operator*(const LaurentSeries& s) const {
  AlgebraElement r = *this;
  for (auto& x : r.c) x = x * s;
  return r;
}

AlgebraElement AlgebraElement::shifted(int k) const {
  AlgebraElement r = *this;
  for (auto& x : r.c) x = x.shifted(k);
  return r;
}

AlgebraElement AlgebraElement::truncated(int precision) const {
  AlgebraElement r = *this;
  for (auto& x : r.c) x = x.truncated(precision);
  return r;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  if (c.size() != o.c.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != o.c[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------

SeriesMatrix::SeriesMatrix(int rows, int cols, int precision)
    : rows_(rows), cols_(cols),
      e_(static_cast<std::size_t>(rows * cols), LaurentSeries::zero(precision)) {}

SeriesMatrix SeriesMatrix::identity(int n, int precision) {
  SeriesMatrix m(n, n, precision);
  for (int i = 0; i < n; ++i) m(i, i) = LaurentSeries::constant(1, precision);
  return m;
}

SeriesMatrix SeriesMatrix::operator*(const SeriesMatrix& o) const {
  if (cols_ != o.rows_) fail(ErrorKind::InvalidArgument, "matrix shape mismatch");
  SeriesMatrix r(rows_, o.cols_, 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      LaurentSeries acc = (*this)(i, 0) * o(0, j);
      for (int k = 1; k < cols_; ++k) acc += (*this)(i, k) * o(k, j);
      r(i, j) = acc;
    }
  return r;
}

SeriesMatrix SeriesMatrix::operator+(const SeriesMatrix& o) const {
  SeriesMatrix r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

bool SeriesMatrix::operator==(const SeriesMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != o.e_[i]) return false;
  return true;
}

namespace {

LaurentSeries minor_determinant(const SeriesMatrix& m, const std::vector<int>& rows,
                                const std::vector<int>& cols) {
  const std::size_t k = rows.size();
  if (k == 0) return LaurentSeries::constant(1, kExact);
  std::vector<std::optional<LaurentSeries>> dp(std::size_t{1} << k);
  dp[0] = LaurentSeries::constant(1, kExact);
  for (unsigned mask = 0; mask < dp.size(); ++mask) {
    if (!dp[mask]) continue;
    const int r = std::popcount(mask);
    if (static_cast<std::size_t>(r) == k) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (mask & (1u << j)) continue;
      const int sign = (std::popcount(mask >> (j + 1)) % 2 == 0) ? 1 : -1;
      LaurentSeries term = signed_term(sign, *dp[mask] * m(rows[static_cast<std::size_t>(r)], cols[j]));
      auto& slot = dp[mask | (1u << j)];
      slot = slot ? *slot + term : term;
    }
  }
  return *dp.back();
}

}  // namespace

LaurentSeries determinant(const SeriesMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  std::vector<int> idx(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) idx[static_cast<std::size_t>(i)] = i;
  return minor_determinant(m, idx, idx);
}

namespace {

// Gauss-Jordan on [m | rhs]; pivots are chosen with minimal z-order.
void eliminate(SeriesMatrix& m, std::vector<std::vector<LaurentSeries>>& rhs) {
  const int n = m.rows();
  for (int col = 0; col < n; ++col) {
    int best = -1;
    for (int r = col; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      if (best < 0 || m(r, col).order() < m(best, col).order()) best = r;
    }
    if (best < 0) fail(ErrorKind::NotInvertible, "matrix is singular to the available precision");
    if (best != col) {
      for (int j = 0; j < n; ++j) std::swap(m(best, j), m(col, j));
      std::swap(rhs[static_cast<std::size_t>(best)], rhs[static_cast<std::size_t>(col)]);
    }
    LaurentSeries inv = invert(m(col, col));
    for (int j = 0; j < n; ++j) m(col, j) = m(col, j) * inv;
    for (auto& x : rhs[static_cast<std::size_t>(col)]) x = x * inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || m(r, col).is_zero()) continue;
      LaurentSeries f = m(r, col);
      for (int j = 0; j < n; ++j) m(r, j) -= f * m(col, j);
      auto& dst = rhs[static_cast<std::size_t>(r)];
      const auto& src = rhs[static_cast<std::size_t>(col)];
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] -= f * src[j];
    }
  }
}

}  // namespace

SeriesMatrix inverse(const SeriesMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidArgument, "inverse of a non-square matrix");
  const int n = m.rows();
  int prec = INT_MAX;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) prec = std::min(prec, m(i, j).precision());
  SeriesMatrix work = m;
  std::vector<std::vector<LaurentSeries>> rhs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rhs[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(n), LaurentSeries::zero(kExact));
    rhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = LaurentSeries::constant(1, kExact);
  }
  eliminate(work, rhs);
  SeriesMatrix out(n, n, prec);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = rhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

std::vector<LaurentSeries> solve(const SeriesMatrix& m, std::vector<LaurentSeries> b) {
  SeriesMatrix work = m;
  std::vector<std::vector<LaurentSeries>> rhs(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) rhs[i] = {std::move(b[i])};
  eliminate(work, rhs);
  std::vector<LaurentSeries> x(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) x[i] = rhs[i][0];
  return x;
}

// ---------------------------------------------------------------------------

SeriesMatrix companion_matrix(const SpectralPolynomial& p) {
  const int n = p.n();
  SeriesMatrix m(n, n, p.precision());
  for (int j = 0; j + 1 < n; ++j) m(j + 1, j) = LaurentSeries::constant(1, p.precision());
  for (int row = 0; row < n; ++row) {
    const int i = n - row;
    m(row, n - 1) = ((i + 1) % 2 == 0) ? p.a(i) : -p.a(i);
  }
  return m;
}

AlgebraElement mul_mod(const AlgebraElement& a, const AlgebraElement& b, const SpectralPolynomial& p) {
  const int n = p.n();
  if (a.n() != n || b.n() != n) fail(ErrorKind::InvalidArgument, "element rank does not match p");
  std::vector<std::optional<LaurentSeries>> d(static_cast<std::size_t>(2 * n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      LaurentSeries t = a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(j)];
      auto& slot = d[static_cast<std::size_t>(i + j)];
      slot = slot ? *slot + t : t;
    }
  // T^n = sum_{i=1}^n (-1)^(i+1) a_i T^(n-i)
  for (int k = 2 * n - 2; k >= n; --k) {
    const LaurentSeries top = *d[static_cast<std::size_t>(k)];
    for (int i = 1; i <= n; ++i) {
      LaurentSeries t = top * p.a(i);
      auto& slot = d[static_cast<std::size_t>(k - i)];
      *slot = (i % 2 == 1) ? *slot + t : *slot - t;
    }
  }
  AlgebraElement out;
  for (int i = 0; i < n; ++i) out.c.push_back(*d[static_cast<std::size_t>(i)]);
  return out;
}

SeriesMatrix multiplication_matrix(const AlgebraElement& a, const SpectralPolynomial& p) {
  const int n = p.n();
  SeriesMatrix m(n, n, p.precision());
  AlgebraElement col = a;
  AlgebraElement t = n > 1 ? AlgebraElement::t_power(1, n, p.precision()) : AlgebraElement{};
  for (int j = 0; j < n; ++j) {
    if (j > 0) col = mul_mod(col, t, p);
    for (int i = 0; i < n; ++i) m(i, j) = col.c[static_cast<std::size_t>(i)];
  }
  return m;
}

AlgebraElement invert_element(const AlgebraElement& a, const SpectralPolynomial& p) {
  const int n = p.n();
  SeriesMatrix m = multiplication_matrix(a, p);
  std::vector<LaurentSeries> rhs(static_cast<std::size_t>(n), LaurentSeries::zero(kExact));
  rhs[0] = LaurentSeries::constant(1, kExact);
  AlgebraElement out;
  try {
    out.c = solve(m, std::move(rhs));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotInvertible || e.kind() == ErrorKind::ZeroLeadingCoefficient)
      fail(ErrorKind::NotInvertible, "element has zero norm to the available precision");
    throw;
  }
  return out;
}

AlgebraElement power(const AlgebraElement& a, int k, const SpectralPolynomial& p) {
  if (k < 0) return power(invert_element(a, p), -k, p);
  AlgebraElement result = AlgebraElement::one(p.n(), std::max(a.precision(), p.precision()));
  AlgebraElement base = a;
  while (k > 0) {
    if (k & 1) result = mul_mod(result, base, p);
    k >>= 1;
    if (k > 0) base = mul_mod(base, base, p);
  }
  return result;
}

std::vector<LaurentSeries> power_traces(const SpectralPolynomial& p, int kmax) {
  const int n = p.n();
  std::vector<LaurentSeries> t;
  t.push_back(LaurentSeries::constant(n, p.precision()));
  for (int k = 1; k <= kmax; ++k) {
    LaurentSeries acc = LaurentSeries::zero(p.precision());
    for (int i = 1; i <= std::min(k - 1, n); ++i) {
      LaurentSeries term = p.a(i) * t[static_cast<std::size_t>(k - i)];
      acc = (i % 2 == 1) ? acc + term : acc - term;
    }
    if (k <= n) {
      LaurentSeries term = p.a(k) * Rational(k);
      acc = (k % 2 == 1) ? acc + term : acc - term;
    }
    t.push_back(acc);
  }
  return t;
}

AlgebraElement t_element(const SpectralPolynomial& p) {
  if (p.n() == 1) return AlgebraElement{{p.a(1)}};
  return AlgebraElement::t_power(1, p.n(), p.precision());
}

LaurentSeries power_trace(int k, const SpectralPolynomial& p) {
  if (k < -1) fail(ErrorKind::InvalidArgument, "power_trace supports k >= -1");
  if (k == -1) {
    if (p.n() == 1) {
      if (p.a(1).is_zero()) fail(ErrorKind::NotInvertible, "T is not invertible: a_1 vanishes");
      return invert(p.a(1));
    }
    return element_trace(invert_element(AlgebraElement::t_power(1, p.n(), p.precision()), p), p);
  }
  return power_traces(p, k)[static_cast<std::size_t>(k)];
}

LaurentSeries power_trace_determinant(int k, const SpectralPolynomial& p) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "determinant form needs k >= 0");
  if (k == 0) return LaurentSeries::constant(p.n(), p.precision());
  SeriesMatrix m(k, k, p.precision());
  for (int i = 0; i < k; ++i) {
    m(i, 0) = p.a(i + 1) * Rational(i + 1);
    for (int j = 1; j <= i; ++j) m(i, j) = p.a(i - j + 1);
    if (i + 1 < k) m(i, i + 1) = LaurentSeries::constant(1, p.precision());
  }
  return determinant(m);
}

LaurentSeries element_trace(const AlgebraElement& a, const SpectralPolynomial& p) {
  auto t = power_traces(p, p.n() - 1);
  LaurentSeries acc = a.c[0] * t[0];
  for (int i = 1; i < p.n(); ++i) acc += a.c[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)];
  return acc;
}

Rational trace_pairing(const AlgebraElement& a, const AlgebraElement& b, const SpectralPolynomial& p) {
  return residue(element_trace(mul_mod(a, b, p), p));
}

SpectralPolynomial matrix_char_coefficients(const SeriesMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) fail(ErrorKind::InvalidArgument, "need a square matrix");
  const int n = m.rows();
  int prec = INT_MAX;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!m(i, j).is_power_series()) fail(ErrorKind::InvalidArgument, "matrix entries must lie in k[[z]]");
      prec = std::min(prec, m(i, j).precision());
    }
  std::vector<std::optional<LaurentSeries>> a(static_cast<std::size_t>(n));
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    LaurentSeries d = minor_determinant(m, idx, idx);
    auto& slot = a[idx.size() - 1];
    slot = slot ? *slot + d : d;
  }
  std::vector<PowerSeries> out;
  for (auto& s : a) {
    prec = std::min(prec, s->precision());
    out.push_back(*s);
  }
  return SpectralPolynomial(std::move(out), prec);
}

LaurentSeries discriminant(const SpectralPolynomial& p) {
  const int n = p.n();
  if (n == 1) return LaurentSeries::constant(1, p.precision());
  auto c = p.monic_coefficients();
  AlgebraElement dp;
  for (int j = 1; j < n; ++j) dp.c.push_back(c[static_cast<std::size_t>(j)] * Rational(j));
  dp.c.push_back(LaurentSeries::constant(n, p.precision()));
  return determinant(multiplication_matrix(dp, p));
}

bool is_separable(const SpectralPolynomial& p) {
  LaurentSeries d = discriminant(p);
  if (d.precision() <= 0)
    fail(ErrorKind::PrecisionError, "discriminant carries no information at this precision");
  return !d.is_zero();
}

}  // namespace higgs
