#include "higgs/series.hpp"

#include <algorithm>
#include <sstream>

#include "higgs/errors.hpp"

namespace higgs {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) fail(ErrorKind::ParseError, "empty rational");
  Rational q;
  if (q.set_str(s, 10) != 0) fail(ErrorKind::ParseError, "bad rational '" + s + "'");
  if (q.get_den() == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rational_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// ---------------------------------------------------------------------------

void LaurentSeries::normalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    order_ = precision_;
    return;
  }
  if (lead > 0) coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
  order_ += static_cast<int>(lead);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

LaurentSeries LaurentSeries::zero(int precision) {
  LaurentSeries s;
  s.order_ = precision;
  s.precision_ = precision;
  return s;
}

LaurentSeries LaurentSeries::constant(const Rational& c, int precision) {
  return monomial(c, 0, precision);
}

LaurentSeries LaurentSeries::monomial(const Rational& c, int exponent, int precision) {
  return from_coeffs(exponent, {c}, precision);
}

LaurentSeries LaurentSeries::from_coeffs(int order, std::vector<Rational> coeffs, int precision) {
  LaurentSeries s;
  s.precision_ = precision;
  s.order_ = std::min(order, precision);
  if (order < precision) {
    auto keep = static_cast<std::size_t>(precision - order);
    if (coeffs.size() > keep) coeffs.resize(keep);
    s.coeffs_ = std::move(coeffs);
  }
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::from_terms(const std::map<int, Rational>& terms, int precision) {
  if (terms.empty()) return zero(precision);
  int lo = terms.begin()->first;
  int hi = std::min(terms.rbegin()->first + 1, precision);
  if (lo >= precision) return zero(precision);
  std::vector<Rational> c(static_cast<std::size_t>(hi - lo));
  for (const auto& [e, v] : terms)
    if (e < hi) c[static_cast<std::size_t>(e - lo)] = v;
  return from_coeffs(lo, std::move(c), precision);
}

Rational LaurentSeries::coeff(int e) const {
  if (e >= precision_)
    fail(ErrorKind::PrecisionError,
         "coefficient z^" + std::to_string(e) + " beyond precision " + std::to_string(precision_));
  if (e < order_) return 0;
  auto i = static_cast<std::size_t>(e - order_);
  return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

std::map<int, Rational> LaurentSeries::terms() const {
  std::map<int, Rational> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) out.emplace(order_ + static_cast<int>(i), coeffs_[i]);
  return out;
}

LaurentSeries LaurentSeries::truncated(int precision) const {
  if (precision >= precision_) return *this;
  return from_coeffs(order_, coeffs_, precision);
}

LaurentSeries LaurentSeries::extended(int precision) const {
  LaurentSeries s = *this;
  if (precision > s.precision_) {
    if (s.coeffs_.empty()) s.order_ = precision;
    s.precision_ = precision;
  } else {
    s = truncated(precision);
  }
  return s;
}

LaurentSeries LaurentSeries::shifted(int k) const {
  LaurentSeries s = *this;
  s.order_ += k;
  s.precision_ += k;
  return s;
}

LaurentSeries LaurentSeries::derivative() const {
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i] * (order_ + static_cast<int>(i));
  return from_coeffs(order_ - 1, std::move(c), precision_ - 1);
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries s = *this;
  for (auto& c : s.coeffs_) c = -c;
  return s;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& rhs) {
  int prec = std::min(precision_, rhs.precision_);
  int lo = std::min(order_, rhs.order_);
  if (lo >= prec) return *this = zero(prec);
  int hi = prec;
  int top = lo;
  if (!coeffs_.empty()) top = std::max(top, order_ + static_cast<int>(coeffs_.size()));
  if (!rhs.coeffs_.empty()) top = std::max(top, rhs.order_ + static_cast<int>(rhs.coeffs_.size()));
  hi = std::min(hi, top);
  std::vector<Rational> c(static_cast<std::size_t>(std::max(0, hi - lo)));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    int e = order_ + static_cast<int>(i);
    if (e < hi) c[static_cast<std::size_t>(e - lo)] += coeffs_[i];
  }
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
    int e = rhs.order_ + static_cast<int>(i);
    if (e < hi) c[static_cast<std::size_t>(e - lo)] += rhs.coeffs_[i];
  }
  return *this = from_coeffs(lo, std::move(c), prec);
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& rhs) { return *this += -rhs; }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  int prec = std::min(a.order_ + b.precision_, b.order_ + a.precision_);
  if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(prec);
  int lo = a.order_ + b.order_;
  if (lo >= prec) return LaurentSeries::zero(prec);
  std::size_t len = std::min<std::size_t>(static_cast<std::size_t>(prec - lo),
                                          a.coeffs_.size() + b.coeffs_.size() - 1);
  std::vector<Rational> c(len);
  for (std::size_t i = 0; i < a.coeffs_.size() && i < len; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size() && i + j < len; ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return LaurentSeries::from_coeffs(lo, std::move(c), prec);
}

LaurentSeries& LaurentSeries::operator*=(const LaurentSeries& rhs) { return *this = *this * rhs; }

LaurentSeries& LaurentSeries::operator*=(const Rational& c) {
  if (c == 0) return *this = zero(precision_);
  for (auto& x : coeffs_) x *= c;
  return *this;
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
  int prec = std::min(a.precision_, b.precision_);
  return (a - b).truncated(prec).is_zero();
}

bool LaurentSeries::identical(const LaurentSeries& other) const {
  return precision_ == other.precision_ && order_ == other.order_ && coeffs_ == other.coeffs_;
}

std::string LaurentSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.get_str() << ")";
    if (e != 0) os << "*z^" << e;
  }
  if (first) os << "0";
  os << " + O(z^" << precision_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

LaurentSeries invert(const LaurentSeries& a) {
  if (a.is_zero())
    fail(ErrorKind::ZeroLeadingCoefficient, "cannot invert a series that is zero to precision");
  int v = a.order();
  int rel = a.precision() - v;
  std::vector<Rational> ac(static_cast<std::size_t>(rel));
  for (int i = 0; i < rel; ++i) ac[static_cast<std::size_t>(i)] = a.coeff(v + i);
  std::vector<Rational> b(static_cast<std::size_t>(rel));
  Rational inv0 = 1 / ac[0];
  b[0] = inv0;
  for (std::size_t k = 1; k < b.size(); ++k) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= k; ++j)
      if (ac[j] != 0) acc += ac[j] * b[k - j];
    b[k] = -acc * inv0;
  }
  return LaurentSeries::from_coeffs(-v, std::move(b), -v + rel);
}

LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * invert(b); }

LaurentSeries pow(const LaurentSeries& a, int k) {
  if (k < 0) return pow(invert(a), -k);
  if (k == 0) return LaurentSeries::constant(1, a.is_zero() ? a.precision() : a.precision() - a.order());
  LaurentSeries result;
  LaurentSeries base = a;
  bool started = false;
  while (k > 0) {
    if (k & 1) {
      result = started ? result * base : base;
      started = true;
    }
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Rational residue(const LaurentSeries& a) {
  if (a.precision() <= -1)
    fail(ErrorKind::PrecisionError,
         "residue needs z^-1 inside the known window; precision is " + std::to_string(a.precision()));
  return a.coeff(-1);
}

PowerSeries compose(const PowerSeries& f, const PowerSeries& g) {
  if (!f.is_power_series())
    fail(ErrorKind::InvalidArgument, "compose: outer series has negative exponents");
  if (g.precision() <= 0 || g.coeff(0) != 0 || g.order() < 0)
    fail(ErrorKind::NonzeroConstantTerm, "compose: inner series must have zero constant term");
  int v = g.is_zero() ? g.precision() : g.order();
  long long target_ll = std::min<long long>(static_cast<long long>(f.precision()) * v, g.precision());
  int target = static_cast<int>(target_ll);
  LaurentSeries gt = g.truncated(target);
  int top = std::min(f.precision() - 1, target / std::max(v, 1));
  LaurentSeries acc = LaurentSeries::zero(target);
  for (int k = top; k >= 0; --k) {
    acc = (acc * gt).truncated(target) + LaurentSeries::constant(f.coeff(k), target);
  }
  return acc.truncated(target);
}

LaurentSeries SeriesRelation::evaluate(const LaurentSeries& s) const {
  if (coeffs.empty()) fail(ErrorKind::InvalidArgument, "empty relation");
  LaurentSeries acc = coeffs.back();
  for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) acc = acc * s + *it;
  return acc;
}

LaurentSeries SeriesRelation::derivative_at(const LaurentSeries& s) const {
  if (coeffs.size() < 2) return LaurentSeries::zero(coeffs.empty() ? 0 : coeffs[0].precision());
  LaurentSeries acc = coeffs.back() * Rational(static_cast<long>(coeffs.size() - 1));
  for (std::size_t m = coeffs.size() - 2; m >= 1; --m) {
    acc = acc * s + coeffs[m] * Rational(static_cast<long>(m));
    if (m == 1) break;
  }
  return acc;
}

PowerSeries solve_implicit(const SeriesRelation& relation, const PowerSeries& initial_guess,
                           int target_precision) {
  LaurentSeries s = initial_guess.extended(target_precision);
  LaurentSeries r = relation.evaluate(s);
  if (r.precision() < target_precision)
    fail(ErrorKind::PrecisionError, "relation is known only to z^" + std::to_string(r.precision()));
  r = r.truncated(target_precision);
  int last = r.is_zero() ? target_precision : r.order();
  if (last <= 0 && !r.is_zero())
    fail(ErrorKind::NoConvergence, "initial guess is not an approximate root");
  // Correct digits double per step; the cap is a safety net well above log2(target).
  for (int step = 0; step < 64 && !r.is_zero(); ++step) {
    LaurentSeries d = relation.derivative_at(s);
    if (d.is_zero() || d.order() != 0)
      fail(ErrorKind::NoConvergence, "derivative of the relation is not a unit at the iterate");
    int next = std::min(2 * last, target_precision);
    LaurentSeries delta = (r.truncated(next) * invert(d.truncated(next))).truncated(next);
    s = s - delta.extended(target_precision);
    r = relation.evaluate(s).truncated(target_precision);
    int now = r.is_zero() ? target_precision : r.order();
    if (now <= last) fail(ErrorKind::NoConvergence, "Newton correction did not gain valuation");
    last = now;
  }
  if (!r.is_zero()) fail(ErrorKind::NoConvergence, "iteration cap reached");
  return s.truncated(target_precision);
}

}  // namespace higgs
