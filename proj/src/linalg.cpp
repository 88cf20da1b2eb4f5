#include "higgs/linalg.hpp"

#include <algorithm>

namespace higgs {

bool is_zero(const RowVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

RowVector Echelon::reduce(RowVector v) const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Rational f = v[static_cast<std::size_t>(pivots[r])];
    if (f == 0) continue;
    const RowVector& row = rows[r];
    for (std::size_t c = static_cast<std::size_t>(pivots[r]); c < v.size(); ++c)
      if (row[c] != 0) v[c] -= f * row[c];
  }
  return v;
}

bool Echelon::spans(const RowVector& v) const { return is_zero(reduce(v)); }

Echelon rref(std::vector<RowVector> rows, int cols) {
  Echelon e;
  e.cols = cols;
  std::size_t next = 0;
  for (int c = 0; c < cols && next < rows.size(); ++c) {
    auto cc = static_cast<std::size_t>(c);
    std::size_t piv = next;
    while (piv < rows.size() && rows[piv][cc] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[next], rows[piv]);
    RowVector& pr = rows[next];
    Rational inv = 1 / pr[cc];
    for (std::size_t k = cc; k < pr.size(); ++k)
      if (pr[k] != 0) pr[k] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next || rows[r][cc] == 0) continue;
      Rational f = rows[r][cc];
      for (std::size_t k = cc; k < pr.size(); ++k)
        if (pr[k] != 0) rows[r][k] -= f * pr[k];
    }
    e.pivots.push_back(c);
    ++next;
  }
  rows.resize(next);
  e.rows = std::move(rows);
  return e;
}

std::vector<RowVector> nullspace(const std::vector<RowVector>& rows, int cols) {
  Echelon e = rref(rows, cols);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<RowVector> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    RowVector x(static_cast<std::size_t>(cols));
    x[static_cast<std::size_t>(f)] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r)
      x[static_cast<std::size_t>(e.pivots[r])] = -e.rows[r][static_cast<std::size_t>(f)];
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace higgs
