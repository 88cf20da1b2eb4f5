#pragma once

#include <vector>

#include "higgs/series.hpp"

namespace higgs {

using RowVector = std::vector<Rational>;

/// Reduced row echelon form over the rationals. Rows are sorted by pivot
/// column, every pivot entry is 1 and every pivot column is zero elsewhere.
struct Echelon {
  int cols = 0;
  std::vector<RowVector> rows;
  std::vector<int> pivots;

  int rank() const { return static_cast<int>(rows.size()); }
  /// Remainder of v after eliminating every pivot column.
  RowVector reduce(RowVector v) const;
  bool spans(const RowVector& v) const;
};

Echelon rref(std::vector<RowVector> rows, int cols);
/// Basis of { x : M x = 0 } for the matrix with the given rows.
std::vector<RowVector> nullspace(const std::vector<RowVector>& rows, int cols);
bool is_zero(const RowVector& v);

}  // namespace higgs
