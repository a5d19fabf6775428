#pragma once

#include <vector>

#include "pgarcs/matrix.hpp"

namespace pgarcs {

struct LpResult {
  bool ok = false;
  double value = 0.0;
  /// Primal solution, one entry per column.
  std::vector<double> x;
  /// Nonnegative row duals.
  std::vector<double> y;
  int pivots = 0;
};

/// max c.x subject to A x <= b and 0 <= x <= 1, for A >= 0 and b >= 0.
/// Bounded-variable primal simplex on a dense tableau, starting from the
/// slack basis. ok = false if the iteration limit is hit.
LpResult solve_box_lp(const DenseMatrix<double>& A, const std::vector<double>& b, const std::vector<double>& c);

}  // namespace pgarcs
