#include "pgarcs/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pgarcs {

namespace {
constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kDegenerateBeforeBland = 50;
}  // namespace

LpResult solve_box_lp(const DenseMatrix<double>& A, const std::vector<double>& b, const std::vector<double>& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  const int width = n + m;
  LpResult res;

  // Tableau B^-1 [A | I]; basis starts at the slacks.
  DenseMatrix<double> t(m, width, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t(i, j) = A(i, j);
    t(i, n + i) = 1.0;
  }
  std::vector<double> d(width, 0.0);
  for (int j = 0; j < n; ++j) d[j] = c[j];
  std::vector<int> basis(m);
  std::vector<int> pos(width, -1);
  for (int i = 0; i < m; ++i) {
    basis[i] = n + i;
    pos[n + i] = i;
  }
  std::vector<double> xb(b.begin(), b.end());
  std::vector<char> at_upper(width, 0);
  auto upper = [&](int v) { return v < n ? 1.0 : kInf; };

  const int limit = 50 * (width + 10);
  int degenerate = 0;
  int it = 0;
  for (; it < limit; ++it) {
    const bool bland = degenerate > kDegenerateBeforeBland;
    int enter = -1;
    double best = 0.0;
    for (int j = 0; j < width; ++j) {
      if (pos[j] >= 0) continue;
      const double score = at_upper[j] ? -d[j] : d[j];
      if (score > kEps && (enter < 0 || (!bland && score > best))) {
        enter = j;
        best = score;
        if (bland) break;
      }
    }
    if (enter < 0) break;

    const double dir = at_upper[enter] ? -1.0 : 1.0;
    double theta = upper(enter);
    int leave = -1;
    bool leave_to_upper = false;
    for (int i = 0; i < m; ++i) {
      const double a = dir * t(i, enter);
      double lim = kInf;
      bool to_upper = false;
      if (a > kEps) {
        lim = std::max(xb[i], 0.0) / a;
      } else if (a < -kEps) {
        const double ub = upper(basis[i]);
        if (ub == kInf) continue;
        lim = std::max(ub - xb[i], 0.0) / -a;
        to_upper = true;
      } else {
        continue;
      }
      if (lim < theta - 1e-12 || (leave >= 0 && std::abs(lim - theta) <= 1e-12 && basis[i] < basis[leave])) {
        theta = lim;
        leave = i;
        leave_to_upper = to_upper;
      }
    }
    degenerate = theta < 1e-12 ? degenerate + 1 : 0;

    for (int i = 0; i < m; ++i) xb[i] -= dir * theta * t(i, enter);
    if (leave < 0) {
      at_upper[enter] = !at_upper[enter];
      continue;
    }

    const double entering_value = (at_upper[enter] ? 1.0 : 0.0) + dir * theta;
    const int out = basis[leave];
    at_upper[out] = leave_to_upper ? 1 : 0;
    pos[out] = -1;
    at_upper[enter] = 0;
    basis[leave] = enter;
    pos[enter] = leave;
    xb[leave] = entering_value;

    double* prow = t.row(leave);
    const double piv = prow[enter];
    for (int j = 0; j < width; ++j) prow[j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      double* row = t.row(i);
      const double f = row[enter];
      if (f == 0.0) continue;
      for (int j = 0; j < width; ++j) row[j] -= f * prow[j];
      row[enter] = 0.0;
    }
    const double fd = d[enter];
    for (int j = 0; j < width; ++j) d[j] -= fd * prow[j];
    d[enter] = 0.0;
  }
  res.pivots = it;
  res.ok = it < limit;

  res.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    res.x[j] = pos[j] >= 0 ? std::clamp(xb[pos[j]], 0.0, 1.0) : (at_upper[j] ? 1.0 : 0.0);
    res.value += c[j] * res.x[j];
  }
  res.y.assign(m, 0.0);
  for (int i = 0; i < m; ++i) res.y[i] = std::max(0.0, -d[n + i]);
  return res;
}

}  // namespace pgarcs
