#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgarcs/geometry.hpp"
#include "pgarcs/group.hpp"
#include "pgarcs/matrix.hpp"

namespace pgarcs {

/// Orbit-level incidence system: A(i, j) counts the points of point orbit j
/// on the representative line of line orbit i.
struct CondensedSystem {
  int ell = 0;
  DenseMatrix<int> A;
  std::vector<int> w;
  /// Line-orbit lengths; empty when read back from a file.
  std::vector<int> line_w;
  int r = 1;
  int q = 2;
  std::string provenance;
};

/// Throws DomainError unless 1 <= r <= q+1.
CondensedSystem condense(const Plane& plane, const OrbitData& orbits, int r);

/// Dual condensation: (j, i) counts the lines of line orbit i through the
/// representative point of point orbit j.
DenseMatrix<int> dual_condense(const Plane& plane, const OrbitData& orbits);

/// Union of the selected point orbits, sorted. Throws DomainError on length mismatch.
std::vector<int> expand_solution(const OrbitData& orbits, const std::vector<std::uint8_t>& x);

/// Orbit selection of an orbit-closed point set. Throws NotAdmittedError if
/// some orbit is only partially contained.
std::vector<std::uint8_t> compress_arc(const OrbitData& orbits, const std::vector<int>& points);

/// File form: `ell=<l> q=<q> r=<r>`, `w: <w_1> ... <w_l>`, then l rows of A.
std::string format_condensed(const CondensedSystem& system);
CondensedSystem parse_condensed(const std::string& text);

}  // namespace pgarcs
