#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "pgarcs/geometry.hpp"

namespace pgarcs {

/// 3x3 matrix over GF(q), row-major.
using Mat3 = std::array<Element, 9>;

Mat3 mat_identity();
Mat3 mat_mul(const Field& field, const Mat3& a, const Mat3& b);
Element mat_det(const Field& field, const Mat3& m);
/// Throws DomainError if m is singular.
Mat3 mat_inverse(const Field& field, const Mat3& m);
Mat3 mat_transpose(const Mat3& m);
Mat3 mat_scale(const Field& field, const Mat3& m, Element s);
Triple mat_apply(const Field& field, const Mat3& m, const Triple& v);
/// Entrywise Frobenius a -> a^(p^k).
Mat3 mat_frobenius(const Field& field, const Mat3& m, int k);
/// Scale so the first nonzero entry in row-major order is 1.
Mat3 mat_normalize(const Field& field, const Mat3& m);
bool mat_is_scalar(const Mat3& m);

/// Element of PGammaL(3,q): x -> mat * frob^k(x), with mat normalized up to scalars.
/// Points are column vectors; the Frobenius twist is applied before the matrix.
struct GroupElement {
  Mat3 mat = mat_identity();
  int frob = 0;

  bool operator==(const GroupElement&) const = default;
  auto operator<=>(const GroupElement&) const = default;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

/// Validates invertibility and frob range, then normalizes. Throws DomainError.
GroupElement make_element(const Field& field, const Mat3& mat, int frob = 0);
GroupElement identity_element();
/// a o b: apply b first, then a.
GroupElement compose(const Field& field, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const Field& field, const GroupElement& g);
GroupElement power(const Field& field, const GroupElement& g, long long k);
/// Generators of the transposed action: mat replaced by its transpose.
GroupElement transpose(const Field& field, const GroupElement& g);

Point apply_to_point(const Field& field, const GroupElement& g, const Point& p);
Line apply_to_line(const Field& field, const GroupElement& g, const Line& l);

/// Images of every point index (resp. line index) of the plane under g.
std::vector<int> point_permutation(const Plane& plane, const GroupElement& g);
std::vector<int> line_permutation(const Plane& plane, const GroupElement& g);

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

/// Finite subgroup of PGammaL(3,q) with its full element list.
class Group {
 public:
  /// Breadth-first closure of the generators. Throws BudgetError past cap.
  static Group closure(const Field& field, std::vector<GroupElement> generators,
                       std::size_t cap = kDefaultClosureCap);
  static Group trivial(const Field& field) { return closure(field, {}); }

  const Field& field() const noexcept { return field_; }
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }
  /// Identity first, then breadth-first discovery order.
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  bool contains(const GroupElement& g) const { return index_.contains(g); }

 private:
  friend Group conjugate_group(const Field& field, const GroupElement& alpha, const Group& group);
  Group(Field field, std::vector<GroupElement> generators, std::vector<GroupElement> elements);

  Field field_;
  std::vector<GroupElement> generators_;
  std::vector<GroupElement> elements_;
  std::unordered_set<GroupElement, GroupElementHash> index_;
};

/// alpha G alpha^-1, with conjugated generators and elements.
Group conjugate_group(const Field& field, const GroupElement& alpha, const Group& group);

/// Point and line orbits of a group, each orbit sorted, orbits ordered by
/// their minimal (representative) index.
struct OrbitData {
  std::vector<std::vector<int>> point_orbits;
  std::vector<std::vector<int>> line_orbits;
  std::vector<int> point_rep;
  std::vector<int> line_rep;
  /// Point-orbit lengths.
  std::vector<int> w;
  /// Line-orbit lengths.
  std::vector<int> line_w;
  std::vector<int> point_orbit_of;
  std::vector<int> line_orbit_of;
  int ell = 0;
};

OrbitData orbits(const Plane& plane, const Group& group);

/// Group file: one generator per line, nine codes row-major, optional
/// trailing `frob=<k>`; `#` starts a comment line. first_line numbers
/// diagnostics when the text is embedded in a larger file.
std::vector<GroupElement> parse_generators(const Field& field, const std::string& text, std::size_t first_line = 1);
std::string format_generators(const std::vector<GroupElement>& generators);

/// The two permutation matrices generating S3 (cyclic shift and transposition).
std::vector<GroupElement> s3_generators(const Field& field);

}  // namespace pgarcs
