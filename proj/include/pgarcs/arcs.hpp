#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pgarcs/geometry.hpp"
#include "pgarcs/group.hpp"
#include "pgarcs/matrix.hpp"

namespace pgarcs {

/// A set of points of a plane, with an optional claimed line bound r.
struct Arc {
  std::shared_ptr<const Plane> plane;
  /// Sorted, distinct point indices.
  std::vector<int> points;
  std::optional<int> r_claimed;
};

/// Builds an arc from arbitrary point indices; sorts them and rejects
/// duplicates or out-of-range indices with DomainError.
Arc make_arc(std::shared_ptr<const Plane> plane, std::vector<int> points, std::optional<int> r_claimed = {});

struct ArcReport {
  int n = 0;
  /// Observed r: the largest number of arc points on a single line.
  int max_multiplicity = 0;
  int lines_at_max = 0;
  bool is_arc_for_claimed_r = false;
  std::optional<bool> group_admitted;
};

/// Line multiplicities of the point set. Throws DomainError for an empty set.
ArcReport verify_arc(const Arc& arc);

/// True iff every generator maps the point set onto itself.
bool admits_group(const Arc& arc, const Group& group);

/// Image of the arc under alpha.
Arc map_arc(const GroupElement& alpha, const Arc& arc);

/// How the stated group acts on the listed points.
enum class ActionConvention { Column, Transposed };
std::string to_string(ActionConvention convention);

struct ArcFile {
  FieldSpec spec;
  Arc arc;
  /// Generators exactly as written in the file.
  std::vector<GroupElement> generators;
  /// Closure of the generators under the convention that was accepted.
  std::optional<Group> group;
  ActionConvention convention = ActionConvention::Column;
  /// Whether the stated group stabilizes the points under `convention`.
  bool group_admitted = false;
};

/// Arc file grammar:
///   q=<q>
///   p=<p>
///   e=<e>
///   poly=<a0>,...,<ae>      (omitted for prime fields)
///   r=<r>
///   group-begin             (optional block in group-file format)
///   ...
///   group-end
///   points:
///   (a,b,c) (a,b,c) ...     (whitespace-separated tuples)
/// Lines starting with `#` are comments. Throws ParseError with line numbers.
/// If the column action does not stabilize the points, the transposed
/// action is tried and recorded in `convention`.
ArcFile parse_arc_file(const std::string& text);
ArcFile load_arc_file(const std::string& path);
std::string format_arc_file(const Arc& arc, const std::vector<GroupElement>& generators = {});

/// 3 x n matrix whose columns are the normalized point coordinates.
DenseMatrix<Element> to_generator_matrix(const Arc& arc);

/// Minimum Hamming weight over all q^3 - 1 nonzero codewords m^T G.
/// Throws DomainError if G has rank < 3.
int min_distance(const Field& field, const DenseMatrix<Element>& generator);

int matrix_rank(const Field& field, DenseMatrix<Element> m);

}  // namespace pgarcs
