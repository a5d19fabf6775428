#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pgarcs/gf.hpp"
#include "pgarcs/matrix.hpp"

namespace pgarcs {

using Triple = std::array<Element, 3>;

/// Scale v so its leftmost nonzero coordinate is 1. Throws DomainError for the zero vector.
Triple normalize(const Field& field, const Triple& v);

/// 1-subspace of GF(q)^3, normalized.
struct Point {
  Triple coords{};
  auto operator<=>(const Point&) const = default;
};

/// 2-subspace {x : dual . x = 0}, stored by its normalized dual triple.
struct Line {
  Triple dual{};
  auto operator<=>(const Line&) const = default;
};

/// Number of k-subspaces of GF(q)^n. Throws DomainError if k > n and
/// BudgetError on 64-bit overflow.
std::uint64_t gaussian_number(int n, int k, std::uint64_t q);

bool incident(const Field& field, const Line& line, const Point& point);

/// PG(2,q) with points and lines enumerated in lexicographic order of their
/// normalized coordinate codes.
class Plane {
 public:
  explicit Plane(Field field);

  const Field& field() const noexcept { return field_; }
  int q() const noexcept { return field_.q(); }
  int size() const noexcept { return static_cast<int>(points_.size()); }

  const Point& point(int i) const { return points_[i]; }
  const Line& line(int i) const { return lines_[i]; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<Line>& lines() const noexcept { return lines_; }

  /// Index of the point spanned by v (any nonzero representative), or -1 for v = 0.
  int point_index(const Triple& v) const;
  int line_index(const Triple& dual) const;

  /// Sorted point indices on line i.
  std::span<const int> points_on(int line) const;
  /// Sorted line indices through point j.
  std::span<const int> lines_through(int point) const;

 private:
  int lookup(const Triple& v) const;

  Field field_;
  std::vector<Point> points_;
  std::vector<Line> lines_;
  // Dense map from a*q^2 + b*q + c (normalized triple) to index.
  std::vector<int> index_;
  std::vector<int> on_line_;       // size() * (q+1)
  std::vector<int> through_point_; // size() * (q+1)
};

Plane build_plane(const FieldSpec& spec);

/// Full 0/1 point-line incidence matrix: rows are lines, columns points.
DenseMatrix<std::uint8_t> incidence_matrix(const Plane& plane);

/// "<rows> <cols>" then one row per line of space-separated entries.
std::string format_matrix(const DenseMatrix<std::uint8_t>& m);

}  // namespace pgarcs
