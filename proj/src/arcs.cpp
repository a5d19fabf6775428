#include "pgarcs/arcs.hpp"

#include <algorithm>

#include "pgarcs/error.hpp"

namespace pgarcs {

Arc make_arc(std::shared_ptr<const Plane> plane, std::vector<int> points, std::optional<int> r_claimed) {
  if (!plane) throw DomainError("arc: missing plane");
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) throw DomainError("arc: duplicate point");
  if (!points.empty() && (points.front() < 0 || points.back() >= plane->size())) {
    throw DomainError("arc: point index out of range");
  }
  return Arc{std::move(plane), std::move(points), r_claimed};
}

ArcReport verify_arc(const Arc& arc) {
  if (arc.points.empty()) throw DomainError("verify_arc: empty point set");
  const Plane& plane = *arc.plane;
  std::vector<int> count(plane.size(), 0);
  for (int pt : arc.points) {
    for (int ln : plane.lines_through(pt)) ++count[ln];
  }
  ArcReport report;
  report.n = static_cast<int>(arc.points.size());
  report.max_multiplicity = *std::max_element(count.begin(), count.end());
  report.lines_at_max = static_cast<int>(std::count(count.begin(), count.end(), report.max_multiplicity));
  report.is_arc_for_claimed_r = arc.r_claimed.has_value() && *arc.r_claimed == report.max_multiplicity;
  return report;
}

bool admits_group(const Arc& arc, const Group& group) {
  const Plane& plane = *arc.plane;
  if (!(plane.field().spec() == group.field().spec())) throw DomainError("admits_group: field mismatch");
  std::vector<char> member(plane.size(), 0);
  for (int pt : arc.points) member[pt] = 1;
  const Field& field = plane.field();
  for (const auto& g : group.generators()) {
    for (int pt : arc.points) {
      const Point image = apply_to_point(field, g, plane.point(pt));
      if (!member[plane.point_index(image.coords)]) return false;
    }
  }
  return true;
}

Arc map_arc(const GroupElement& alpha, const Arc& arc) {
  const Plane& plane = *arc.plane;
  const GroupElement a = make_element(plane.field(), alpha.mat, alpha.frob);
  std::vector<int> image;
  image.reserve(arc.points.size());
  for (int pt : arc.points) {
    image.push_back(plane.point_index(apply_to_point(plane.field(), a, plane.point(pt)).coords));
  }
  return make_arc(arc.plane, std::move(image), arc.r_claimed);
}

std::string to_string(ActionConvention convention) {
  return convention == ActionConvention::Column ? "column" : "transposed";
}

DenseMatrix<Element> to_generator_matrix(const Arc& arc) {
  DenseMatrix<Element> g(3, arc.points.size(), 0);
  for (std::size_t c = 0; c < arc.points.size(); ++c) {
    const Triple& t = arc.plane->point(arc.points[c]).coords;
    for (int k = 0; k < 3; ++k) g(k, c) = t[k];
  }
  return g;
}

int matrix_rank(const Field& field, DenseMatrix<Element> m) {
  int rank = 0;
  const std::size_t rows = m.rows();
  for (std::size_t col = 0; col < m.cols() && rank < static_cast<int>(rows); ++col) {
    std::size_t pivot = rows;
    for (std::size_t i = rank; i < rows; ++i) {
      if (m(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
    const Element s = field.inv(m(rank, col));
    for (std::size_t j = 0; j < m.cols(); ++j) m(rank, j) = field.mul(m(rank, j), s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == static_cast<std::size_t>(rank) || m(i, col) == 0) continue;
      const Element f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = field.sub(m(i, j), field.mul(f, m(rank, j)));
    }
    ++rank;
  }
  return rank;
}

int min_distance(const Field& field, const DenseMatrix<Element>& generator) {
  if (generator.rows() != 3) throw DomainError("min_distance: generator must have three rows");
  for (std::size_t j = 0; j < generator.cols(); ++j) {
    for (int k = 0; k < 3; ++k) {
      if (!field.valid(generator(k, j))) throw DomainError("min_distance: entry out of range");
    }
  }
  if (matrix_rank(field, generator) < 3) throw DomainError("min_distance: generator matrix has rank < 3");
  const int q = field.q();
  const std::size_t n = generator.cols();
  int best = static_cast<int>(n);
  for (int code = 1; code < q * q * q; ++code) {
    const Element m0 = static_cast<Element>(code / (q * q));
    const Element m1 = static_cast<Element>((code / q) % q);
    const Element m2 = static_cast<Element>(code % q);
    int weight = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Element s = field.mul_raw(m0, generator(0, j));
      s = field.add_raw(s, field.mul_raw(m1, generator(1, j)));
      s = field.add_raw(s, field.mul_raw(m2, generator(2, j)));
      weight += s != 0;
    }
    best = std::min(best, weight);
  }
  return best;
}

}  // namespace pgarcs
