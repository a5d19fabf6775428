#include "pgarcs/geometry.hpp"

#include <algorithm>
#include <string>

#include "pgarcs/error.hpp"

namespace pgarcs {

Triple normalize(const Field& field, const Triple& v) {
  for (int k = 0; k < 3; ++k) {
    if (v[k] != 0) {
      const Element s = field.inv(v[k]);
      return {field.mul(s, v[0]), field.mul(s, v[1]), field.mul(s, v[2])};
    }
  }
  throw DomainError("normalize: zero vector does not span a subspace");
}

std::uint64_t gaussian_number(int n, int k, std::uint64_t q) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("gaussian_number: need 0 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  // [m, j]_q = [m-1, j-1]_q + q^j [m-1, j]_q, row by row.
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int j = std::min(m, k); j >= 1; --j) {
      std::uint64_t qj = 1;
      for (int t = 0; t < j; ++t) {
        if (__builtin_mul_overflow(qj, q, &qj)) throw BudgetError("gaussian_number: overflow");
      }
      std::uint64_t term = 0;
      if (__builtin_mul_overflow(qj, row[j], &term) || __builtin_add_overflow(term, row[j - 1], &row[j])) {
        throw BudgetError("gaussian_number: overflow");
      }
    }
  }
  return row[k];
}

bool incident(const Field& field, const Line& line, const Point& point) {
  Element s = 0;
  for (int k = 0; k < 3; ++k) s = field.add(s, field.mul(line.dual[k], point.coords[k]));
  return s == 0;
}

Plane::Plane(Field field) : field_(std::move(field)) {
  const int q = field_.q();
  std::vector<Triple> all;
  all.push_back({0, 0, 1});
  for (int c = 0; c < q; ++c) all.push_back({0, 1, static_cast<Element>(c)});
  for (int b = 0; b < q; ++b) {
    for (int c = 0; c < q; ++c) all.push_back({1, static_cast<Element>(b), static_cast<Element>(c)});
  }
  std::sort(all.begin(), all.end());

  index_.assign(static_cast<std::size_t>(q) * q * q, -1);
  points_.reserve(all.size());
  lines_.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Triple& t = all[i];
    index_[(static_cast<std::size_t>(t[0]) * q + t[1]) * q + t[2]] = static_cast<int>(i);
    points_.push_back(Point{t});
    lines_.push_back(Line{t});
  }

  // Points on line d: choose the pivot k (first nonzero of d, equal to 1),
  // run (u, v) over normalized pairs of the other two coordinates and solve
  // x_k = -(d_i u + d_j v).
  const int n = size();
  const int k1 = q + 1;
  on_line_.assign(static_cast<std::size_t>(n) * k1, 0);
  std::vector<int> fill(n, 0);
  through_point_.assign(static_cast<std::size_t>(n) * k1, 0);
  for (int li = 0; li < n; ++li) {
    const Triple& d = lines_[li].dual;
    const int pivot = d[0] != 0 ? 0 : (d[1] != 0 ? 1 : 2);
    const int i = (pivot + 1) % 3;
    const int j = (pivot + 2) % 3;
    std::vector<int> members;
    members.reserve(k1);
    auto emit = [&](Element u, Element v) {
      Triple x{};
      x[i] = u;
      x[j] = v;
      x[pivot] = field_.neg_raw(field_.add_raw(field_.mul_raw(d[i], u), field_.mul_raw(d[j], v)));
      members.push_back(point_index(x));
    };
    emit(0, 1);
    for (int t = 0; t < q; ++t) emit(1, static_cast<Element>(t));
    std::sort(members.begin(), members.end());
    std::copy(members.begin(), members.end(), on_line_.begin() + static_cast<std::ptrdiff_t>(li) * k1);
    for (int pj : members) through_point_[static_cast<std::size_t>(pj) * k1 + fill[pj]++] = li;
  }
}

int Plane::lookup(const Triple& v) const {
  const int q = field_.q();
  return index_[(static_cast<std::size_t>(v[0]) * q + v[1]) * q + v[2]];
}

int Plane::point_index(const Triple& v) const {
  if (v[0] == 0 && v[1] == 0 && v[2] == 0) return -1;
  return lookup(normalize(field_, v));
}

int Plane::line_index(const Triple& dual) const { return point_index(dual); }

std::span<const int> Plane::points_on(int line) const {
  const std::size_t k1 = static_cast<std::size_t>(q()) + 1;
  return {on_line_.data() + line * k1, k1};
}

std::span<const int> Plane::lines_through(int point) const {
  const std::size_t k1 = static_cast<std::size_t>(q()) + 1;
  return {through_point_.data() + point * k1, k1};
}

Plane build_plane(const FieldSpec& spec) { return Plane(Field(spec)); }

DenseMatrix<std::uint8_t> incidence_matrix(const Plane& plane) {
  const auto n = static_cast<std::size_t>(plane.size());
  DenseMatrix<std::uint8_t> a(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j : plane.points_on(static_cast<int>(i))) a(i, j) = 1;
  }
  return a;
}

std::string format_matrix(const DenseMatrix<std::uint8_t>& m) {
  std::string out = std::to_string(m.rows()) + ' ' + std::to_string(m.cols()) + '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += static_cast<char>('0' + m(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace pgarcs
