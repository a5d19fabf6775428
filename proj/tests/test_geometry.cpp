#include <doctest.h>

#include <algorithm>
#include <set>

#include "pgarcs/error.hpp"
#include "pgarcs/geometry.hpp"

using namespace pgarcs;

namespace {

const std::vector<int> kPlaneOrders{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 29, 31};

// 2-subspaces of GF(2)^4 as sets of their nonzero vectors (bitmasks 1..15).
std::uint64_t brute_subspaces_gf2_4_2() {
  std::set<std::set<int>> spaces;
  for (int a = 1; a < 16; ++a)
    for (int b = 1; b < 16; ++b)
      if (a != b) spaces.insert({a, b, a ^ b});
  return spaces.size();
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("gaussian numbers") {
  CHECK(gaussian_number(3, 1, 5) == 31);
  CHECK(gaussian_number(7, 0, 3) == 1);
  CHECK(gaussian_number(4, 2, 2) == brute_subspaces_gf2_4_2());
  CHECK(gaussian_number(4, 2, 2) == 35);
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 29, 31}) {
    CHECK(gaussian_number(3, 1, q) == q * q + q + 1);
    CHECK(gaussian_number(3, 2, q) == q * q + q + 1);
  }
  CHECK_THROWS_AS(gaussian_number(2, 3, 2), DomainError);
}

TEST_CASE("incidence examples") {
  Field f(5);
  CHECK(incident(f, Line{{1, 0, 0}}, Point{{0, 0, 1}}));
  CHECK_FALSE(incident(f, Line{{1, 0, 0}}, Point{{1, 0, 0}}));
}

TEST_CASE("plane counts for every supported q") {
  for (int q : kPlaneOrders) {
    CAPTURE(q);
    Plane plane{Field(q)};
    const int n = q * q + q + 1;
    REQUIRE(plane.size() == n);
    REQUIRE(static_cast<int>(plane.lines().size()) == n);
    REQUIRE(static_cast<std::uint64_t>(n) == gaussian_number(3, 1, q));
    for (int i = 0; i < n; ++i) {
      REQUIRE(static_cast<int>(plane.points_on(i).size()) == q + 1);
      REQUIRE(static_cast<int>(plane.lines_through(i).size()) == q + 1);
    }
  }
  CHECK(Plane(Field(31)).size() == 993);
}

TEST_CASE("enumeration is lexicographic and normalized") {
  for (int q : {3, 4, 9}) {
    Plane plane{Field(q)};
    for (int i = 0; i < plane.size(); ++i) {
      const auto& c = plane.point(i).coords;
      const Element lead = c[0] ? c[0] : (c[1] ? c[1] : c[2]);
      CHECK(lead == 1);
      if (i) CHECK(plane.point(i - 1) < plane.point(i));
      CHECK(plane.point_index(c) == i);
      CHECK(plane.line_index(plane.line(i).dual) == i);
    }
  }
}

TEST_CASE("normalization is idempotent and scale invariant") {
  for (int q : {4, 7, 9, 16}) {
    Field f(q);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        for (int c = 0; c < q; ++c) {
          const Triple v{Element(a), Element(b), Element(c)};
          if (v == Triple{0, 0, 0}) continue;
          const Triple n = normalize(f, v);
          REQUIRE(normalize(f, n) == n);
          for (int s = 1; s < q; ++s) {
            const Triple sv{f.mul(s, v[0]), f.mul(s, v[1]), f.mul(s, v[2])};
            REQUIRE(normalize(f, sv) == n);
          }
        }
    CHECK_THROWS_AS(normalize(f, Triple{0, 0, 0}), DomainError);
  }
}

TEST_CASE("two points lie on exactly one line") {
  Plane plane{Field(4)};
  const int n = plane.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int common = 0;
      for (const Line& l : plane.lines())
        common += incident(plane.field(), l, plane.point(a)) && incident(plane.field(), l, plane.point(b));
      REQUIRE(common == 1);
    }
}

TEST_CASE("q=16 row sums of the incidence relation") {
  Plane plane{Field(16)};
  for (const Line& l : plane.lines()) {
    int s = 0;
    for (const Point& p : plane.points()) s += incident(plane.field(), l, p);
    REQUIRE(s == 17);
  }
}

TEST_CASE("incidence matrix") {
  for (int q : {2, 3}) {
    const auto a = incidence_matrix(Plane(Field(q)));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      int row = 0, col = 0;
      for (std::size_t j = 0; j < a.cols(); ++j) {
        row += a(i, j);
        col += a(j, i);
      }
      CHECK(row == q + 1);
      CHECK(col == q + 1);
    }
  }
  SUBCASE("q=5 matches the dot-product reconstruction") {
    Plane plane{Field(5)};
    const auto a = incidence_matrix(plane);
    for (int i = 0; i < plane.size(); ++i)
      for (int j = 0; j < plane.size(); ++j)
        REQUIRE(a(i, j) == incident(plane.field(), plane.line(i), plane.point(j)));
  }
}

TEST_CASE("duality: transpose is the incidence matrix of the dual enumeration") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    Plane plane{Field(q)};
    const auto a = incidence_matrix(plane);
    // Dual plane: points are the line duals, lines are the point coordinates.
    DenseMatrix<std::uint8_t> dual(a.rows(), a.cols());
    for (int i = 0; i < plane.size(); ++i)
      for (int j = 0; j < plane.size(); ++j)
        dual(i, j) = incident(plane.field(), Line{plane.point(i).coords}, Point{plane.line(j).dual});
    CHECK(a.transposed() == dual);
  }
}

TEST_CASE("matrix dump format") {
  const auto a = incidence_matrix(Plane(Field(2)));
  const std::string text = format_matrix(a);
  CHECK(text.rfind("7 7\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 8);
  CHECK(std::count(text.begin(), text.end(), '1') == 21);
}

}
