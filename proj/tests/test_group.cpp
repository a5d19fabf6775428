#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pgarcs/error.hpp"
#include "support.hpp"

using namespace pgarcs;

namespace {

std::vector<int> sorted_lengths(const std::vector<int>& w) {
  std::vector<int> v = w;
  std::sort(v.begin(), v.end());
  return v;
}

void check_orbit_invariants(const Plane& plane, const OrbitData& od) {
  const int n = plane.size();
  std::vector<int> seen(n, 0);
  for (const auto& orb : od.point_orbits)
    for (int p : orb) ++seen[p];
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  std::fill(seen.begin(), seen.end(), 0);
  for (const auto& orb : od.line_orbits)
    for (int l : orb) ++seen[l];
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  CHECK(od.point_orbits.size() == od.line_orbits.size());
  CHECK(od.ell == static_cast<int>(od.point_orbits.size()));
  long long total = 0;
  for (int w : od.w) total += w;
  CHECK(total == n);
  for (std::size_t j = 0; j < od.point_orbits.size(); ++j) {
    CHECK(od.point_rep[j] == od.point_orbits[j].front());
    CHECK(std::is_sorted(od.point_orbits[j].begin(), od.point_orbits[j].end()));
  }
}

}  // namespace

TEST_SUITE("group") {

TEST_CASE("scalar normalization") {
  std::mt19937_64 rng(3);
  for (int q : {5, 9, 16}) {
    Field f(q);
    for (int t = 0; t < 50; ++t) {
      const Mat3 m = testing::random_invertible(f, rng);
      for (int s = 1; s < q; ++s) CHECK(make_element(f, m) == make_element(f, mat_scale(f, m, s)));
    }
  }
  Field f(5);
  CHECK_THROWS_AS(make_element(f, Mat3{1, 2, 3, 2, 4, 1, 3, 1, 4}), DomainError);
  CHECK_THROWS_AS(make_element(f, mat_identity(), 1), DomainError);
}

TEST_CASE("S3 cyclic shift on (1,4,0) over GF(16)") {
  Plane plane{Field(16)};
  const Field& f = plane.field();
  const auto gens = s3_generators(f);
  const Point img = apply_to_point(f, gens[0], Point{{1, 4, 0}});
  // The shift sends (a,b,c) to (b,c,a) or (c,a,b); either way the image spans a cyclic rotation.
  const Triple rot1 = normalize(f, Triple{4, 0, 1});
  const Triple rot2 = normalize(f, Triple{0, 1, 4});
  CHECK((img.coords == rot1 || img.coords == rot2));
  CHECK(rot1 == Triple{1, 0, f.inv(4)});
  CHECK(apply_to_point(f, identity_element(), Point{{1, 4, 0}}).coords == Triple{1, 4, 0});
}

TEST_CASE("point and line maps are permutations and preserve incidence") {
  std::mt19937_64 rng(11);
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    CAPTURE(q);
    Plane plane{Field(q)};
    const Field& f = plane.field();
    for (int t = 0; t < 3; ++t) {
      GroupElement g = testing::random_element(f, rng);
      if (f.e() > 1 && t == 2) g = make_element(f, g.mat, 1);
      const auto pp = point_permutation(plane, g);
      const auto lp = line_permutation(plane, g);
      CHECK(std::set<int>(pp.begin(), pp.end()).size() == pp.size());
      CHECK(std::set<int>(lp.begin(), lp.end()).size() == lp.size());
      for (int l = 0; l < plane.size(); ++l) {
        std::set<int> image;
        for (int p : plane.points_on(l)) image.insert(pp[p]);
        const auto target = plane.points_on(lp[l]);
        REQUIRE(image == std::set<int>(target.begin(), target.end()));
        for (int p = 0; p < plane.size(); ++p) {
          REQUIRE(incident(f, plane.line(l), plane.point(p)) ==
                  incident(f, plane.line(lp[l]), plane.point(pp[p])));
        }
      }
    }
  }
}

TEST_CASE("action laws") {
  std::mt19937_64 rng(5);
  for (int q : {3, 4, 8, 9, 25}) {
    CAPTURE(q);
    Plane plane{Field(q)};
    const Field& f = plane.field();
    for (int t = 0; t < 4; ++t) {
      const GroupElement g = make_element(f, testing::random_invertible(f, rng), t % f.e());
      const GroupElement h = make_element(f, testing::random_invertible(f, rng), (t + 1) % f.e());
      const GroupElement gh = compose(f, g, h);
      const GroupElement gi = inverse(f, g);
      const int step = q <= 9 ? 1 : 7;
      for (int p = 0; p < plane.size(); p += step) {
        const Point& x = plane.point(p);
        REQUIRE(apply_to_point(f, gh, x) == apply_to_point(f, g, apply_to_point(f, h, x)));
        REQUIRE(apply_to_point(f, gi, apply_to_point(f, g, x)) == x);
        REQUIRE(apply_to_point(f, identity_element(), x) == x);
      }
      CHECK(compose(f, g, gi) == identity_element());
      CHECK(power(f, g, 0) == identity_element());
      CHECK(power(f, g, 3) == compose(f, g, compose(f, g, g)));
    }
  }
}

TEST_CASE("closure") {
  SUBCASE("S3 has order 6") {
    for (int q : {16, 25, 29}) {
      Field f(q);
      CHECK(Group::closure(f, s3_generators(f)).order() == 6);
    }
  }
  SUBCASE("trivial") {
    Field f(7);
    const Group g = Group::closure(f, {});
    CHECK(g.order() == 1);
    CHECK(g.elements().front() == identity_element());
  }
  SUBCASE("C0 over GF(13) has order 2") {
    Field f(13);
    CHECK(Group::closure(f, {make_element(f, Mat3{0, 1, 0, 1, 0, 0, 0, 0, 12})}).order() == 2);
  }
  SUBCASE("closed under composition and inverse") {
    std::mt19937_64 rng(2);
    Field f(5);
    const Group g = Group::closure(f, {testing::random_element(f, rng)});
    for (const auto& a : g.elements()) {
      CHECK(g.contains(inverse(f, a)));
      for (const auto& b : g.elements()) CHECK(g.contains(compose(f, a, b)));
    }
    // |PGL(3,5)| = 372000
    CHECK(372000 % g.order() == 0);
  }
  SUBCASE("cap") {
    Field f(7);
    std::mt19937_64 rng(9);
    CHECK_THROWS_AS(Group::closure(f, {testing::random_element(f, rng), testing::random_element(f, rng)}, 10),
                    BudgetError);
  }
}

TEST_CASE("orbits") {
  SUBCASE("trivial group gives singletons") {
    Plane plane{Field(7)};
    const OrbitData od = orbits(plane, Group::trivial(plane.field()));
    CHECK(od.ell == 57);
    CHECK(std::all_of(od.w.begin(), od.w.end(), [](int w) { return w == 1; }));
    check_orbit_invariants(plane, od);
  }
  SUBCASE("S3 over GF(29)") {
    Plane plane{Field(29)};
    const OrbitData od = orbits(plane, Group::closure(plane.field(), s3_generators(plane.field())));
    check_orbit_invariants(plane, od);
  }
  SUBCASE("C0 over GF(13) has orbit lengths 1 or 2") {
    Plane plane{Field(13)};
    const Field& f = plane.field();
    const OrbitData od = orbits(plane, Group::closure(f, {make_element(f, Mat3{0, 1, 0, 1, 0, 0, 0, 0, 12})}));
    check_orbit_invariants(plane, od);
    CHECK(std::all_of(od.w.begin(), od.w.end(), [](int w) { return w == 1 || w == 2; }));
  }
  SUBCASE("random cyclic groups") {
    std::mt19937_64 rng(17);
    for (int q : {3, 4, 5, 7, 8, 9, 16}) {
      Plane plane{Field(q)};
      const OrbitData od = orbits(plane, Group::closure(plane.field(), {testing::random_element(plane.field(), rng)}));
      check_orbit_invariants(plane, od);
    }
  }
}

TEST_CASE("conjugate groups") {
  std::mt19937_64 rng(23);
  Plane plane{Field(29)};
  const Field& f = plane.field();
  const Group s3 = Group::closure(f, s3_generators(f));
  CHECK(conjugate_group(f, identity_element(), s3).order() == 6);
  for (int t = 0; t < 3; ++t) {
    const GroupElement alpha = testing::random_element(f, rng);
    const Group c = conjugate_group(f, alpha, s3);
    CHECK(c.order() == 6);
    CHECK(Group::closure(f, c.generators()).order() == 6);
    CHECK(sorted_lengths(orbits(plane, c).w) == sorted_lengths(orbits(plane, s3).w));
  }
  Plane small{Field(7)};
  const Group cyc = Group::closure(small.field(), {testing::random_element(small.field(), rng)});
  const Group cc = conjugate_group(small.field(), testing::random_element(small.field(), rng), cyc);
  CHECK(sorted_lengths(orbits(small, cc).w) == sorted_lengths(orbits(small, cyc).w));
}

TEST_CASE("group file parsing") {
  Field f(16);
  const auto gens = parse_generators(f, "# two\n0 1 0 0 0 1 1 0 0\n\n0 1 0 1 0 0 0 0 1 frob=1\n");
  REQUIRE(gens.size() == 2);
  CHECK(gens[1].frob == 1);
  CHECK(parse_generators(f, format_generators(gens)) == gens);
  try {
    parse_generators(f, "1 0 0 0 1 0 0 0 1\n1 0 0 0 1 0 0 0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_generators(f, "1 0 0 0 1 0 0 0 16\n"), ParseError);
  CHECK_THROWS(parse_generators(f, "1 1 1 1 1 1 1 1 1\n"));
}

}
