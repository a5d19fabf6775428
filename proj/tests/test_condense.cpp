#include <doctest.h>

#include <random>

#include "pgarcs/error.hpp"
#include "support.hpp"

using namespace pgarcs;

namespace {

struct Setup {
  Plane plane;
  Group group;
  OrbitData od;
};

Setup make_setup(int q, const std::vector<GroupElement>& gens) {
  Plane plane{Field(q)};
  Group g = Group::closure(plane.field(), gens);
  OrbitData od = orbits(plane, g);
  return {std::move(plane), std::move(g), std::move(od)};
}

// Random maximal feasible selection by shuffled greedy insertion.
std::vector<std::uint8_t> random_feasible(const CondensedSystem& sys, std::mt19937_64& rng) {
  std::vector<int> order(sys.ell);
  for (int j = 0; j < sys.ell; ++j) order[j] = j;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<long long> load(sys.ell, 0);
  std::vector<std::uint8_t> x(sys.ell, 0);
  for (int j : order) {
    if (rng() % 4 == 0) continue;
    bool fits = true;
    for (int i = 0; i < sys.ell && fits; ++i) fits = load[i] + sys.A(i, j) <= sys.r;
    if (!fits) continue;
    x[j] = 1;
    for (int i = 0; i < sys.ell; ++i) load[i] += sys.A(i, j);
  }
  return x;
}

}  // namespace

TEST_SUITE("condense") {

TEST_CASE("trivial group reproduces the incidence matrix") {
  for (int q : {2, 3, 4, 5}) {
    const Setup s = make_setup(q, {});
    const CondensedSystem sys = condense(s.plane, s.od, 2);
    const auto inc = incidence_matrix(s.plane);
    REQUIRE(sys.ell == s.plane.size());
    for (int i = 0; i < sys.ell; ++i)
      for (int j = 0; j < sys.ell; ++j) REQUIRE(sys.A(i, j) == inc(i, j));
    CHECK(std::all_of(sys.w.begin(), sys.w.end(), [](int w) { return w == 1; }));
  }
}

TEST_CASE("row sums, entry bounds and double counting") {
  std::mt19937_64 rng(31);
  std::vector<Setup> setups;
  {
    Field f16(16);
    setups.push_back(make_setup(16, s3_generators(f16)));
    Field f13(13);
    setups.push_back(make_setup(13, {make_element(f13, Mat3{0, 1, 0, 1, 0, 0, 0, 0, 12})}));
  }
  for (int q : {4, 5, 7, 8, 9}) {
    Field f(q);
    setups.push_back(make_setup(q, {testing::random_element(f, rng)}));
  }
  for (const Setup& s : setups) {
    const int q = s.plane.q();
    CAPTURE(q);
    const CondensedSystem sys = condense(s.plane, s.od, 1);
    const auto dual = dual_condense(s.plane, s.od);
    for (int i = 0; i < sys.ell; ++i) {
      int row = 0;
      for (int j = 0; j < sys.ell; ++j) {
        row += sys.A(i, j);
        REQUIRE(sys.A(i, j) <= std::min(sys.w[j], q + 1));
        REQUIRE(static_cast<long long>(sys.line_w[i]) * sys.A(i, j) ==
                static_cast<long long>(sys.w[j]) * dual(j, i));
      }
      REQUIRE(row == q + 1);
    }
  }
  SUBCASE("C0 entries are at most 2") {
    const Setup& c0 = setups[1];
    const CondensedSystem sys = condense(c0.plane, c0.od, 5);
    for (int i = 0; i < sys.ell; ++i)
      for (int j = 0; j < sys.ell; ++j) CHECK(sys.A(i, j) <= 2);
  }
}

TEST_CASE("r range") {
  const Setup s = make_setup(3, {});
  CHECK_THROWS_AS(condense(s.plane, s.od, 0), DomainError);
  CHECK_THROWS_AS(condense(s.plane, s.od, 5), DomainError);
  CHECK_NOTHROW(condense(s.plane, s.od, 4));
}

TEST_CASE("expand and compress") {
  Field f16(16);
  const Setup s = make_setup(16, s3_generators(f16));
  CHECK(expand_solution(s.od, std::vector<std::uint8_t>(s.od.ell, 0)).empty());
  CHECK(static_cast<int>(expand_solution(s.od, std::vector<std::uint8_t>(s.od.ell, 1)).size()) == s.plane.size());
  CHECK_THROWS_AS(expand_solution(s.od, std::vector<std::uint8_t>(s.od.ell + 1, 0)), DomainError);
  CHECK(compress_arc(s.od, {}) == std::vector<std::uint8_t>(s.od.ell, 0));
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::uint8_t> x(s.od.ell);
    for (auto& v : x) v = rng() & 1;
    const auto pts = expand_solution(s.od, x);
    CHECK(compress_arc(s.od, pts) == x);
    long long wx = 0;
    for (int j = 0; j < s.od.ell; ++j) wx += s.od.w[j] * x[j];
    CHECK(static_cast<long long>(pts.size()) == wx);
  }
  // A single point from a nontrivial orbit is not orbit-closed.
  for (int j = 0; j < s.od.ell; ++j) {
    if (s.od.w[j] > 1) {
      CHECK_THROWS_AS(compress_arc(s.od, {s.od.point_orbits[j].front()}), NotAdmittedError);
      break;
    }
  }
}

TEST_CASE("feasibility transfer") {
  std::mt19937_64 rng(43);
  int samples = 0;
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    Field f(q);
    for (int g = 0; g < 3; ++g) {
      const Setup s = make_setup(q, {testing::random_element(f, rng)});
      for (int r = 1; r <= q + 1; r += (q > 4 ? 2 : 1)) {
        const CondensedSystem sys = condense(s.plane, s.od, r);
        const auto x = random_feasible(sys, rng);
        const auto pts = expand_solution(s.od, x);
        if (pts.empty()) continue;
        ++samples;
        REQUIRE(testing::observed_r(s.plane, pts) <= r);
      }
    }
  }
  CHECK(samples > 50);
}

TEST_CASE("exhaustive feasibility transfer on small systems") {
  std::mt19937_64 rng(47);
  for (int q : {2, 3, 4, 5}) {
    Field f(q);
    for (int g = 0; g < 4; ++g) {
      const Setup s = make_setup(q, {testing::random_element(f, rng)});
      if (s.od.ell > 12) continue;
      for (int r = 1; r <= q + 1; ++r) {
        const CondensedSystem sys = condense(s.plane, s.od, r);
        const IlpModel m = make_model(sys);
        for (std::uint32_t mask = 1; mask < (1u << sys.ell); ++mask) {
          std::vector<std::uint8_t> x(sys.ell);
          for (int j = 0; j < sys.ell; ++j) x[j] = (mask >> j) & 1;
          const bool feasible = is_feasible(m, x);
          const bool arc_ok = testing::observed_r(s.plane, expand_solution(s.od, x)) <= r;
          REQUIRE(feasible == arc_ok);
        }
      }
    }
  }
}

TEST_CASE("condensed file round trip") {
  Field f(7);
  const Setup s = make_setup(7, s3_generators(f));
  const CondensedSystem sys = condense(s.plane, s.od, 3);
  const std::string text = format_condensed(sys);
  CHECK(text.rfind("ell=" + std::to_string(sys.ell) + " q=7 r=3\n", 0) == 0);
  const CondensedSystem back = parse_condensed(text);
  CHECK(back.ell == sys.ell);
  CHECK(back.A == sys.A);
  CHECK(back.w == sys.w);
  CHECK(back.r == 3);
  CHECK(back.q == 7);
  CHECK_THROWS(parse_condensed("ell=2 q=2 r=1\nw: 1 1\n1 0\n"));
}

}
