// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "pgarcs/classify.hpp"
#include "support.hpp"

using namespace pgarcs;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome corpus_fidelity() {
  Outcome o;
  const auto t0 = Clock::now();
  for (const auto& c : testing::corpus()) {
    const ArcFile f = load_arc_file(testing::corpus_path(c.file));
    const ArcReport rep = verify_arc(f.arc);
    o.require(f.spec.order() == c.q, c.file + " field");
    o.require(rep.n == c.n && rep.max_multiplicity == c.r && rep.is_arc_for_claimed_r, c.file + " parameters");
    o.require(f.group_admitted && f.group && admits_group(f.arc, *f.group), c.file + " group");
    if (c.s3) {
      o.require(f.generators == s3_generators(f.arc.plane->field()) && f.group->order() == 6, c.file + " not S3");
    } else {
      o.require(f.generators.size() == 1, c.file + " not cyclic");
    }
  }
  const double t = seconds_since(t0);
  o.require(t < 60.0, "took " + std::to_string(t) + " s");
  if (o.pass) o.detail = "7 arcs exact, " + std::to_string(t) + " s";
  return o;
}

Outcome code_correspondence() {
  Outcome o;
  const auto t0 = Clock::now();
  std::ostringstream ds;
  for (const auto& c : testing::corpus()) {
    const ArcFile f = load_arc_file(testing::corpus_path(c.file));
    const int d = min_distance(f.arc.plane->field(), to_generator_matrix(f.arc));
    o.require(d == c.n - c.r, c.file + " d=" + std::to_string(d));
    ds << d << ' ';
  }
  const double t = seconds_since(t0);
  o.require(t < 60.0, "took " + std::to_string(t) + " s");
  if (o.pass) o.detail = "d = " + ds.str() + "(" + std::to_string(t) + " s)";
  return o;
}

Outcome counting() {
  Outcome o;
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 29, 31}) {
    const Plane plane{Field(q)};
    const int n = q * q + q + 1;
    bool ok = plane.size() == n && static_cast<int>(plane.lines().size()) == n;
    for (int l = 0; l < n && ok; ++l) ok = static_cast<int>(plane.points_on(l).size()) == q + 1;
    o.require(ok, "q=" + std::to_string(q));
  }
  if (o.pass) o.detail = "14 planes";
  return o;
}

Outcome conjugacy_classes() {
  Outcome o;
  const auto t0 = Clock::now();
  std::ostringstream ds;
  for (auto [p, expected] : {std::pair{5, 30}, {7, 58}, {11, 132}, {13, 184}}) {
    const int got = static_cast<int>(enumerate_cyclic_classes(p).size());
    o.require(got == expected, "q=" + std::to_string(p) + " gave " + std::to_string(got));
    ds << "q=" << p << ":" << got << ' ';
  }
  const double t = seconds_since(t0);
  o.require(t < 1800.0, "took " + std::to_string(t) + " s");
  if (o.pass) o.detail = ds.str() + "(" + std::to_string(t) + " s)";
  return o;
}

Outcome solver_correctness() {
  Outcome o;
  const auto t0 = Clock::now();
  int cases = 0;
  for (int q : {2, 3, 4}) {
    const Plane plane{Field(q)};
    for (int r = 1; r <= q + 1; ++r) {
      const IlpModel m = testing::full_plane_model(plane, r);
      const Solution s = solve_max(m);
      const Solution ref = exhaustive_oracle(m);
      o.require(s.status == SolveStatus::Optimal && s.objective == ref.objective,
                "q=" + std::to_string(q) + " r=" + std::to_string(r));
      ++cases;
    }
  }
  const double t = seconds_since(t0);
  o.require(t < 600.0, "took " + std::to_string(t) + " s");
  if (o.pass) o.detail = std::to_string(cases) + " (q,r) pairs, " + std::to_string(t) + " s";
  return o;
}

Outcome feasibility_transfer() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  const std::vector<int> qs{2, 3, 4, 5, 7, 8, 9};
  int samples = 0;
  while (samples < 100) {
    const int q = qs[rng() % qs.size()];
    const Plane plane{Field(q)};
    const Group g = Group::closure(plane.field(), {testing::random_element(plane.field(), rng)});
    const OrbitData od = orbits(plane, g);
    const int r = 1 + static_cast<int>(rng() % (q + 1));
    const CondensedSystem sys = condense(plane, od, r);
    const IlpModel m = make_model(sys);
    std::vector<int> order(sys.ell);
    for (int j = 0; j < sys.ell; ++j) order[j] = j;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::uint8_t> x(sys.ell, 0);
    for (int j : order) {
      x[j] = 1;
      if (!is_feasible(m, x)) x[j] = 0;
    }
    const auto pts = expand_solution(od, x);
    if (pts.empty()) continue;
    ++samples;
    o.require(testing::observed_r(plane, pts) <= r, "q=" + std::to_string(q) + " r=" + std::to_string(r));
  }
  if (o.pass) o.detail = std::to_string(samples) + " random solutions";
  return o;
}

Outcome corpus_round_trip() {
  Outcome o;
  for (const auto& c : testing::corpus()) {
    const ArcFile f = load_arc_file(testing::corpus_path(c.file));
    const OrbitData od = orbits(*f.arc.plane, *f.group);
    const auto x = compress_arc(od, f.arc.points);
    long long wx = 0;
    for (int j = 0; j < od.ell; ++j) wx += static_cast<long long>(od.w[j]) * x[j];
    o.require(expand_solution(od, x) == f.arc.points && wx == c.n, c.file);
  }
  if (o.pass) o.detail = "7 arcs";
  return o;
}

Outcome warm_start_reachability() {
  Outcome o;
  const ArcFile f = load_arc_file(testing::corpus_path("q25_r3_n39.arc"));
  const Plane& plane = *f.arc.plane;
  const OrbitData od = orbits(plane, *f.group);
  const IlpModel m = make_model(condense(plane, od, 3));

  const auto t1 = Clock::now();
  const auto x = compress_arc(od, f.arc.points);
  const bool corpus_ok = is_feasible(m, x) && objective(m, x) == 39;
  const double t_corpus = seconds_since(t1);
  o.require(corpus_ok, "corpus vector infeasible or objective != 39");
  o.require(t_corpus < 1.0, "corpus check took " + std::to_string(t_corpus) + " s");

  SolveOptions so;
  so.budget_seconds = 600.0;
  so.heuristic_share = 0.5;
  const auto t0 = Clock::now();
  const Solution s = solve_feasible(m, 39, so);
  const double t = seconds_since(t0);
  o.require(s.objective >= 39 && is_feasible(m, s.x), "best incumbent " + std::to_string(s.objective));
  o.require(t <= 600.0, "took " + std::to_string(t) + " s");
  std::ostringstream d;
  d << "ell=" << m.cols() << ", incumbent " << s.objective << " after " << t << " s; corpus vector feasible, "
    << objective(m, x);
  if (o.pass) o.detail = d.str();
  else o.detail += " (" + d.str() + ")";
  return o;
}

Outcome exclusion_pipeline() {
  Outcome o;
  const auto t0 = Clock::now();
  const ExclusionReport rep = run_exclusion(5, 2, 7, ExclusionOptions{600.0, {}, 1, true, ""});
  o.require(rep.verdict == Verdict::RigidOrNonexistent, "verdict " + to_string(rep.verdict));
  bool all_infeasible = true;
  for (const auto& c : rep.outcomes) all_infeasible = all_infeasible && c.status == SolveStatus::ProvedInfeasible;
  o.require(all_infeasible && rep.outcomes.size() == 29, "not every nontrivial class ProvedInfeasible");
  const Solution full = solve_max(testing::full_plane_model(Plane(Field(5)), 2));
  o.require(full.status == SolveStatus::Optimal && full.objective == 6,
            "m_2(2,5) computed as " + std::to_string(full.objective));
  const double t = seconds_since(t0);
  o.require(t < 600.0, "took " + std::to_string(t) + " s");
  if (o.pass) o.detail = "29/29 classes ProvedInfeasible, m_2(2,5)=6, " + std::to_string(t) + " s";
  return o;
}

Outcome long_runs_documented() {
  // The full q=11/13 sweeps are not CI tests; check that the resumable
  // sweep they rely on round-trips through its checkpoint at a tiny budget.
  Outcome o;
  const auto path = (std::filesystem::temp_directory_path() / "pgarcs_acceptance_checkpoint.txt").string();
  std::filesystem::remove(path);
  ExclusionOptions eo{0.05, {}, 1, true, path};
  const ExclusionReport first = run_exclusion(13, 5, 50, eo);
  const auto t0 = Clock::now();
  const ExclusionReport again = run_exclusion(13, 5, 50, eo);
  const double t_resume = seconds_since(t0);
  std::filesystem::remove(path);
  o.require(first.total_classes == 184, "class count");
  o.require(again.excluded == first.excluded && again.undecided == first.undecided, "resume changed the outcome");
  o.require(t_resume < 5.0, "resume re-solved classes");
  std::ostringstream d;
  d << "not reproduced at desk scale; q=13 r=5 n=50 sweep at 0.05 s/class: " << first.excluded.size()
    << " excluded, " << first.undecided.size() << " undecided, resume ok";
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome aut_conjugation() {
  Outcome o;
  std::mt19937_64 rng(11);
  for (const auto& c : testing::corpus()) {
    const ArcFile f = load_arc_file(testing::corpus_path(c.file));
    const Field& field = f.arc.plane->field();
    const ArcReport base = verify_arc(f.arc);
    for (int t = 0; t < 20; ++t) {
      const GroupElement alpha = testing::random_element(field, rng);
      const Arc img = map_arc(alpha, f.arc);
      const ArcReport rep = verify_arc(img);
      o.require(admits_group(img, conjugate_group(field, alpha, *f.group)), c.file + " admission");
      o.require(rep.n == base.n && rep.max_multiplicity == base.max_multiplicity &&
                    rep.lines_at_max == base.lines_at_max && rep.is_arc_for_claimed_r == base.is_arc_for_claimed_r,
                c.file + " report");
    }
  }
  if (o.pass) o.detail = "7 arcs x 20 conjugations";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"corpus fidelity", corpus_fidelity},
      {"code correspondence", code_correspondence},
      {"counting", counting},
      {"conjugacy classes", conjugacy_classes},
      {"solver correctness", solver_correctness},
      {"condensation feasibility transfer", feasibility_transfer},
      {"corpus round trip", corpus_round_trip},
      {"warm-start reachability", warm_start_reachability},
      {"exclusion pipeline", exclusion_pipeline},
      {"long runs outside CI", long_runs_documented},
      {"aut-conjugation", aut_conjugation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::cout << "criterion " << (i + 1) << " [" << (o.pass ? "PASS" : "FAIL") << "] " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
