#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "pgarcs/classify.hpp"
#include "pgarcs/condense.hpp"
#include "pgarcs/error.hpp"

namespace pgarcs {

namespace {

struct SubgroupResult {
  int ell = 0;
  SolveStatus status = SolveStatus::Timeout;
  long long objective = 0;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

std::optional<SolveStatus> parse_status(const std::string& s) {
  for (auto st : {SolveStatus::Optimal, SolveStatus::FeasibleFound, SolveStatus::ProvedInfeasible, SolveStatus::Timeout}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

std::string checkpoint_header(int p, int r, int n) {
  std::ostringstream out;
  out << "# exclusion checkpoint q=" << p << " r=" << r << " n=" << n;
  return out.str();
}

// Checkpoint format: a header line, then one line per finished subgroup class:
//   subgroup <id> <status> <objective> <nodes> <seconds> <ell>
// Later lines for the same id replace earlier ones.
std::map<int, SubgroupResult> read_checkpoint(const std::string& path, const std::string& header) {
  std::map<int, SubgroupResult> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  if (!std::getline(in, line)) return done;
  if (line != header) throw DomainError("checkpoint " + path + " belongs to a different run: " + line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream tok(line);
    std::string kw, status;
    int id = 0;
    SubgroupResult res;
    if (!(tok >> kw >> id >> status >> res.objective >> res.nodes >> res.seconds >> res.ell) || kw != "subgroup") {
      // A torn final line from an interrupted write is ignored.
      continue;
    }
    const auto st = parse_status(status);
    if (!st) throw ParseError(lineno, "unknown status '" + status + "' in checkpoint");
    res.status = *st;
    done[id] = res;
  }
  return done;
}

}  // namespace

ExclusionReport run_exclusion(int p, int r, int n, const ExclusionOptions& options) {
  const std::vector<ConjClassRep> classes = enumerate_cyclic_classes(p);
  const Plane plane(Field{p});
  if (r < 1 || r > p + 1) throw DomainError("run_exclusion: r out of range");

  ExclusionReport report;
  report.q = p;
  report.r = r;
  report.n = n;
  report.total_classes = static_cast<int>(classes.size());
  report.subgroup_classes = count_subgroup_classes(classes);

  const std::vector<int> skip(options.skip.begin(), options.skip.end());
  auto skipped = [&](int id) { return std::find(skip.begin(), skip.end(), id) != skip.end(); };

  // One representative class per nontrivial subgroup class that is needed.
  std::map<int, int> subgroup_rep;
  for (const auto& c : classes) {
    if (c.trivial || skipped(c.id)) continue;
    subgroup_rep.emplace(c.subgroup_id, c.id);
  }

  const std::string header = checkpoint_header(p, r, n);
  std::map<int, SubgroupResult> results;
  if (!options.checkpoint_path.empty()) results = read_checkpoint(options.checkpoint_path, header);
  std::ofstream checkpoint;
  if (!options.checkpoint_path.empty()) {
    const bool fresh = results.empty();
    checkpoint.open(options.checkpoint_path, fresh ? std::ios::trunc : std::ios::app);
    if (!checkpoint) throw std::runtime_error("cannot write checkpoint " + options.checkpoint_path);
    if (fresh) checkpoint << header << '\n' << std::flush;
  }

  std::vector<std::pair<int, int>> todo;
  for (const auto& [sid, cid] : subgroup_rep) {
    const auto it = results.find(sid);
    // A recorded timeout is retried when the budget has grown.
    const bool retry = it != results.end() && it->second.status == SolveStatus::Timeout &&
                       options.budget_per_class > it->second.seconds * 1.01;
    if (it == results.end() || retry) todo.emplace_back(sid, cid);
  }

  std::mutex mu;
  auto solve_one = [&](int sid, int cid) {
    const ConjClassRep& rep = classes[cid];
    const Group group = Group::closure(plane.field(), {rep.generator});
    const OrbitData orb = orbits(plane, group);
    const IlpModel model = make_model(condense(plane, orb, r));
    SolveOptions so;
    so.budget_seconds = options.budget_per_class;
    so.deterministic = true;
    so.threads = 1;
    const Solution sol = solve_feasible(model, n, so);
    SubgroupResult res{orb.ell, sol.status, sol.objective, sol.nodes_explored, sol.wall_time};
    std::lock_guard<std::mutex> lock(mu);
    results[sid] = res;
    if (checkpoint.is_open()) {
      checkpoint << "subgroup " << sid << ' ' << to_string(res.status) << ' ' << res.objective << ' ' << res.nodes
                 << ' ' << res.seconds << ' ' << res.ell << '\n'
                 << std::flush;
    }
  };

  const int threads = options.deterministic ? 1 : std::max(1, options.threads);
  if (threads == 1) {
    for (const auto& [sid, cid] : todo) solve_one(sid, cid);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        for (std::size_t k = next.fetch_add(1); k < todo.size(); k = next.fetch_add(1)) {
          solve_one(todo[k].first, todo[k].second);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  bool any_skipped = false;
  for (const auto& c : classes) {
    if (c.trivial) continue;
    ClassOutcome out;
    out.class_id = c.id;
    out.subgroup_id = c.subgroup_id;
    out.projective_order = c.projective_order;
    if (skipped(c.id)) {
      out.skipped = true;
      any_skipped = true;
      report.undecided.push_back(c.id);
    } else {
      const SubgroupResult& res = results.at(c.subgroup_id);
      out.ell = res.ell;
      out.status = res.status;
      out.objective = res.objective;
      out.nodes = res.nodes;
      out.seconds = res.seconds;
      if (res.status == SolveStatus::ProvedInfeasible) {
        report.excluded.push_back(c.id);
      } else if (res.status == SolveStatus::FeasibleFound) {
        report.found.push_back(c.id);
      } else {
        report.undecided.push_back(c.id);
      }
    }
    report.outcomes.push_back(out);
  }

  if (any_skipped || !report.found.empty()) {
    report.verdict = Verdict::Inconclusive;
  } else if (report.undecided.empty()) {
    report.verdict = Verdict::RigidOrNonexistent;
  } else {
    report.verdict = Verdict::RigidOrListedGroups;
  }
  return report;
}

}  // namespace pgarcs
