#include "pgarcs/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "pgarcs/error.hpp"
#include "pgarcs/lp.hpp"

namespace pgarcs {

using Clock = std::chrono::steady_clock;

void validate(const IlpModel& model) {
  if (model.w.size() != model.cols()) throw DomainError("model: objective length differs from column count");
  if (model.rhs.size() != model.rows()) throw DomainError("model: rhs length differs from row count");
  if (!model.row_mult.empty() && model.row_mult.size() != model.rows()) {
    throw DomainError("model: row multiplier length differs from row count");
  }
  if (model.mult_scale < 1) throw DomainError("model: multiplier scale must be positive");
  for (std::size_t i = 0; i < model.rows(); ++i) {
    if (model.rhs[i] < 0) throw DomainError("model: negative right-hand side");
    for (std::size_t j = 0; j < model.cols(); ++j) {
      if (model.A(i, j) < 0) throw DomainError("model: negative matrix entry");
    }
  }
  for (long long v : model.w) {
    if (v < 0) throw DomainError("model: negative weight");
  }
  for (long long v : model.row_mult) {
    if (v < 0) throw DomainError("model: negative row multiplier");
  }
}

IlpModel make_model(const CondensedSystem& system) {
  IlpModel m;
  m.A = system.A;
  m.w.assign(system.w.begin(), system.w.end());
  m.rhs.assign(system.ell, system.r);
  if (!system.line_w.empty()) {
    m.row_mult.assign(system.line_w.begin(), system.line_w.end());
    m.mult_scale = system.q + 1;
  }
  validate(m);
  return m;
}

bool is_feasible(const IlpModel& model, const std::vector<std::uint8_t>& x) {
  if (x.size() != model.cols()) return false;
  for (std::size_t i = 0; i < model.rows(); ++i) {
    long long s = 0;
    for (std::size_t j = 0; j < model.cols(); ++j) {
      if (x[j]) s += model.A(i, j);
    }
    if (s > model.rhs[i]) return false;
  }
  return true;
}

long long objective(const IlpModel& model, const std::vector<std::uint8_t>& x) {
  long long s = 0;
  for (std::size_t j = 0; j < model.cols() && j < x.size(); ++j) {
    if (x[j]) s += model.w[j];
  }
  return s;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::FeasibleFound: return "FeasibleFound";
    case SolveStatus::ProvedInfeasible: return "ProvedInfeasible";
    case SolveStatus::Timeout: return "Timeout";
  }
  return "Unknown";
}

namespace {

struct Sparse {
  std::vector<std::vector<std::pair<int, int>>> cols;  // (row, coef)
  std::vector<long long> col_mult;

  explicit Sparse(const IlpModel& m) : cols(m.cols()), col_mult(m.cols(), 0) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const int a = m.A(i, j);
        if (a == 0) continue;
        cols[j].emplace_back(static_cast<int>(i), a);
        if (!m.row_mult.empty()) col_mult[j] += m.row_mult[i] * a;
      }
    }
  }
};

struct Shared {
  std::atomic<long long> best{-1};
  std::mutex mu;
  std::vector<std::uint8_t> best_x;
  long long best_x_obj = -1;
  std::atomic<bool> stop{false};
  std::atomic<bool> timed_out{false};
  std::atomic<bool> found{false};
  std::atomic<std::uint64_t> nodes{0};
  Clock::time_point deadline;
  std::uint64_t node_limit = 0;

  void offer(const std::vector<std::uint8_t>& x, long long obj) {
    long long cur = best.load();
    while (obj > cur && !best.compare_exchange_weak(cur, obj)) {
    }
    std::lock_guard<std::mutex> lock(mu);
    if (obj > best_x_obj) {
      best_x_obj = obj;
      best_x = x;
    }
  }
};

enum class Mode { Maximize, Feasibility };

struct Evaluation {
  double lp_value = 0.0;
  long long bound = 0;
  bool integral = false;
  // LP values for every column (fixed columns carry their fixing).
  std::vector<double> xlp;
};

class Search {
 public:
  Search(const IlpModel& model, const Sparse& sparse, Shared& shared, Mode mode, long long target,
         const SolveOptions& options)
      : m_(model),
        sp_(sparse),
        sh_(shared),
        mode_(mode),
        target_(target),
        opt_(options),
        val_(model.cols(), -1),
        res_(model.rhs.begin(), model.rhs.end()) {}

  /// Apply an external fixing; false if it violates a row.
  bool apply(const PartialAssignment& fixed) {
    for (std::size_t j = 0; j < fixed.size(); ++j) {
      if (fixed[j] < 0) continue;
      if (fixed[j] == 1) {
        for (auto [i, a] : sp_.cols[j]) {
          if (res_[i] < a) return false;
        }
      }
      fix(static_cast<int>(j), fixed[j]);
    }
    return true;
  }

  void propagate() {
    for (std::size_t j = 0; j < val_.size(); ++j) {
      if (val_[j] != -1) continue;
      for (auto [i, a] : sp_.cols[j]) {
        if (a > res_[i]) {
          fix(static_cast<int>(j), 0);
          break;
        }
      }
    }
  }

  Evaluation evaluate() const {
    Evaluation ev;
    const std::size_t n = m_.cols();
    const std::size_t rows = m_.rows();
    ev.xlp.assign(n, 0.0);
    std::vector<int> free_cols;
    long long free_w = 0;
    std::vector<long long> free_row_sum(rows, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (val_[j] == -1) {
        free_cols.push_back(static_cast<int>(j));
        free_w += m_.w[j];
        for (auto [i, a] : sp_.cols[j]) free_row_sum[i] += a;
      } else {
        ev.xlp[j] = val_[j];
      }
    }

    long long comb = fixed_obj_ + free_w;
    if (!m_.row_mult.empty()) {
      long long num = 0;
      for (std::size_t i = 0; i < rows; ++i) num += m_.row_mult[i] * std::min<long long>(res_[i], free_row_sum[i]);
      for (int j : free_cols) num += std::max(0LL, m_.mult_scale * m_.w[j] - sp_.col_mult[j]);
      comb = std::min(comb, fixed_obj_ + num / m_.mult_scale);
    }

    std::vector<int> active_rows;
    std::vector<int> row_slot(rows, -1);
    for (std::size_t i = 0; i < rows; ++i) {
      if (free_row_sum[i] > res_[i]) {
        row_slot[i] = static_cast<int>(active_rows.size());
        active_rows.push_back(static_cast<int>(i));
      }
    }
    // Columns untouched by binding rows sit at 1 in the relaxation.
    std::vector<int> lp_cols;
    double base = static_cast<double>(fixed_obj_);
    long long base_int = fixed_obj_;
    for (int j : free_cols) {
      bool binding = false;
      for (auto [i, a] : sp_.cols[j]) {
        if (row_slot[i] >= 0) {
          binding = true;
          break;
        }
      }
      if (binding) {
        lp_cols.push_back(j);
      } else {
        ev.xlp[j] = 1.0;
        base += static_cast<double>(m_.w[j]);
        base_int += m_.w[j];
      }
    }
    if (lp_cols.empty()) {
      ev.lp_value = base;
      ev.bound = std::min(comb, base_int);
      ev.integral = true;
      return ev;
    }

    DenseMatrix<double> a(active_rows.size(), lp_cols.size(), 0.0);
    std::vector<double> b(active_rows.size());
    std::vector<double> c(lp_cols.size());
    for (std::size_t k = 0; k < active_rows.size(); ++k) b[k] = static_cast<double>(res_[active_rows[k]]);
    for (std::size_t t = 0; t < lp_cols.size(); ++t) {
      const int j = lp_cols[t];
      c[t] = static_cast<double>(m_.w[j]);
      for (auto [i, coef] : sp_.cols[j]) {
        if (row_slot[i] >= 0) a(row_slot[i], t) = coef;
      }
    }
    const LpResult lp = solve_box_lp(a, b, c);
    ev.lp_value = base + lp.value;
    long long bound = comb;
    if (lp.ok) {
      // Weak duality with the clipped duals holds for any y >= 0, so the
      // bound does not depend on the simplex having converged exactly.
      double dual = base;
      for (std::size_t k = 0; k < active_rows.size(); ++k) dual += lp.y[k] * b[k];
      for (std::size_t t = 0; t < lp_cols.size(); ++t) {
        double reduced = c[t];
        for (std::size_t k = 0; k < active_rows.size(); ++k) reduced -= lp.y[k] * a(k, t);
        dual += std::max(0.0, reduced);
      }
      bound = std::min(bound, static_cast<long long>(std::floor(dual + 1e-6)));
    }
    ev.bound = bound;
    bool integral = lp.ok;
    for (std::size_t t = 0; t < lp_cols.size(); ++t) {
      ev.xlp[lp_cols[t]] = lp.x[t];
      if (lp.x[t] > 1e-9 && lp.x[t] < 1.0 - 1e-9) integral = false;
    }
    ev.integral = integral;
    return ev;
  }

  void dfs() {
    if (sh_.stop.load(std::memory_order_relaxed)) return;
    const std::uint64_t count = sh_.nodes.fetch_add(1) + 1;
    if ((sh_.node_limit != 0 && count > sh_.node_limit) || Clock::now() >= sh_.deadline) {
      sh_.timed_out = true;
      sh_.stop = true;
      return;
    }
    const std::size_t mark = trail_.size();
    propagate();
    if (free_count() == 0) {
      offer_current();
      undo(mark);
      return;
    }
    const Evaluation ev = evaluate();
    if (opt_.on_node) opt_.on_node(NodeInfo{val_, ev.bound});
    if (depth_ == 0) root_bound_ = ev.bound;
    if (!prunable(ev.bound)) {
      if (ev.integral) {
        offer_rounded(ev.xlp);
      } else {
        round_and_offer(ev.xlp);
        if (!prunable(ev.bound) && !sh_.stop.load()) {
          const int j = branch_variable(ev.xlp);
          const std::size_t inner = trail_.size();
          ++depth_;
          fix(j, 1);
          dfs();
          undo(inner);
          if (!sh_.stop.load()) {
            fix(j, 0);
            dfs();
            undo(inner);
          }
          --depth_;
        }
      }
    }
    undo(mark);
  }

  /// Free variables ranked by branching priority at the current node.
  std::vector<int> branching_order() {
    propagate();
    const Evaluation ev = evaluate();
    std::vector<int> order;
    for (std::size_t j = 0; j < val_.size(); ++j) {
      if (val_[j] == -1) order.push_back(static_cast<int>(j));
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return better_branch(ev.xlp, a, b); });
    return order;
  }

  long long root_bound() const { return root_bound_; }

 private:
  bool prunable(long long bound) const {
    if (mode_ == Mode::Feasibility) return bound < target_;
    return bound <= sh_.best.load(std::memory_order_relaxed);
  }

  std::size_t free_count() const {
    return static_cast<std::size_t>(std::count(val_.begin(), val_.end(), std::int8_t{-1}));
  }

  void fix(int j, int v) {
    val_[j] = static_cast<std::int8_t>(v);
    if (v == 1) {
      for (auto [i, a] : sp_.cols[j]) res_[i] -= a;
      fixed_obj_ += m_.w[j];
    }
    trail_.push_back(j);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const int j = trail_.back();
      trail_.pop_back();
      if (val_[j] == 1) {
        for (auto [i, a] : sp_.cols[j]) res_[i] += a;
        fixed_obj_ -= m_.w[j];
      }
      val_[j] = -1;
    }
  }

  void offer(const std::vector<std::uint8_t>& x, long long obj) {
    sh_.offer(x, obj);
    if (mode_ == Mode::Feasibility && obj >= target_) {
      sh_.found = true;
      sh_.stop = true;
    }
  }

  void offer_current() {
    std::vector<std::uint8_t> x(val_.size(), 0);
    for (std::size_t j = 0; j < val_.size(); ++j) x[j] = val_[j] == 1;
    offer(x, fixed_obj_);
  }

  void offer_rounded(const std::vector<double>& xlp) {
    std::vector<std::uint8_t> x(val_.size(), 0);
    for (std::size_t j = 0; j < val_.size(); ++j) x[j] = xlp[j] > 0.5;
    if (is_feasible(m_, x)) offer(x, objective(m_, x));
  }

  // Take the free variables in decreasing LP value and insert those that fit.
  void round_and_offer(const std::vector<double>& xlp) {
    std::vector<int> order;
    std::vector<std::uint8_t> x(val_.size(), 0);
    long long obj = fixed_obj_;
    for (std::size_t j = 0; j < val_.size(); ++j) {
      if (val_[j] == 1) x[j] = 1;
      if (val_[j] == -1) order.push_back(static_cast<int>(j));
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (xlp[a] != xlp[b]) return xlp[a] > xlp[b];
      if (m_.w[a] != m_.w[b]) return m_.w[a] > m_.w[b];
      return a < b;
    });
    std::vector<long long> res(res_.begin(), res_.end());
    for (int j : order) {
      bool fits = true;
      for (auto [i, a] : sp_.cols[j]) {
        if (res[i] < a) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      for (auto [i, a] : sp_.cols[j]) res[i] -= a;
      x[j] = 1;
      obj += m_.w[j];
    }
    if (obj > sh_.best.load() || (mode_ == Mode::Feasibility && obj >= target_)) offer(x, obj);
  }

  bool better_branch(const std::vector<double>& xlp, int a, int b) const {
    const double fa = std::min(xlp[a], 1.0 - xlp[a]);
    const double fb = std::min(xlp[b], 1.0 - xlp[b]);
    if (std::abs(fa - fb) > 1e-9) return fa > fb;
    if (m_.w[a] != m_.w[b]) return m_.w[a] > m_.w[b];
    return a < b;
  }

  int branch_variable(const std::vector<double>& xlp) const {
    int best = -1;
    for (std::size_t j = 0; j < val_.size(); ++j) {
      if (val_[j] != -1) continue;
      if (best < 0 || better_branch(xlp, static_cast<int>(j), best)) best = static_cast<int>(j);
    }
    return best;
  }

  const IlpModel& m_;
  const Sparse& sp_;
  Shared& sh_;
  Mode mode_;
  long long target_;
  const SolveOptions& opt_;
  PartialAssignment val_;
  std::vector<long long> res_;
  long long fixed_obj_ = 0;
  std::vector<int> trail_;
  int depth_ = 0;
  long long root_bound_ = std::numeric_limits<long long>::max();
};

// Add-and-repair local search with annealed acceptance and a tabu list on
// removed variables. Returns the best solution seen.
std::vector<std::uint8_t> improve(const IlpModel& m, const Sparse& sp, std::vector<std::uint8_t> x,
                                  std::uint64_t seed, std::uint64_t max_iterations, Clock::time_point deadline,
                                  bool use_deadline, const std::atomic<bool>* stop, long long goal) {
  const int n = static_cast<int>(m.cols());
  if (n == 0) return x;
  std::mt19937_64 rng(seed);
  std::vector<long long> rows(m.rows(), 0);
  long long obj = 0;
  for (int j = 0; j < n; ++j) {
    if (!x[j]) continue;
    obj += m.w[j];
    for (auto [i, a] : sp.cols[j]) rows[i] += a;
  }
  std::vector<std::uint8_t> best = x;
  long long best_obj = obj;
  std::vector<std::uint64_t> tabu_until(n, 0);
  const long long wmax = *std::max_element(m.w.begin(), m.w.end());
  double temperature = std::max(1.0, 0.5 * static_cast<double>(wmax));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  auto fits = [&](int j) {
    for (auto [i, a] : sp.cols[j]) {
      if (rows[i] + a > m.rhs[i]) return false;
    }
    return true;
  };
  auto add = [&](int j) {
    x[j] = 1;
    obj += m.w[j];
    for (auto [i, a] : sp.cols[j]) rows[i] += a;
  };
  auto remove = [&](int j) {
    x[j] = 0;
    obj -= m.w[j];
    for (auto [i, a] : sp.cols[j]) rows[i] -= a;
  };

  std::vector<int> removed;
  for (std::uint64_t it = 1; it <= max_iterations; ++it) {
    if ((it & 63U) == 0) {
      if (use_deadline && Clock::now() >= deadline) break;
      if (stop != nullptr && stop->load()) break;
    }
    // Pick an unselected, non-tabu variable.
    int j = -1;
    for (int attempt = 0; attempt < 4 * n && j < 0; ++attempt) {
      const int c = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      if (!x[c] && tabu_until[c] <= it) j = c;
    }
    if (j < 0) continue;
    const long long before = obj;
    removed.clear();
    add(j);
    // Repair: drop the lightest conflicting selected variable of each violated row.
    for (auto [i, a] : sp.cols[j]) {
      while (rows[i] > m.rhs[i]) {
        int victim = -1;
        long long vw = 0;
        std::uint64_t tie = 0;
        for (int k = 0; k < n; ++k) {
          if (!x[k] || k == j || m.A(i, k) == 0) continue;
          const std::uint64_t t = rng();
          if (victim < 0 || m.w[k] < vw || (m.w[k] == vw && t < tie)) {
            victim = k;
            vw = m.w[k];
            tie = t;
          }
        }
        if (victim < 0) break;
        remove(victim);
        removed.push_back(victim);
      }
    }
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> added;
    for (int k : order) {
      if (!x[k] && tabu_until[k] <= it && fits(k)) {
        add(k);
        added.push_back(k);
      }
    }
    const long long delta = obj - before;
    const bool accept = delta >= 0 || unit(rng) < std::exp(static_cast<double>(delta) / temperature);
    if (accept) {
      for (int k : removed) tabu_until[k] = it + 3 + rng() % 7;
    } else {
      for (auto k = added.rbegin(); k != added.rend(); ++k) remove(*k);
      for (int k : removed) add(k);
      remove(j);
    }
    if (obj > best_obj) {
      best_obj = obj;
      best = x;
      if (best_obj >= goal) break;
    }
    temperature = std::max(0.05 * static_cast<double>(wmax), temperature * 0.9999);
    if ((it % 20000) == 0) temperature = std::max(1.0, 0.5 * static_cast<double>(wmax));
  }
  return best;
}

Solution run_search(const IlpModel& model, Mode mode, long long target, const SolveOptions& options) {
  validate(model);
  const auto start = Clock::now();
  const Sparse sparse(model);
  Shared shared;
  shared.deadline = start + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(std::max(0.0, options.budget_seconds)));
  shared.node_limit = options.node_limit;

  Solution sol;
  const std::size_t n = model.cols();
  auto finish = [&](SolveStatus status) {
    {
      std::lock_guard<std::mutex> lock(shared.mu);
      if (shared.best_x_obj >= 0) {
        sol.x = shared.best_x;
        sol.objective = shared.best_x_obj;
      } else {
        sol.x.assign(n, 0);
        sol.objective = 0;
      }
    }
    sol.status = status;
    sol.nodes_explored = shared.nodes.load();
    sol.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
    return sol;
  };

  if (mode == Mode::Feasibility && target <= 0) {
    shared.offer(std::vector<std::uint8_t>(n, 0), 0);
    return finish(SolveStatus::FeasibleFound);
  }

  // Incumbent: caller warm start, greedy, then the improvement heuristic.
  if (mode == Mode::Maximize) {
    const Solution greedy = greedy_warm_start(model);
    shared.offer(greedy.x, greedy.objective);
    if (!options.warm_start.empty() && is_feasible(model, options.warm_start)) {
      shared.offer(options.warm_start, objective(model, options.warm_start));
    }
  }
  if (options.heuristic_share > 0.0 && n > 0) {
    std::vector<std::uint8_t> seed_x;
    {
      std::lock_guard<std::mutex> lock(shared.mu);
      seed_x = shared.best_x_obj >= 0 ? shared.best_x : std::vector<std::uint8_t>(n, 0);
    }
    const auto h_deadline =
        start + std::chrono::duration_cast<Clock::duration>(
                    std::chrono::duration<double>(options.budget_seconds * std::min(1.0, options.heuristic_share)));
    const long long goal = mode == Mode::Feasibility ? target : std::numeric_limits<long long>::max();
    const std::uint64_t iters =
        options.deterministic ? options.heuristic_iterations : std::numeric_limits<std::uint64_t>::max();
    const auto x = improve(model, sparse, seed_x, options.seed, iters, h_deadline, !options.deterministic, nullptr,
                           goal);
    const long long obj = objective(model, x);
    shared.offer(x, obj);
    if (mode == Mode::Feasibility && obj >= target) return finish(SolveStatus::FeasibleFound);
  }

  const bool parallel = options.threads > 1 && !options.deterministic;
  long long root_bound = std::numeric_limits<long long>::max();
  if (!parallel) {
    Search search(model, sparse, shared, mode, target, options);
    search.dfs();
    root_bound = search.root_bound();
  } else {
    // Split on the top-ranked branching variables at the root and hand the
    // subtrees to workers that share the incumbent.
    Search root(model, sparse, shared, mode, target, options);
    const std::vector<int> order = root.branching_order();
    int depth = 0;
    while ((1 << depth) < 4 * options.threads && depth < static_cast<int>(order.size()) && depth < 12) ++depth;
    const int subtrees = 1 << depth;
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (int s = next.fetch_add(1); s < subtrees && !shared.stop.load(); s = next.fetch_add(1)) {
        PartialAssignment fixed(n, -1);
        // Subtree 0 sets every split variable to 1, matching the 1-first order.
        for (int k = 0; k < depth; ++k) fixed[order[k]] = static_cast<std::int8_t>(((s >> (depth - 1 - k)) & 1) ? 0 : 1);
        Search local(model, sparse, shared, mode, target, options);
        if (!local.apply(fixed)) continue;
        local.dfs();
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < options.threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    root_bound = lp_bound(model, PartialAssignment(n, -1)).bound;
  }

  sol.upper_bound = root_bound;
  if (mode == Mode::Feasibility) {
    if (shared.found) return finish(SolveStatus::FeasibleFound);
    if (shared.timed_out) return finish(SolveStatus::Timeout);
    return finish(SolveStatus::ProvedInfeasible);
  }
  if (shared.timed_out) return finish(SolveStatus::Timeout);
  Solution done = finish(SolveStatus::Optimal);
  done.upper_bound = done.objective;
  return done;
}

}  // namespace

Solution solve_max(const IlpModel& model, const SolveOptions& options) {
  return run_search(model, Mode::Maximize, 0, options);
}

Solution solve_feasible(const IlpModel& model, long long target, double budget_seconds) {
  SolveOptions options;
  options.budget_seconds = budget_seconds;
  return solve_feasible(model, target, options);
}

Solution solve_feasible(const IlpModel& model, long long target, const SolveOptions& options) {
  return run_search(model, Mode::Feasibility, target, options);
}

LpBound lp_bound(const IlpModel& model, const PartialAssignment& fixed) {
  validate(model);
  if (fixed.size() != model.cols()) throw DomainError("lp_bound: assignment length differs from column count");
  const Sparse sparse(model);
  Shared shared;
  const SolveOptions options;
  Search search(model, sparse, shared, Mode::Maximize, 0, options);
  LpBound out;
  if (!search.apply(fixed)) {
    out.bound = LpBound::kPruned;
    out.lp_value = -std::numeric_limits<double>::infinity();
    return out;
  }
  const Evaluation ev = search.evaluate();
  out.lp_value = ev.lp_value;
  out.bound = ev.bound;
  return out;
}

Solution greedy_warm_start(const IlpModel& model) {
  validate(model);
  const auto start = Clock::now();
  const Sparse sp(model);
  const int n = static_cast<int>(model.cols());
  std::vector<long long> rows(model.rows(), 0);
  std::vector<std::uint8_t> x(n, 0);
  auto fits = [&](int j) {
    for (auto [i, a] : sp.cols[j]) {
      if (rows[i] + a > model.rhs[i]) return false;
    }
    return true;
  };
  auto set = [&](int j, int v) {
    x[j] = static_cast<std::uint8_t>(v);
    for (auto [i, a] : sp.cols[j]) rows[i] += v ? a : -a;
  };
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return model.w[a] > model.w[b]; });

  auto flip_pass = [&]() {
    bool any = false;
    for (int j : order) {
      if (!x[j] && fits(j)) {
        set(j, 1);
        any = true;
      }
    }
    return any;
  };
  flip_pass();

  // 1-swap: drop k, insert a heavier j; or an equal-weight swap that frees
  // room for a further 1-flip.
  bool improved = true;
  while (improved) {
    improved = false;
    for (int k = 0; k < n && !improved; ++k) {
      if (!x[k]) continue;
      set(k, 0);
      for (int j : order) {
        if (x[j] || j == k || model.w[j] < model.w[k] || !fits(j)) continue;
        set(j, 1);
        if (model.w[j] > model.w[k]) {
          improved = true;
          break;
        }
        int extra = -1;
        for (int t : order) {
          if (!x[t] && t != k && fits(t)) {
            extra = t;
            break;
          }
        }
        if (extra >= 0) {
          set(extra, 1);
          improved = true;
          break;
        }
        set(j, 0);
      }
      if (!improved) set(k, 1);
    }
    if (improved) flip_pass();
  }

  Solution sol;
  sol.x = std::move(x);
  sol.objective = objective(model, sol.x);
  sol.status = SolveStatus::FeasibleFound;
  sol.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return sol;
}

Solution exhaustive_oracle(const IlpModel& model) {
  validate(model);
  const std::size_t n = model.cols();
  if (n > kOracleMaxVariables) {
    throw BudgetError("exhaustive_oracle: " + std::to_string(n) + " variables exceed the limit of " +
                      std::to_string(kOracleMaxVariables));
  }
  const auto start = Clock::now();
  const Sparse sp(model);
  std::vector<long long> rows(model.rows(), 0);
  long long violated = 0;
  long long obj = 0;
  std::uint64_t best_code = 0;
  long long best = 0;  // the empty selection is always feasible
  std::uint64_t gray = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int bit = __builtin_ctzll(step);
    const bool on = !((gray >> bit) & 1U);
    gray ^= std::uint64_t{1} << bit;
    obj += on ? model.w[bit] : -model.w[bit];
    for (auto [i, a] : sp.cols[bit]) {
      const bool was_bad = rows[i] > model.rhs[i];
      rows[i] += on ? a : -a;
      const bool is_bad = rows[i] > model.rhs[i];
      violated += static_cast<long long>(is_bad) - static_cast<long long>(was_bad);
    }
    if (violated == 0 && obj > best) {
      best = obj;
      best_code = gray;
    }
  }
  Solution sol;
  sol.x.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) sol.x[j] = (best_code >> j) & 1U;
  sol.objective = best;
  sol.status = SolveStatus::Optimal;
  sol.nodes_explored = total;
  sol.upper_bound = best;
  sol.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return sol;
}

}  // namespace pgarcs
