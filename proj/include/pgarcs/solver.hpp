#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "pgarcs/condense.hpp"
#include "pgarcs/matrix.hpp"

namespace pgarcs {

/// max w.x subject to A x <= rhs, x in {0,1}^n, all data nonnegative integers.
struct IlpModel {
  DenseMatrix<int> A;
  std::vector<long long> w;
  std::vector<int> rhs;
  /// Optional row multipliers y with A^T y = scale * w (line-orbit lengths
  /// for a condensed system, scale = q+1). Used for a purely integer bound.
  std::vector<long long> row_mult;
  long long mult_scale = 1;

  std::size_t rows() const noexcept { return A.rows(); }
  std::size_t cols() const noexcept { return A.cols(); }
};

/// Throws DomainError on inconsistent dimensions or negative data.
void validate(const IlpModel& model);
IlpModel make_model(const CondensedSystem& system);
bool is_feasible(const IlpModel& model, const std::vector<std::uint8_t>& x);
long long objective(const IlpModel& model, const std::vector<std::uint8_t>& x);

enum class SolveStatus { Optimal, FeasibleFound, ProvedInfeasible, Timeout };
std::string to_string(SolveStatus status);

struct Solution {
  std::vector<std::uint8_t> x;
  long long objective = 0;
  SolveStatus status = SolveStatus::Timeout;
  std::uint64_t nodes_explored = 0;
  double wall_time = 0.0;
  /// Best proven upper bound on the optimum (root bound if the search was cut off).
  long long upper_bound = std::numeric_limits<long long>::max();
};

/// Per-variable fixing: -1 free, 0 or 1 fixed.
using PartialAssignment = std::vector<std::int8_t>;

struct NodeInfo {
  const PartialAssignment& fixed;
  long long bound;
};

struct SolveOptions {
  double budget_seconds = 60.0;
  int threads = 1;
  bool deterministic = true;
  /// Stop after this many nodes (0 = unlimited); reported as Timeout.
  std::uint64_t node_limit = 0;
  /// Seed for the randomized primal heuristic.
  std::uint64_t seed = 1;
  /// Share of the budget spent on the improvement heuristic before the tree
  /// search (0 disables it). In deterministic mode it is bounded by
  /// heuristic_iterations instead of wall time.
  double heuristic_share = 0.0;
  std::uint64_t heuristic_iterations = 200000;
  /// Optional initial incumbent; ignored unless feasible.
  std::vector<std::uint8_t> warm_start;
  /// Called at every explored node with its (propagated) fixing and bound.
  std::function<void(const NodeInfo&)> on_node;
};

/// Branch-and-bound maximization. Optimal if the search completes within
/// budget, otherwise Timeout with the best incumbent.
Solution solve_max(const IlpModel& model, const SolveOptions& options = {});

/// Search for x with w.x >= target: FeasibleFound, ProvedInfeasible or Timeout.
Solution solve_feasible(const IlpModel& model, long long target, double budget_seconds);
Solution solve_feasible(const IlpModel& model, long long target, const SolveOptions& options);

struct LpBound {
  /// LP relaxation value over the free variables plus the fixed objective.
  double lp_value = 0.0;
  /// Integer upper bound on every completion; kPruned if a fixing violates a row.
  long long bound = 0;
  static constexpr long long kPruned = std::numeric_limits<long long>::min();
};

/// Upper bound on w.x over all 0/1 completions of `fixed`.
LpBound lp_bound(const IlpModel& model, const PartialAssignment& fixed);

/// Descending-weight insertion followed by 1-flip and 1-swap local search.
Solution greedy_warm_start(const IlpModel& model);

inline constexpr std::size_t kOracleMaxVariables = 25;

/// Exact optimum by Gray-code enumeration of all 2^n selections. Throws
/// BudgetError for more than kOracleMaxVariables variables.
Solution exhaustive_oracle(const IlpModel& model);

}  // namespace pgarcs
