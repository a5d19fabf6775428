#pragma once

#include <array>
#include <string>
#include <vector>

#include "pgarcs/group.hpp"
#include "pgarcs/solver.hpp"

namespace pgarcs {

/// GL(3,q)-similarity invariant of an invertible 3x3 matrix. For 3x3
/// matrices the characteristic and minimal polynomials determine the
/// invariant factors, hence the rational canonical form.
struct ConjugacyLabel {
  /// x^3 + c[0] x^2 + c[1] x + c[2].
  std::array<Element, 3> charpoly{};
  int minpoly_degree = 0;
  /// Minimal polynomial coefficients below the leading 1, highest degree first, zero-padded.
  std::array<Element, 3> minpoly{};

  auto operator<=>(const ConjugacyLabel&) const = default;
};

/// Throws DomainError for a singular matrix.
ConjugacyLabel canonical_label(const Field& field, const Mat3& m);

/// Label of the PGL(3,q) class of m: the smallest label over all nonzero scalar multiples.
ConjugacyLabel projective_label(const Field& field, const Mat3& m);

/// One rational canonical form per GL(3,p) conjugacy class (p^3 - p of them):
/// companion matrices of cubics, a scalar block beside a companion block of
/// (x-a)(x-b), and the scalars. Throws BudgetError for p outside [2, 31].
std::vector<Mat3> gl3_class_representatives(int p);

/// Least m >= 1 with g^m scalar.
int projective_order(const Field& field, const Mat3& m);

struct ConjClassRep {
  int id = 0;
  GroupElement generator;
  int projective_order = 1;
  /// Sorted labels of the coprime powers of the generator, up to scalars.
  std::vector<ConjugacyLabel> signature;
  /// Index of the conjugacy class of the cyclic subgroup <generator>;
  /// equal ids generate conjugate subgroups.
  int subgroup_id = 0;
  bool trivial = false;
};

/// Transversal of the conjugacy classes of elements of PGL(3,p), each with
/// the conjugacy class of the cyclic subgroup it generates. Sorted by
/// projective order, then signature; the identity comes first.
/// Throws BudgetError for p outside [2, 31].
std::vector<ConjClassRep> enumerate_cyclic_classes(int p);

/// Number of distinct subgroup_id values (including the trivial subgroup).
int count_subgroup_classes(const std::vector<ConjClassRep>& classes);

enum class Verdict { RigidOrNonexistent, RigidOrListedGroups, Inconclusive };
std::string to_string(Verdict verdict);

struct ClassOutcome {
  int class_id = 0;
  int subgroup_id = 0;
  int projective_order = 0;
  int ell = 0;
  bool skipped = false;
  SolveStatus status = SolveStatus::Timeout;
  long long objective = 0;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

struct ExclusionReport {
  int q = 0;
  int r = 0;
  int n = 0;
  int total_classes = 0;
  int subgroup_classes = 0;
  std::vector<ClassOutcome> outcomes;
  /// Class ids proved unable to carry an (n,r)-arc.
  std::vector<int> excluded;
  /// Class ids that timed out or were skipped.
  std::vector<int> undecided;
  /// Class ids admitting an arc with at least n points.
  std::vector<int> found;
  Verdict verdict = Verdict::Inconclusive;
};

struct ExclusionOptions {
  double budget_per_class = 5000.0;
  std::vector<int> skip;
  int threads = 1;
  bool deterministic = true;
  /// If set, per-subgroup results are appended here and reused on rerun;
  /// recorded timeouts are retried when budget_per_class exceeds the time they used.
  std::string checkpoint_path;
};

/// For every nontrivial class, prescribe the cyclic group it generates and
/// decide whether an (n,r)-arc admitting it exists. Each conjugacy class of
/// cyclic subgroups is solved once and its outcome shared by its classes.
ExclusionReport run_exclusion(int p, int r, int n, const ExclusionOptions& options);

}  // namespace pgarcs
