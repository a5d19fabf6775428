#include "pgarcs/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pgarcs/error.hpp"

namespace pgarcs {

namespace {

constexpr int kMaxClassifyPrime = 31;

void check_prime_range(int p) {
  if (!is_prime(p) || p > kMaxClassifyPrime) {
    throw BudgetError("conjugacy classification supports primes up to " + std::to_string(kMaxClassifyPrime) +
                      ", got " + std::to_string(p));
  }
}

Element trace(const Field& f, const Mat3& m) { return f.add_raw(f.add_raw(m[0], m[4]), m[8]); }

// Sum of the principal 2x2 minors.
Element minor_sum(const Field& f, const Mat3& m) {
  auto minor = [&](int a, int b) {
    return f.add_raw(f.mul_raw(m[4 * a], m[4 * b]), f.neg_raw(f.mul_raw(m[3 * a + b], m[3 * b + a])));
  };
  return f.add_raw(f.add_raw(minor(0, 1), minor(0, 2)), minor(1, 2));
}

}  // namespace

ConjugacyLabel canonical_label(const Field& field, const Mat3& m) {
  const Element det = mat_det(field, m);
  if (det == 0) throw DomainError("canonical_label: singular matrix");
  ConjugacyLabel label;
  // det(xI - M) = x^3 - tr x^2 + s2 x - det
  label.charpoly = {field.neg_raw(trace(field, m)), minor_sum(field, m), field.neg_raw(det)};
  if (mat_is_scalar(m)) {
    label.minpoly_degree = 1;
    label.minpoly = {field.neg_raw(m[0]), 0, 0};
    return label;
  }
  // M is not scalar, so I and M are independent; test M^2 + b1 M + b0 I = 0.
  const Mat3 m2 = mat_mul(field, m, m);
  int off = -1;
  for (int k : {1, 2, 3, 5, 6, 7}) {
    if (m[k] != 0) {
      off = k;
      break;
    }
  }
  Element b1 = 0;
  Element b0 = 0;
  if (off >= 0) {
    b1 = field.neg_raw(field.mul_raw(m2[off], field.inv_raw(m[off])));
    b0 = field.neg_raw(field.add_raw(m2[0], field.mul_raw(b1, m[0])));
  } else {
    // Diagonal with two different entries at positions a, b.
    int a = 0, b = 4;
    if (m[0] == m[4]) b = 8;
    const Element den = field.add_raw(m[a], field.neg_raw(m[b]));
    b1 = field.neg_raw(field.mul_raw(field.add_raw(m2[a], field.neg_raw(m2[b])), field.inv_raw(den)));
    b0 = field.neg_raw(field.add_raw(m2[a], field.mul_raw(b1, m[a])));
  }
  bool quadratic = true;
  for (int k = 0; k < 9 && quadratic; ++k) {
    const Element ident = (k % 4 == 0) ? b0 : 0;
    if (field.add_raw(field.add_raw(m2[k], field.mul_raw(b1, m[k])), ident) != 0) quadratic = false;
  }
  if (quadratic) {
    label.minpoly_degree = 2;
    label.minpoly = {b1, b0, 0};
  } else {
    label.minpoly_degree = 3;
    label.minpoly = label.charpoly;
  }
  return label;
}

ConjugacyLabel projective_label(const Field& field, const Mat3& m) {
  ConjugacyLabel best = canonical_label(field, m);
  for (int s = 2; s < field.q(); ++s) {
    best = std::min(best, canonical_label(field, mat_scale(field, m, static_cast<Element>(s))));
  }
  return best;
}

std::vector<Mat3> gl3_class_representatives(int p) {
  check_prime_range(p);
  const Field field(p);
  auto neg = [&](int v) { return field.neg_raw(static_cast<Element>(v)); };
  std::vector<Mat3> reps;
  // Companion matrix of x^3 + c2 x^2 + c1 x + c0 (cyclic classes).
  for (int c2 = 0; c2 < p; ++c2) {
    for (int c1 = 0; c1 < p; ++c1) {
      for (int c0 = 1; c0 < p; ++c0) {
        reps.push_back(Mat3{0, 0, neg(c0), 1, 0, neg(c1), 0, 1, neg(c2)});
      }
    }
  }
  // Invariant factors (x-a), (x-a)(x-b).
  for (int a = 1; a < p; ++a) {
    for (int b = 1; b < p; ++b) {
      const Element ab = field.mul_raw(static_cast<Element>(a), static_cast<Element>(b));
      const Element sum = field.add_raw(static_cast<Element>(a), static_cast<Element>(b));
      reps.push_back(Mat3{static_cast<Element>(a), 0, 0, 0, 0, field.neg_raw(ab), 0, 1, sum});
    }
  }
  for (int a = 1; a < p; ++a) {
    const auto s = static_cast<Element>(a);
    reps.push_back(Mat3{s, 0, 0, 0, s, 0, 0, 0, s});
  }
  return reps;
}

int projective_order(const Field& field, const Mat3& m) {
  Mat3 x = m;
  const long long limit = static_cast<long long>(field.q()) * field.q() * field.q();
  for (int k = 1; k <= limit; ++k) {
    if (mat_is_scalar(x)) return k;
    x = mat_mul(field, x, m);
  }
  throw DomainError("projective_order: matrix is not invertible");
}

std::vector<ConjClassRep> enumerate_cyclic_classes(int p) {
  check_prime_range(p);
  const Field field(p);
  std::map<ConjugacyLabel, Mat3> pgl;
  for (const Mat3& m : gl3_class_representatives(p)) pgl.emplace(projective_label(field, m), m);

  std::vector<ConjClassRep> classes;
  classes.reserve(pgl.size());
  for (const auto& [label, m] : pgl) {
    ConjClassRep rep;
    rep.generator = make_element(field, m);
    rep.projective_order = projective_order(field, m);
    rep.trivial = rep.projective_order == 1;
    std::vector<ConjugacyLabel> sig;
    if (rep.trivial) {
      sig.push_back(label);
    } else {
      Mat3 x = m;
      for (int k = 1; k < rep.projective_order; ++k) {
        if (std::gcd(k, rep.projective_order) == 1) sig.push_back(projective_label(field, x));
        x = mat_mul(field, x, m);
      }
    }
    std::sort(sig.begin(), sig.end());
    sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
    rep.signature = std::move(sig);
    classes.push_back(std::move(rep));
  }
  std::sort(classes.begin(), classes.end(), [](const ConjClassRep& a, const ConjClassRep& b) {
    if (a.projective_order != b.projective_order) return a.projective_order < b.projective_order;
    return a.signature < b.signature;
  });
  std::map<std::vector<ConjugacyLabel>, int> subgroup_ids;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    classes[i].id = static_cast<int>(i);
    const auto [it, inserted] =
        subgroup_ids.emplace(classes[i].signature, static_cast<int>(subgroup_ids.size()));
    classes[i].subgroup_id = it->second;
  }
  return classes;
}

int count_subgroup_classes(const std::vector<ConjClassRep>& classes) {
  int count = 0;
  for (const auto& c : classes) count = std::max(count, c.subgroup_id + 1);
  return count;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::RigidOrNonexistent: return "RigidOrNonexistent";
    case Verdict::RigidOrListedGroups: return "RigidOrListedGroups";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

}  // namespace pgarcs
