#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "pgarcs/arcs.hpp"
#include "pgarcs/condense.hpp"
#include "pgarcs/group.hpp"
#include "pgarcs/solver.hpp"

namespace testing {

using namespace pgarcs;

struct CorpusEntry {
  std::string file;
  int q;
  int r;
  int n;
  bool s3;
};

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries{
      {"q16_r10_n144.arc", 16, 10, 144, true},  {"q25_r3_n39.arc", 25, 3, 39, false},
      {"q25_r18_n418.arc", 25, 18, 418, false}, {"q27_r9_n201.arc", 27, 9, 201, false},
      {"q29_r14_n364.arc", 29, 14, 364, false}, {"q29_r25_n697.arc", 29, 25, 697, true},
      {"q31_r25_n734.arc", 31, 25, 734, false},
  };
  return entries;
}

inline std::string data_path(const std::string& rel) { return std::string(PGARCS_DATA_DIR) + "/" + rel; }
inline std::string corpus_path(const std::string& file) { return data_path("corpus/" + file); }

inline Mat3 random_invertible(const Field& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> code(0, f.q() - 1);
  for (;;) {
    Mat3 m;
    for (auto& v : m) v = static_cast<Element>(code(rng));
    if (mat_det(f, m) != 0) return m;
  }
}

inline GroupElement random_element(const Field& f, std::mt19937_64& rng) {
  return make_element(f, random_invertible(f, rng));
}

// Full-plane model built straight from the incidence matrix.
inline IlpModel full_plane_model(const Plane& plane, int r) {
  const auto inc = incidence_matrix(plane);
  IlpModel m;
  const auto n = static_cast<std::size_t>(plane.size());
  m.A = DenseMatrix<int>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.A(i, j) = inc(i, j);
  m.w.assign(n, 1);
  m.rhs.assign(n, r);
  return m;
}

inline IlpModel condensed_model(const Plane& plane, const std::vector<GroupElement>& gens, int r) {
  const Group g = Group::closure(plane.field(), gens);
  return make_model(condense(plane, orbits(plane, g), r));
}

// Naive enumeration, independent of the Gray-code oracle.
inline long long brute_max(const IlpModel& m, const PartialAssignment& fixed = {}) {
  const std::size_t n = m.cols();
  std::vector<std::size_t> free_vars;
  std::vector<std::uint8_t> x(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (fixed.empty() || fixed[j] < 0) free_vars.push_back(j);
    else x[j] = static_cast<std::uint8_t>(fixed[j]);
  }
  long long best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_vars.size()); ++mask) {
    for (std::size_t k = 0; k < free_vars.size(); ++k) x[free_vars[k]] = (mask >> k) & 1;
    bool ok = true;
    for (std::size_t i = 0; i < m.rows() && ok; ++i) {
      long long s = 0;
      for (std::size_t j = 0; j < n; ++j) s += m.A(i, j) * x[j];
      ok = s <= m.rhs[i];
    }
    if (!ok) continue;
    long long v = 0;
    for (std::size_t j = 0; j < n; ++j) v += m.w[j] * x[j];
    best = std::max(best, v);
  }
  return best;
}

// Largest number of set points on any line, counted from point coordinates.
inline int observed_r(const Plane& plane, const std::vector<int>& pts) {
  const Field& f = plane.field();
  int best = 0;
  for (const Line& l : plane.lines()) {
    int c = 0;
    for (int p : pts) c += incident(f, l, plane.point(p));
    best = std::max(best, c);
  }
  return best;
}

}  // namespace testing
