#include "pgarcs/group.hpp"

#include <algorithm>
#include <sstream>

#include "pgarcs/error.hpp"

namespace pgarcs {

Mat3 mat_identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

Mat3 mat_mul(const Field& field, const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Element s = 0;
      for (int k = 0; k < 3; ++k) s = field.add_raw(s, field.mul_raw(a[3 * i + k], b[3 * k + j]));
      c[3 * i + j] = s;
    }
  }
  return c;
}

namespace {

// Signed 2x2 minor helper: a*d - b*c.
Element cross(const Field& f, Element a, Element b, Element c, Element d) {
  return f.add_raw(f.mul_raw(a, d), f.neg_raw(f.mul_raw(b, c)));
}

void check_codes(const Field& field, const Mat3& m) {
  for (Element x : m) {
    if (!field.valid(x)) throw DomainError("matrix entry " + std::to_string(x) + " out of range");
  }
}

}  // namespace

Element mat_det(const Field& field, const Mat3& m) {
  check_codes(field, m);
  const Element c0 = cross(field, m[4], m[5], m[7], m[8]);
  const Element c1 = cross(field, m[3], m[5], m[6], m[8]);
  const Element c2 = cross(field, m[3], m[4], m[6], m[7]);
  Element d = field.mul_raw(m[0], c0);
  d = field.add_raw(d, field.neg_raw(field.mul_raw(m[1], c1)));
  return field.add_raw(d, field.mul_raw(m[2], c2));
}

Mat3 mat_inverse(const Field& field, const Mat3& m) {
  const Element det = mat_det(field, m);
  if (det == 0) throw DomainError("matrix is singular");
  const Element s = field.inv_raw(det);
  // Adjugate: inv[i][j] = cofactor[j][i] / det.
  Mat3 adj{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[3 * i + j] = cross(field, m[3 * r0 + c0], m[3 * r0 + c1], m[3 * r1 + c0], m[3 * r1 + c1]);
    }
  }
  return mat_scale(field, adj, s);
}

Mat3 mat_transpose(const Mat3& m) { return {m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}; }

Mat3 mat_scale(const Field& field, const Mat3& m, Element s) {
  Mat3 r{};
  for (int k = 0; k < 9; ++k) r[k] = field.mul_raw(m[k], s);
  return r;
}

Triple mat_apply(const Field& field, const Mat3& m, const Triple& v) {
  Triple r{};
  for (int i = 0; i < 3; ++i) {
    Element s = 0;
    for (int k = 0; k < 3; ++k) s = field.add_raw(s, field.mul_raw(m[3 * i + k], v[k]));
    r[i] = s;
  }
  return r;
}

Mat3 mat_frobenius(const Field& field, const Mat3& m, int k) {
  if (k % field.e() == 0) return m;
  Mat3 r{};
  for (int i = 0; i < 9; ++i) r[i] = field.frobenius(m[i], k);
  return r;
}

Mat3 mat_normalize(const Field& field, const Mat3& m) {
  for (Element x : m) {
    if (x != 0) return mat_scale(field, m, field.inv_raw(x));
  }
  throw DomainError("zero matrix");
}

bool mat_is_scalar(const Mat3& m) {
  return m[1] == 0 && m[2] == 0 && m[3] == 0 && m[5] == 0 && m[6] == 0 && m[7] == 0 && m[0] == m[4] &&
         m[4] == m[8];
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::size_t h = static_cast<std::size_t>(g.frob) * 0x9e3779b97f4a7c15ULL;
  for (Element x : g.mat) h = (h ^ x) * 0x100000001b3ULL;
  return h;
}

GroupElement make_element(const Field& field, const Mat3& mat, int frob) {
  if (frob < 0 || frob >= field.e()) throw DomainError("frobenius exponent out of range");
  if (mat_det(field, mat) == 0) throw DomainError("generator matrix is not invertible");
  return GroupElement{mat_normalize(field, mat), frob};
}

GroupElement identity_element() { return GroupElement{}; }

GroupElement compose(const Field& field, const GroupElement& a, const GroupElement& b) {
  // a(b(x)) = A phi^fa(B phi^fb(x)) = A phi^fa(B) phi^(fa+fb)(x)
  const Mat3 m = mat_mul(field, a.mat, mat_frobenius(field, b.mat, a.frob));
  return GroupElement{mat_normalize(field, m), (a.frob + b.frob) % field.e()};
}

GroupElement inverse(const Field& field, const GroupElement& g) {
  // x = phi^-f(M^-1 y) = phi^-f(M^-1) phi^-f(y)
  const int back = (field.e() - g.frob) % field.e();
  const Mat3 m = mat_frobenius(field, mat_inverse(field, g.mat), back);
  return GroupElement{mat_normalize(field, m), back};
}

GroupElement power(const Field& field, const GroupElement& g, long long k) {
  GroupElement base = k < 0 ? inverse(field, g) : g;
  unsigned long long n = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
  GroupElement result = identity_element();
  while (n > 0) {
    if (n & 1U) result = compose(field, result, base);
    base = compose(field, base, base);
    n >>= 1U;
  }
  return result;
}

GroupElement transpose(const Field& field, const GroupElement& g) {
  return GroupElement{mat_normalize(field, mat_transpose(g.mat)), g.frob};
}

namespace {

Triple frob_vec(const Field& field, const Triple& v, int k) {
  if (k == 0) return v;
  return {field.frobenius(v[0], k), field.frobenius(v[1], k), field.frobenius(v[2], k)};
}

// Matrix acting on dual coordinates: the inverse transpose.
Mat3 dual_matrix(const Field& field, const GroupElement& g) { return mat_transpose(mat_inverse(field, g.mat)); }

}  // namespace

Point apply_to_point(const Field& field, const GroupElement& g, const Point& p) {
  return Point{normalize(field, mat_apply(field, g.mat, frob_vec(field, p.coords, g.frob)))};
}

Line apply_to_line(const Field& field, const GroupElement& g, const Line& l) {
  return Line{normalize(field, mat_apply(field, dual_matrix(field, g), frob_vec(field, l.dual, g.frob)))};
}

std::vector<int> point_permutation(const Plane& plane, const GroupElement& g) {
  const Field& field = plane.field();
  std::vector<int> perm(plane.size());
  for (int i = 0; i < plane.size(); ++i) {
    perm[i] = plane.point_index(mat_apply(field, g.mat, frob_vec(field, plane.point(i).coords, g.frob)));
  }
  return perm;
}

std::vector<int> line_permutation(const Plane& plane, const GroupElement& g) {
  const Field& field = plane.field();
  const Mat3 dm = dual_matrix(field, g);
  std::vector<int> perm(plane.size());
  for (int i = 0; i < plane.size(); ++i) {
    perm[i] = plane.line_index(mat_apply(field, dm, frob_vec(field, plane.line(i).dual, g.frob)));
  }
  return perm;
}

Group::Group(Field field, std::vector<GroupElement> generators, std::vector<GroupElement> elements)
    : field_(std::move(field)), generators_(std::move(generators)), elements_(std::move(elements)) {
  index_.insert(elements_.begin(), elements_.end());
}

Group Group::closure(const Field& field, std::vector<GroupElement> generators, std::size_t cap) {
  for (auto& g : generators) g = make_element(field, g.mat, g.frob);
  std::vector<GroupElement> elements{identity_element()};
  std::unordered_set<GroupElement, GroupElementHash> seen{identity_element()};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& gen : generators) {
      GroupElement next = compose(field, gen, elements[head]);
      if (seen.insert(next).second) {
        if (elements.size() >= cap) {
          throw BudgetError("group closure exceeds cap of " + std::to_string(cap) + " elements");
        }
        elements.push_back(next);
      }
    }
  }
  return Group(field, std::move(generators), std::move(elements));
}

Group conjugate_group(const Field& field, const GroupElement& alpha, const Group& group) {
  const GroupElement a = make_element(field, alpha.mat, alpha.frob);
  const GroupElement a_inv = inverse(field, a);
  auto conj = [&](const GroupElement& b) { return compose(field, compose(field, a, b), a_inv); };
  std::vector<GroupElement> gens;
  gens.reserve(group.generators().size());
  for (const auto& g : group.generators()) gens.push_back(conj(g));
  std::vector<GroupElement> elems;
  elems.reserve(group.order());
  for (const auto& g : group.elements()) elems.push_back(conj(g));
  return Group(field, std::move(gens), std::move(elems));
}

namespace {

void collect_orbits(int n, const std::vector<std::vector<int>>& perms, std::vector<std::vector<int>>& orbits_out,
                    std::vector<int>& rep, std::vector<int>& len, std::vector<int>& orbit_of) {
  orbit_of.assign(n, -1);
  std::vector<int> stack;
  for (int start = 0; start < n; ++start) {
    if (orbit_of[start] >= 0) continue;
    const int id = static_cast<int>(orbits_out.size());
    std::vector<int> members{start};
    orbit_of[start] = id;
    stack.assign(1, start);
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (const auto& perm : perms) {
        const int y = perm[x];
        if (orbit_of[y] < 0) {
          orbit_of[y] = id;
          members.push_back(y);
          stack.push_back(y);
        }
      }
    }
    std::sort(members.begin(), members.end());
    rep.push_back(members.front());
    len.push_back(static_cast<int>(members.size()));
    orbits_out.push_back(std::move(members));
  }
}

}  // namespace

OrbitData orbits(const Plane& plane, const Group& group) {
  if (!(plane.field().spec() == group.field().spec())) throw DomainError("orbits: group and plane fields differ");
  std::vector<std::vector<int>> ppoints;
  std::vector<std::vector<int>> plines;
  for (const auto& g : group.generators()) {
    ppoints.push_back(point_permutation(plane, g));
    plines.push_back(line_permutation(plane, g));
  }
  OrbitData data;
  collect_orbits(plane.size(), ppoints, data.point_orbits, data.point_rep, data.w, data.point_orbit_of);
  collect_orbits(plane.size(), plines, data.line_orbits, data.line_rep, data.line_w, data.line_orbit_of);
  data.ell = static_cast<int>(data.point_orbits.size());
  return data;
}

std::vector<GroupElement> parse_generators(const Field& field, const std::string& text, std::size_t first_line) {
  std::vector<GroupElement> gens;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = first_line - 1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::string tok;
    Mat3 mat{};
    int count = 0;
    int frob = 0;
    while (tokens >> tok) {
      if (tok.rfind("frob=", 0) == 0) {
        try {
          frob = std::stoi(tok.substr(5));
        } catch (const std::exception&) {
          throw ParseError(lineno, "bad frob value '" + tok + "'");
        }
        continue;
      }
      if (count >= 9) throw ParseError(lineno, "more than nine matrix entries");
      int v = 0;
      try {
        std::size_t used = 0;
        v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad matrix entry '" + tok + "'");
      }
      if (!field.valid(v)) throw ParseError(lineno, "matrix entry " + tok + " out of range");
      mat[count++] = static_cast<Element>(v);
    }
    if (count != 9) throw ParseError(lineno, "expected nine matrix entries, got " + std::to_string(count));
    try {
      gens.push_back(make_element(field, mat, frob));
    } catch (const DomainError& err) {
      throw ParseError(lineno, err.what());
    }
  }
  return gens;
}

std::string format_generators(const std::vector<GroupElement>& generators) {
  std::ostringstream out;
  for (const auto& g : generators) {
    for (int k = 0; k < 9; ++k) out << (k ? " " : "") << g.mat[k];
    if (g.frob != 0) out << " frob=" << g.frob;
    out << '\n';
  }
  return out.str();
}

std::vector<GroupElement> s3_generators(const Field& field) {
  return {make_element(field, {0, 1, 0, 0, 0, 1, 1, 0, 0}), make_element(field, {0, 1, 0, 1, 0, 0, 0, 0, 1})};
}

}  // namespace pgarcs
