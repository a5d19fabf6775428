#include "pgarcs/condense.hpp"

#include <algorithm>
#include <sstream>

#include "pgarcs/error.hpp"

namespace pgarcs {

CondensedSystem condense(const Plane& plane, const OrbitData& orbits, int r) {
  if (r < 1 || r > plane.q() + 1) {
    throw DomainError("condense: r = " + std::to_string(r) + " outside [1, " + std::to_string(plane.q() + 1) + "]");
  }
  CondensedSystem sys;
  sys.ell = orbits.ell;
  sys.A = DenseMatrix<int>(orbits.ell, orbits.ell, 0);
  sys.w = orbits.w;
  sys.line_w = orbits.line_w;
  sys.r = r;
  sys.q = plane.q();
  for (int i = 0; i < orbits.ell; ++i) {
    for (int pt : plane.points_on(orbits.line_rep[i])) ++sys.A(i, orbits.point_orbit_of[pt]);
  }
  return sys;
}

DenseMatrix<int> dual_condense(const Plane& plane, const OrbitData& orbits) {
  DenseMatrix<int> d(orbits.ell, orbits.ell, 0);
  for (int j = 0; j < orbits.ell; ++j) {
    for (int ln : plane.lines_through(orbits.point_rep[j])) ++d(j, orbits.line_orbit_of[ln]);
  }
  return d;
}

std::vector<int> expand_solution(const OrbitData& orbits, const std::vector<std::uint8_t>& x) {
  if (static_cast<int>(x.size()) != orbits.ell) {
    throw DomainError("expand_solution: vector length " + std::to_string(x.size()) + " != ell " +
                      std::to_string(orbits.ell));
  }
  std::vector<int> points;
  for (int j = 0; j < orbits.ell; ++j) {
    if (x[j]) points.insert(points.end(), orbits.point_orbits[j].begin(), orbits.point_orbits[j].end());
  }
  std::sort(points.begin(), points.end());
  return points;
}

std::vector<std::uint8_t> compress_arc(const OrbitData& orbits, const std::vector<int>& points) {
  std::vector<int> hits(orbits.ell, 0);
  const int n = static_cast<int>(orbits.point_orbit_of.size());
  for (int pt : points) {
    if (pt < 0 || pt >= n) throw DomainError("compress_arc: point index out of range");
    ++hits[orbits.point_orbit_of[pt]];
  }
  std::vector<std::uint8_t> x(orbits.ell, 0);
  for (int j = 0; j < orbits.ell; ++j) {
    if (hits[j] == 0) continue;
    if (hits[j] != orbits.w[j]) {
      throw NotAdmittedError("point set meets orbit " + std::to_string(j) + " (length " + std::to_string(orbits.w[j]) +
                             ") in " + std::to_string(hits[j]) + " points; the group is not a group of automorphisms");
    }
    x[j] = 1;
  }
  return x;
}

std::string format_condensed(const CondensedSystem& system) {
  std::ostringstream out;
  out << "ell=" << system.ell << " q=" << system.q << " r=" << system.r << '\n';
  out << "w:";
  for (int v : system.w) out << ' ' << v;
  out << '\n';
  for (int i = 0; i < system.ell; ++i) {
    for (int j = 0; j < system.ell; ++j) out << (j ? " " : "") << system.A(i, j);
    out << '\n';
  }
  return out.str();
}

CondensedSystem parse_condensed(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  CondensedSystem sys;
  if (!next_line()) throw ParseError(lineno + 1, "missing header");
  {
    std::istringstream hdr(line);
    std::string tok;
    int seen = 0;
    while (hdr >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw ParseError(lineno, "bad header token '" + tok + "'");
      const std::string key = tok.substr(0, eq);
      int value = 0;
      try {
        value = std::stoi(tok.substr(eq + 1));
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad header value '" + tok + "'");
      }
      if (key == "ell") sys.ell = value, seen |= 1;
      else if (key == "q") sys.q = value, seen |= 2;
      else if (key == "r") sys.r = value, seen |= 4;
      else throw ParseError(lineno, "unknown header key '" + key + "'");
    }
    if (seen != 7) throw ParseError(lineno, "header needs ell, q and r");
    if (sys.ell < 0) throw ParseError(lineno, "negative ell");
  }
  if (!next_line() || line.rfind("w:", 0) != 0) throw ParseError(lineno, "expected 'w:' line");
  {
    std::istringstream ws(line.substr(2));
    int v = 0;
    while (ws >> v) sys.w.push_back(v);
    if (static_cast<int>(sys.w.size()) != sys.ell) throw ParseError(lineno, "w has wrong length");
  }
  sys.A = DenseMatrix<int>(sys.ell, sys.ell, 0);
  for (int i = 0; i < sys.ell; ++i) {
    if (!next_line()) throw ParseError(lineno + 1, "missing matrix row " + std::to_string(i));
    std::istringstream row(line);
    int count = 0;
    int v = 0;
    while (row >> v) {
      if (count >= sys.ell) throw ParseError(lineno, "matrix row too long");
      if (v < 0) throw ParseError(lineno, "negative matrix entry");
      sys.A(i, count++) = v;
    }
    if (count != sys.ell) throw ParseError(lineno, "matrix row too short");
  }
  sys.provenance = "file";
  return sys;
}

}  // namespace pgarcs
