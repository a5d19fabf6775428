#include <fstream>
#include <sstream>

#include "pgarcs/arcs.hpp"
#include "pgarcs/error.hpp"

namespace pgarcs {

namespace {

int parse_int(const std::string& s, std::size_t lineno, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(lineno, "bad " + what + " '" + s + "'");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ArcFile parse_arc_file(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::optional<int> q, p, e, r;
  std::optional<std::vector<int>> poly;
  std::string group_text;
  std::size_t group_first_line = 0;
  std::size_t header_end = 0;
  bool in_group = false;
  bool saw_group = false;
  bool in_points = false;
  std::vector<std::pair<std::string, std::size_t>> tuples;

  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (in_points) {
      std::istringstream tokens(line);
      std::string tok;
      while (tokens >> tok) tuples.emplace_back(tok, lineno);
      continue;
    }
    if (in_group) {
      if (line == "group-end") {
        in_group = false;
      } else {
        group_text += raw;
        group_text += '\n';
      }
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (line == "group-begin") {
      if (saw_group) throw ParseError(lineno, "second group block");
      in_group = saw_group = true;
      group_first_line = lineno + 1;
      continue;
    }
    if (line == "points:") {
      in_points = true;
      header_end = lineno;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value header, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "q") {
      q = parse_int(value, lineno, "q");
    } else if (key == "p") {
      p = parse_int(value, lineno, "p");
    } else if (key == "e") {
      e = parse_int(value, lineno, "e");
    } else if (key == "r") {
      r = parse_int(value, lineno, "r");
    } else if (key == "poly") {
      std::vector<int> coeffs;
      std::istringstream cs(value);
      std::string c;
      while (std::getline(cs, c, ',')) coeffs.push_back(parse_int(trim(c), lineno, "polynomial coefficient"));
      poly = coeffs;
    } else {
      throw ParseError(lineno, "unknown header key '" + key + "'");
    }
  }
  if (in_group) throw ParseError(lineno, "unterminated group block");
  if (!in_points) throw ParseError(lineno, "missing 'points:' section");
  if (!q) throw ParseError(header_end, "missing q");
  if (!r) throw ParseError(header_end, "missing r");

  FieldSpec spec;
  if (!p) {
    if (!is_prime(*q)) throw ParseError(header_end, "missing p for non-prime q");
    spec.p = *q;
    spec.e = 1;
  } else {
    spec.p = *p;
    spec.e = e.value_or(1);
  }
  if (spec.e > 1) {
    if (!poly) throw ParseError(header_end, "missing poly for extension field");
    spec.poly = *poly;
  } else {
    spec.poly = {0, 1};
  }
  std::shared_ptr<const Plane> plane;
  try {
    if (!is_prime(spec.p)) throw DomainError("p is not prime");
    if (spec.order() != *q) throw DomainError("q != p^e");
    if (spec.e > 1 && (static_cast<int>(spec.poly.size()) != spec.e + 1 || !is_irreducible(spec.p, spec.poly))) {
      throw DomainError("polynomial is not a monic irreducible of degree e");
    }
    plane = std::make_shared<const Plane>(Field(spec));
  } catch (const DomainError& err) {
    throw ParseError(header_end, std::string("invalid field: ") + err.what());
  }
  if (*r < 1 || *r > *q + 1) throw ParseError(header_end, "r out of range");

  const Field& field = plane->field();
  std::vector<int> points;
  std::vector<char> seen(plane->size(), 0);
  for (const auto& [tok, ln] : tuples) {
    if (tok.size() < 7 || tok.front() != '(' || tok.back() != ')') throw ParseError(ln, "malformed tuple '" + tok + "'");
    std::istringstream parts(tok.substr(1, tok.size() - 2));
    std::string part;
    std::vector<int> v;
    while (std::getline(parts, part, ',')) v.push_back(parse_int(part, ln, "tuple entry"));
    if (v.size() != 3) throw ParseError(ln, "malformed tuple '" + tok + "'");
    Triple t{};
    for (int k = 0; k < 3; ++k) {
      if (!field.valid(v[k])) throw ParseError(ln, "tuple entry out of range in '" + tok + "'");
      t[k] = static_cast<Element>(v[k]);
    }
    const int idx = plane->point_index(t);
    if (idx < 0) throw ParseError(ln, "zero tuple is not a point");
    if (seen[idx]) throw ParseError(ln, "duplicate point '" + tok + "'");
    seen[idx] = 1;
    points.push_back(idx);
  }

  ArcFile file;
  file.spec = field.spec();
  file.arc = make_arc(plane, std::move(points), *r);
  if (saw_group) {
    file.generators = parse_generators(field, group_text, group_first_line);
    Group column = Group::closure(field, file.generators);
    if (admits_group(file.arc, column)) {
      file.group = std::move(column);
      file.convention = ActionConvention::Column;
      file.group_admitted = true;
    } else {
      std::vector<GroupElement> transposed;
      for (const auto& g : file.generators) transposed.push_back(transpose(field, g));
      Group row = Group::closure(field, transposed);
      if (admits_group(file.arc, row)) {
        file.group = std::move(row);
        file.convention = ActionConvention::Transposed;
        file.group_admitted = true;
      } else {
        file.group = std::move(column);
        file.convention = ActionConvention::Column;
        file.group_admitted = false;
      }
    }
  }
  return file;
}

ArcFile load_arc_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_arc_file(buf.str());
}

std::string format_arc_file(const Arc& arc, const std::vector<GroupElement>& generators) {
  const FieldSpec& spec = arc.plane->field().spec();
  std::ostringstream out;
  out << "q=" << spec.order() << '\n' << "p=" << spec.p << '\n' << "e=" << spec.e << '\n';
  if (spec.e > 1) {
    out << "poly=";
    for (std::size_t i = 0; i < spec.poly.size(); ++i) out << (i ? "," : "") << spec.poly[i];
    out << '\n';
  }
  out << "r=" << arc.r_claimed.value_or(verify_arc(arc).max_multiplicity) << '\n';
  if (!generators.empty()) out << "group-begin\n" << format_generators(generators) << "group-end\n";
  out << "points:\n";
  int col = 0;
  for (int pt : arc.points) {
    const Triple& t = arc.plane->point(pt).coords;
    out << (col ? " " : "") << '(' << t[0] << ',' << t[1] << ',' << t[2] << ')';
    if (++col == 7) {
      out << '\n';
      col = 0;
    }
  }
  if (col) out << '\n';
  return out.str();
}

}  // namespace pgarcs
