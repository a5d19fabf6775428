#include "pgarcs/gf.hpp"

#include <sstream>

#include "pgarcs/error.hpp"

namespace pgarcs {

namespace {

using Poly = std::vector<int>;  // low degree first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a modulo the monic polynomial m over GF(p).
Poly poly_mod(Poly a, const Poly& m, int p) {
  const std::size_t dm = m.size() - 1;
  trim(a);
  while (a.size() > dm) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = ((a[shift + i] - lead * m[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

Poly decode(int code, int p, int e) {
  Poly d(static_cast<std::size_t>(e));
  for (int i = 0; i < e; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

int encode(const Poly& d, int p) {
  int code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
  return code;
}

int ipow(int b, int k) {
  int r = 1;
  while (k-- > 0) r *= b;
  return r;
}

}  // namespace

int FieldSpec::order() const { return ipow(p, e); }

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(int p, const std::vector<int>& poly) {
  if (!is_prime(p)) throw DomainError("is_irreducible: p = " + std::to_string(p) + " is not prime");
  if (poly.size() < 2) throw DomainError("is_irreducible: degree must be at least 1");
  for (int c : poly) {
    if (c < 0 || c >= p) throw DomainError("is_irreducible: coefficient out of range");
  }
  if (poly.back() != 1) throw DomainError("is_irreducible: polynomial is not monic");
  const int deg = static_cast<int>(poly.size()) - 1;
  if (deg == 1) return true;
  // Every reducible polynomial has a monic factor of degree <= deg/2.
  for (int d = 1; d <= deg / 2; ++d) {
    const int count = ipow(p, d);
    for (int low = 0; low < count; ++low) {
      Poly divisor = decode(low, p, d);
      divisor.push_back(1);
      if (poly_mod(poly, divisor, p).empty()) return false;
    }
  }
  return true;
}

std::vector<int> first_irreducible(int p, int e) {
  if (e == 1) return {0, 1};
  const int count = ipow(p, e);
  for (int low = 0; low < count; ++low) {
    Poly f = decode(low, p, e);
    f.push_back(1);
    if (is_irreducible(p, f)) return f;
  }
  throw DomainError("no irreducible polynomial found");  // unreachable for prime p
}

FieldSpec default_field_spec(int q) {
  if (q < 2 || q > kMaxFieldOrder) throw DomainError("field order " + std::to_string(q) + " out of range");
  int p = 0;
  for (int d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  int e = 0;
  int rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw DomainError(std::to_string(q) + " is not a prime power");
  FieldSpec spec;
  spec.p = p;
  spec.e = e;
  switch (q) {
    case 16: spec.poly = {1, 0, 0, 1, 1}; break;
    case 25: spec.poly = {2, 1, 1}; break;
    case 27: spec.poly = {1, 2, 0, 1}; break;
    default: spec.poly = first_irreducible(p, e); break;
  }
  return spec;
}

std::string to_string(const FieldSpec& spec) {
  std::ostringstream out;
  out << "p=" << spec.p << " e=" << spec.e;
  if (spec.e > 1) {
    out << " poly=";
    for (std::size_t i = 0; i < spec.poly.size(); ++i) out << (i ? "," : "") << spec.poly[i];
  }
  return out.str();
}

FieldSpec parse_field_spec(const std::string& text) {
  std::istringstream in(text);
  std::string token;
  FieldSpec spec;
  bool have_p = false, have_e = false, have_poly = false;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw DomainError("field spec: expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    try {
      if (key == "p") {
        spec.p = std::stoi(value);
        have_p = true;
      } else if (key == "e") {
        spec.e = std::stoi(value);
        have_e = true;
      } else if (key == "poly") {
        spec.poly.clear();
        std::istringstream coeffs(value);
        std::string c;
        while (std::getline(coeffs, c, ',')) spec.poly.push_back(std::stoi(c));
        have_poly = true;
      } else {
        throw DomainError("field spec: unknown key '" + key + "'");
      }
    } catch (const std::logic_error& err) {
      if (dynamic_cast<const DomainError*>(&err)) throw;
      throw DomainError("field spec: bad value for '" + key + "'");
    }
  }
  if (!have_p) throw DomainError("field spec: missing p");
  if (!have_e) spec.e = 1;
  if (spec.e == 1 && !have_poly) spec.poly = {0, 1};
  if (spec.e > 1 && !have_poly) throw DomainError("field spec: missing poly for e > 1");
  return spec;
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  if (!is_prime(spec_.p)) throw DomainError("field: p = " + std::to_string(spec_.p) + " is not prime");
  if (spec_.e < 1) throw DomainError("field: exponent must be positive");
  long long order = 1;
  for (int i = 0; i < spec_.e; ++i) {
    order *= spec_.p;
    if (order > kMaxFieldOrder) throw DomainError("field: order exceeds " + std::to_string(kMaxFieldOrder));
  }
  q_ = static_cast<int>(order);
  if (spec_.e == 1) {
    spec_.poly = {0, 1};
  } else {
    if (static_cast<int>(spec_.poly.size()) != spec_.e + 1) {
      throw DomainError("field: polynomial must have e+1 coefficients");
    }
    if (!is_irreducible(spec_.p, spec_.poly)) throw DomainError("field: polynomial is reducible");
  }

  const int p = spec_.p;
  const int e = spec_.e;
  add_.resize(static_cast<std::size_t>(q_) * q_);
  neg_.resize(q_);
  for (int a = 0; a < q_; ++a) {
    const Poly da = decode(a, p, e);
    Poly dn(e);
    for (int i = 0; i < e; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = static_cast<Element>(encode(dn, p));
    for (int b = 0; b < q_; ++b) {
      const Poly db = decode(b, p, e);
      Poly ds(e);
      for (int i = 0; i < e; ++i) ds[i] = (da[i] + db[i]) % p;
      add_[a * q_ + b] = static_cast<Element>(encode(ds, p));
    }
  }

  // Find a primitive element by search using polynomial multiplication, then
  // tabulate its powers.
  const Poly modulus = spec_.e == 1 ? Poly{} : spec_.poly;
  auto mul_poly = [&](int a, int b) {
    if (e == 1) return (a * b) % p;
    Poly prod = poly_mul(decode(a, p, e), decode(b, p, e), p);
    Poly r = poly_mod(prod, modulus, p);
    r.resize(e, 0);
    return encode(r, p);
  };
  log_.assign(q_, 0);
  exp_.assign(2 * static_cast<std::size_t>(q_), 0);
  for (int g = 1; g < q_; ++g) {
    int x = 1;
    int k = 0;
    do {
      exp_[k] = static_cast<Element>(x);
      x = mul_poly(x, g);
      ++k;
    } while (x != 1 && k < q_);
    if (k == q_ - 1) {
      primitive_ = static_cast<Element>(g);
      break;
    }
  }
  for (int k = 0; k < q_ - 1; ++k) {
    log_[exp_[k]] = k;
    exp_[k + q_ - 1] = exp_[k];
  }
}

void Field::check(Element a) const {
  if (a >= q_) throw DomainError("element code " + std::to_string(a) + " out of range for GF(" + std::to_string(q_) + ")");
}

Element Field::add(Element a, Element b) const {
  check(a);
  check(b);
  return add_raw(a, b);
}

Element Field::sub(Element a, Element b) const {
  check(a);
  check(b);
  return add_raw(a, neg_[b]);
}

Element Field::neg(Element a) const {
  check(a);
  return neg_[a];
}

Element Field::mul(Element a, Element b) const {
  check(a);
  check(b);
  return mul_raw(a, b);
}

Element Field::inv(Element a) const {
  check(a);
  if (a == 0) throw DomainError("division by zero in GF(" + std::to_string(q_) + ")");
  return inv_raw(a);
}

Element Field::pow(Element a, long long k) const {
  check(a);
  if (a == 0) {
    if (k == 0) return 1;
    if (k < 0) throw DomainError("division by zero in GF(" + std::to_string(q_) + ")");
    return 0;
  }
  const long long n = q_ - 1;
  const long long idx = ((static_cast<long long>(log_[a]) * (k % n)) % n + n) % n;
  return exp_[idx];
}

Element Field::frobenius(Element a, int k) const {
  long long power = 1;
  for (int i = 0; i < ((k % e() + e()) % e()); ++i) power *= p();
  return pow(a, power);
}

std::vector<int> Field::digits(Element a) const {
  check(a);
  return decode(a, p(), e());
}

Element Field::from_digits(const std::vector<int>& digits) const {
  if (static_cast<int>(digits.size()) != e()) throw DomainError("from_digits: expected e digits");
  for (int d : digits) {
    if (d < 0 || d >= p()) throw DomainError("from_digits: digit out of range");
  }
  return static_cast<Element>(encode(digits, p()));
}

}  // namespace pgarcs
