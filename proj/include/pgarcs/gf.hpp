#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pgarcs {

/// Field element in the integer encoding sum a_i p^i of the polynomial sum a_i x^i.
using Element = std::uint16_t;

/// Largest field order the table-driven arithmetic accepts.
inline constexpr int kMaxFieldOrder = 1024;

struct FieldSpec {
  int p = 2;
  int e = 1;
  /// Coefficients a_0 ... a_e, low degree first. For e = 1 this is {0, 1}.
  std::vector<int> poly{0, 1};

  int order() const;
  bool operator==(const FieldSpec&) const = default;
};

bool is_prime(long long n);

/// Irreducibility of a monic polynomial over GF(p) by trial division with every
/// monic polynomial of degree <= deg/2. Throws DomainError if not monic.
bool is_irreducible(int p, const std::vector<int>& poly);

/// Lexicographically first monic irreducible polynomial of degree e over GF(p).
std::vector<int> first_irreducible(int p, int e);

/// Field spec for q. Prime q uses GF(p) directly; 16, 25 and 27 use
/// x^4+x^3+1, x^2+x+2 and x^3+2x+1; other prime powers use first_irreducible.
FieldSpec default_field_spec(int q);

/// Text form `p=<p> e=<e> poly=<a0>,...,<ae>` (poly omitted for e = 1).
std::string to_string(const FieldSpec& spec);
FieldSpec parse_field_spec(const std::string& text);

/// Table-driven GF(p^e). Immutable after construction.
class Field {
 public:
  explicit Field(FieldSpec spec);
  explicit Field(int q) : Field(default_field_spec(q)) {}

  const FieldSpec& spec() const noexcept { return spec_; }
  int p() const noexcept { return spec_.p; }
  int e() const noexcept { return spec_.e; }
  int q() const noexcept { return q_; }

  bool valid(int code) const noexcept { return code >= 0 && code < q_; }

  // The checked operations throw DomainError for codes outside [0, q).
  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  /// Throws DomainError for a = 0.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, long long k) const;
  /// a^(p^k).
  Element frobenius(Element a, int k) const;

  // Unchecked variants for inner loops over already validated data.
  Element add_raw(Element a, Element b) const noexcept { return add_[a * q_ + b]; }
  Element mul_raw(Element a, Element b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Element neg_raw(Element a) const noexcept { return neg_[a]; }
  Element inv_raw(Element a) const noexcept { return exp_[(q_ - 1 - log_[a]) % (q_ - 1)]; }

  std::vector<int> digits(Element a) const;
  Element from_digits(const std::vector<int>& digits) const;

  /// Generator of the multiplicative group used for the log tables.
  Element primitive() const noexcept { return primitive_; }

 private:
  void check(Element a) const;

  FieldSpec spec_;
  int q_;
  Element primitive_ = 1;
  std::vector<Element> add_;
  std::vector<Element> neg_;
  std::vector<int> log_;
  std::vector<Element> exp_;
};

}  // namespace pgarcs
