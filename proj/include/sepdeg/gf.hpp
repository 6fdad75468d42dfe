#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sepdeg/errors.hpp"

namespace sepdeg {

/// Packed element of F_{p^k}: the coordinate vector (c_0,...,c_{k-1}) in the
/// power basis of the modulus root, encoded as the integer sum c_i * p^i.
using fq_t = std::uint32_t;

/// Description of a finite field F_{p^k}: characteristic, extension degree,
/// and the defining monic modulus with coefficients listed constant term
/// first (length k+1). For k = 1 the modulus is the polynomial t.
struct FieldSpec {
  std::int64_t p = 2;
  int k = 1;
  std::vector<int> modulus = {0, 1};

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Exact arithmetic in F_{p^k}. Immutable after construction; all operations
/// are pure, so instances can be shared freely across threads.
///
/// Multiplication and inversion run through discrete log/exp tables built at
/// construction time; addition is carry-free digit arithmetic (XOR when
/// p = 2). Field sizes are capped at q <= 2^20.
class Field {
 public:
  /// Validates and builds a field. Throws NonPrime, BadDegree (malformed
  /// modulus), ReducibleModulus or BadParameter (q too large).
  static FieldPtr make(FieldSpec spec);

  /// Builds a field from the built-in modulus table, which covers
  /// (p,k) in {(2,1),(2,2),(3,1),(3,2),(5,1)}. Other extensions need an
  /// explicit modulus via make(FieldSpec).
  static FieldPtr make(std::int64_t p, int k);

  static FieldPtr prime_field(std::int64_t p) { return make(p, 1); }

  /// True when a built-in modulus exists for (p,k).
  static bool has_builtin_modulus(std::int64_t p, int k);

  const FieldSpec& spec() const { return spec_; }
  std::int64_t p() const { return spec_.p; }
  int k() const { return spec_.k; }
  fq_t q() const { return q_; }

  fq_t zero() const { return 0; }
  fq_t one() const { return 1; }

  fq_t add(fq_t a, fq_t b) const;
  fq_t sub(fq_t a, fq_t b) const;
  fq_t neg(fq_t a) const;
  fq_t mul(fq_t a, fq_t b) const;
  fq_t inv(fq_t a) const;  // DivisionByZero on 0
  fq_t pow(fq_t a, std::int64_t e) const;

  /// Embeds an integer via reduction mod p (prime subfield).
  fq_t from_int(std::int64_t n) const;
  /// Packs a coordinate vector (constant coordinate first, length <= k).
  fq_t from_coeffs(const std::vector<int>& coeffs) const;
  std::vector<int> coeffs(fq_t a) const;

  /// Smallest t >= 1 with a^t = 1. DivisionByZero on 0.
  std::int64_t element_order(fq_t a) const;

  /// First element of exact multiplicative order m in the canonical
  /// enumeration. NoSuchRoot when m does not divide q-1.
  fq_t root_of_unity(std::int64_t m) const;

  /// The canonical enumeration of field elements: ascending lexicographic on
  /// coordinate sequences (c_0, c_1, ..., c_{k-1}). Returns the element at
  /// position `index` in [0, q).
  fq_t canonical_element(fq_t index) const;

  /// Renders an element: plain integer for k = 1, a polynomial in `w` (the
  /// modulus root) otherwise, e.g. "w^2+2*w+1".
  std::string to_string(fq_t a) const;

  bool same_field(const Field& other) const { return spec_ == other.spec_; }

 private:
  explicit Field(FieldSpec spec);
  void build_tables();
  fq_t mul_nocache(fq_t a, fq_t b) const;  // polynomial mulmod, table-free

  FieldSpec spec_;
  fq_t q_ = 0;
  std::vector<fq_t> exp_;        // exp_[i] = g^i, i in [0, q-1)
  std::vector<std::uint32_t> log_;  // log_[v] for v != 0
};

/// Throws FieldMismatch unless both fields have identical parameters.
void require_same_field(const FieldPtr& a, const FieldPtr& b);

/// Smallest positive primitive root modulo a prime p.
std::int64_t primitive_root_mod(std::int64_t p);

/// A field element bundled with its field, with checked operator arithmetic.
struct FqElement {
  FieldPtr field;
  fq_t v = 0;

  FqElement() = default;
  FqElement(FieldPtr f, fq_t value) : field(std::move(f)), v(value) {}

  friend FqElement operator+(const FqElement& a, const FqElement& b) {
    require_same_field(a.field, b.field);
    return {a.field, a.field->add(a.v, b.v)};
  }
  friend FqElement operator-(const FqElement& a, const FqElement& b) {
    require_same_field(a.field, b.field);
    return {a.field, a.field->sub(a.v, b.v)};
  }
  friend FqElement operator*(const FqElement& a, const FqElement& b) {
    require_same_field(a.field, b.field);
    return {a.field, a.field->mul(a.v, b.v)};
  }
  friend FqElement operator/(const FqElement& a, const FqElement& b) {
    require_same_field(a.field, b.field);
    return {a.field, a.field->mul(a.v, b.field->inv(b.v))};
  }
  friend bool operator==(const FqElement& a, const FqElement& b) {
    return a.field->same_field(*b.field) && a.v == b.v;
  }

  FqElement inv() const { return {field, field->inv(v)}; }
  FqElement pow(std::int64_t e) const { return {field, field->pow(v, e)}; }
  std::int64_t order() const { return field->element_order(v); }
  std::string str() const { return field->to_string(v); }
};

}  // namespace sepdeg
