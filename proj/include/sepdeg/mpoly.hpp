#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "sepdeg/gf.hpp"

namespace sepdeg {

/// Exponent vector; length = number of variables, all entries >= 0.
struct Monomial {
  std::vector<int> e;

  int degree() const { return std::accumulate(e.begin(), e.end(), 0); }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Term order: descending lexicographic on exponent vectors. This is the
/// global contract for graded-matrix columns and text output.
struct DescLex {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const { return a > b; }
};

/// All exponent vectors of the given total degree, in descending
/// lexicographic order; the count is C(nvars+d-1, d).
std::vector<Monomial> monomials_of_degree(int nvars, int degree);

std::int64_t binomial_int(std::int64_t n, std::int64_t k);

/// Sparse multivariate polynomial over F_{p^k}. Zero coefficients are never
/// stored; terms iterate in descending lex order. Immutable value semantics
/// apart from add_term accumulation during construction.
class Polynomial {
 public:
  using TermMap = std::map<std::vector<int>, fq_t, DescLex>;

  Polynomial(FieldPtr field, int nvars);
  static Polynomial monomial(FieldPtr field, std::vector<int> exps, fq_t coeff);
  static Polynomial constant(FieldPtr field, int nvars, fq_t value);
  static Polynomial variable(FieldPtr field, int nvars, int index);

  const FieldPtr& field() const { return field_; }
  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Total degree of the highest term; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;

  fq_t coeff(const std::vector<int>& exps) const;
  void add_term(const std::vector<int>& exps, fq_t c);

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial scaled(fq_t c) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  fq_t evaluate(const std::vector<fq_t>& point) const;

  /// Rescales so the lex-greatest coefficient is 1; zero stays zero.
  Polynomial monic() const;

  /// Text form: terms joined by " + ", monomials as x1^a1*x2^a2 with
  /// exponent-1 powers and exponent-0 factors omitted; non-unit
  /// coefficients prefix the monomial (parenthesised for extension fields).
  std::string to_string() const;

 private:
  FieldPtr field_;
  int nvars_;
  TermMap terms_;
};

/// Substitutes each variable by the corresponding image, which must be
/// homogeneous of degree one or zero. Throws ArityMismatch when the image
/// count differs from f's variable count, BadParameter on non-linear images.
Polynomial substitute_linear(const Polynomial& f, const std::vector<Polynomial>& images);

}  // namespace sepdeg
