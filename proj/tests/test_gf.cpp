#include "sepdeg/gf.hpp"

#include <vector>

#include "doctest.h"

using namespace sepdeg;

namespace {

// Exhaustive multiplicative order, independent of the log-table shortcut.
std::int64_t order_by_powers(const FieldPtr& f, fq_t a) {
  fq_t cur = a;
  std::int64_t t = 1;
  while (cur != f->one()) {
    cur = f->mul(cur, a);
    ++t;
    REQUIRE(t <= f->q());
  }
  return t;
}

std::vector<FieldPtr> small_fields() {
  return {
      Field::make(2, 1),
      Field::make(2, 2),
      Field::make(3, 1),
      Field::make(3, 2),
      Field::make(5, 1),
      Field::make(FieldSpec{2, 3, {1, 1, 0, 1}}),  // F8, t^3+t+1
  };
}

}  // namespace

TEST_CASE("field construction accepts the classic small fields") {
  auto f4 = Field::make(FieldSpec{2, 2, {1, 1, 1}});
  CHECK(f4->q() == 4);
  auto f5 = Field::make(FieldSpec{5, 1, {0, 1}});
  CHECK(f5->q() == 5);
  CHECK(Field::has_builtin_modulus(3, 2));
  CHECK_FALSE(Field::has_builtin_modulus(7, 2));
}

TEST_CASE("field construction rejects bad input") {
  CHECK_THROWS_AS(Field::make(FieldSpec{4, 1, {0, 1}}), Error);
  CHECK_THROWS_AS(Field::make(FieldSpec{2, 2, {1, 0, 1}}), Error);  // t^2+1 = (t+1)^2
  CHECK_THROWS_AS(Field::make(FieldSpec{2, 2, {1, 1}}), Error);     // wrong length
  CHECK_THROWS_AS(Field::make(FieldSpec{2, 2, {1, 1, 0}}), Error);  // not monic
  CHECK_THROWS_AS(Field::make(FieldSpec{5, 1, {2, 1}}), Error);     // k=1 must be t

  try {
    Field::make(FieldSpec{2, 2, {1, 0, 1}});
    FAIL("expected ReducibleModulus");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ReducibleModulus);
  }
  try {
    Field::make(FieldSpec{9, 1, {0, 1}});
    FAIL("expected NonPrime");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonPrime);
  }
}

TEST_CASE("prime field arithmetic") {
  auto f5 = Field::make(5, 1);
  CHECK(f5->inv(3) == 2);
  CHECK(f5->mul(3, 2) == 1);
  CHECK(f5->add(4, 3) == 2);
  CHECK(f5->sub(1, 3) == 3);
  CHECK(f5->pow(2, 4) == 1);
  CHECK_THROWS_AS(f5->inv(0), Error);
}

TEST_CASE("F4 arithmetic in the power basis of t^2+t+1") {
  auto f4 = Field::make(2, 2);
  const fq_t w = f4->from_coeffs({0, 1});
  const fq_t w2 = f4->mul(w, w);
  CHECK(w2 == f4->from_coeffs({1, 1}));  // w^2 = w+1
  CHECK(f4->mul(w, w2) == f4->one());    // w^3 = 1
  const fq_t a = f4->add(f4->one(), w);  // 1+w
  CHECK(f4->mul(a, a) == w);             // (1+w)^2 = w
}

TEST_CASE("element orders match exhaustive powers") {
  auto f4 = Field::make(2, 2);
  const fq_t w = f4->from_coeffs({0, 1});
  CHECK(f4->element_order(f4->one()) == 1);
  CHECK(f4->element_order(w) == 3);
  auto f5 = Field::make(5, 1);
  CHECK(f5->element_order(2) == 4);

  for (const auto& f : small_fields())
    for (fq_t a = 1; a < f->q(); ++a) CHECK(f->element_order(a) == order_by_powers(f, a));
}

TEST_CASE("roots of unity follow the canonical enumeration") {
  auto f4 = Field::make(2, 2);
  CHECK(f4->root_of_unity(3) == f4->from_coeffs({0, 1}));
  CHECK(f4->element_order(f4->root_of_unity(3)) == 3);
  auto f2 = Field::make(2, 1);
  CHECK(f2->root_of_unity(1) == 1);
  CHECK_THROWS_AS(f4->root_of_unity(2), Error);

  for (const auto& f : small_fields()) {
    for (std::int64_t m = 1; m < static_cast<std::int64_t>(f->q()); ++m) {
      if ((f->q() - 1) % m != 0) continue;
      CHECK(f->element_order(f->root_of_unity(m)) == m);
    }
  }
}

TEST_CASE("canonical enumeration is ascending lex on coordinate sequences") {
  auto f4 = Field::make(2, 2);
  std::vector<std::vector<int>> seen;
  for (fq_t i = 0; i < f4->q(); ++i) seen.push_back(f4->coeffs(f4->canonical_element(i)));
  CHECK(seen == std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  for (const auto& f : small_fields())
    for (fq_t i = 1; i < f->q(); ++i)
      CHECK(f->coeffs(f->canonical_element(i - 1)) < f->coeffs(f->canonical_element(i)));
}

TEST_CASE("field axioms hold exhaustively for q <= 16") {
  for (const auto& f : small_fields()) {
    const fq_t q = f->q();
    REQUIRE(q <= 16);
    for (fq_t a = 0; a < q; ++a) {
      if (a != 0) {
        CHECK(f->pow(a, q - 1) == f->one());       // Lagrange
        CHECK(f->mul(f->inv(a), a) == f->one());   // inverses
      }
      for (fq_t b = 0; b < q; ++b) {
        // Frobenius is additive in characteristic p.
        CHECK(f->pow(f->add(a, b), f->p()) == f->add(f->pow(a, f->p()), f->pow(b, f->p())));
        CHECK(f->add(a, b) == f->add(b, a));
        CHECK(f->mul(a, b) == f->mul(b, a));
        for (fq_t c = 0; c < q; ++c)
          CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
      }
    }
  }
}

TEST_CASE("FqElement operators enforce matching fields") {
  auto f4 = Field::make(2, 2);
  auto f2 = Field::make(2, 1);
  FqElement w{f4, f4->from_coeffs({0, 1})};
  FqElement one2{f2, 1};
  CHECK((w * w * w) == FqElement{f4, 1});
  CHECK(w.order() == 3);
  CHECK_THROWS_AS(w + one2, Error);
  CHECK(w.str() == "w");
  CHECK((w * w).str() == "w+1");
}

TEST_CASE("element rendering") {
  auto f9 = Field::make(3, 2);
  CHECK(f9->to_string(0) == "0");
  CHECK(f9->to_string(f9->from_coeffs({2, 0})) == "2");
  CHECK(f9->to_string(f9->from_coeffs({1, 2})) == "2*w+1");
  auto f3 = Field::make(3, 1);
  CHECK(f3->to_string(2) == "2");
}

TEST_CASE("primitive roots modulo p") {
  CHECK(primitive_root_mod(2) == 1);
  CHECK(primitive_root_mod(3) == 2);
  CHECK(primitive_root_mod(5) == 2);
  CHECK(primitive_root_mod(7) == 3);
}
