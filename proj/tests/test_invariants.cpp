#include "sepdeg/invariants.hpp"

#include <numeric>
#include <set>

#include "doctest.h"

using namespace sepdeg;

namespace {

ModuleDescriptor jordan(std::int64_t p, int r, int n) {
  return ModuleDescriptor{JordanDesc{p, r, n}};
}

ModuleDescriptor wmod(std::int64_t p, int r, std::int64_t m, int n, std::vector<int> lambda) {
  return ModuleDescriptor{WDesc{p, r, m, n, std::move(lambda)}};
}

ModuleDescriptor klein(KleinVariant v, int m = 1, std::vector<int> lambda = {}) {
  return ModuleDescriptor{KleinDesc{v, m, std::move(lambda)}};
}

ModuleDescriptor sum(std::vector<ModuleDescriptor> parts) {
  return ModuleDescriptor{SumDesc{std::move(parts)}};
}

Polynomial var(const FieldPtr& f, int nvars, int i) { return Polynomial::variable(f, nvars, i); }

// Orbit count of degree-d monomials under variable permutations: an
// independent route to dim F[V]^G_d for permutation modules (the action
// permutes the monomial basis, so invariants are spanned by orbit sums).
std::int64_t burnside_orbit_count(const std::vector<std::vector<int>>& gens, int nvars, int d) {
  auto monoms = monomials_of_degree(nvars, d);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < monoms.size(); ++i) index[monoms[i].e] = i;
  std::vector<bool> seen(monoms.size(), false);
  std::int64_t orbits = 0;
  for (std::size_t start = 0; start < monoms.size(); ++start) {
    if (seen[start]) continue;
    ++orbits;
    std::vector<std::size_t> queue = {start};
    seen[start] = true;
    while (!queue.empty()) {
      auto cur = queue.back();
      queue.pop_back();
      for (const auto& g : gens) {
        // variable i of the image reads exponent from the preimage slot
        std::vector<int> img(static_cast<std::size_t>(nvars));
        for (int i = 0; i < nvars; ++i)
          img[static_cast<std::size_t>(g[static_cast<std::size_t>(i)])] =
              monoms[cur].e[static_cast<std::size_t>(i)];
        const std::size_t next = index.at(img);
        if (!seen[next]) {
          seen[next] = true;
          queue.push_back(next);
        }
      }
    }
  }
  return orbits;
}

}  // namespace

TEST_CASE("coaction reproduces the variable substitution rules") {
  auto f2 = Field::make(2, 1);
  auto rep = build(jordan(2, 1, 2), f2);
  auto images = coaction(rep, "sigma");
  CHECK(images[0] == var(f2, 2, 0));                  // x1 -> x1
  CHECK(images[1] == var(f2, 2, 1) + var(f2, 2, 0));  // x2 -> x2 + x1
  CHECK_THROWS_AS(coaction(rep, "alpha"), Error);

  auto trivial = build(jordan(2, 1, 1), f2);
  CHECK(coaction(trivial, "sigma")[0] == var(f2, 1, 0));

  auto f4 = Field::make(2, 2);
  const fq_t w = f4->from_coeffs({0, 1});
  auto wrep = build(wmod(2, 1, 3, 2, {0, 1}), f4);
  auto alpha_images = coaction(wrep, "alpha");
  for (int i = 0; i < 2; ++i) CHECK(alpha_images[i] == var(f4, 2, i).scaled(f4->inv(w)));
}

TEST_CASE("delta operator") {
  auto f2 = Field::make(2, 1);
  auto rep = build(jordan(2, 1, 2), f2);
  Polynomial x1 = var(f2, 2, 0), x2 = var(f2, 2, 1);
  CHECK(delta_op(rep, "sigma", x2 * x2) == x1 * x1);
  CHECK(delta_op(rep, "sigma", x1).is_zero());
  CHECK(delta_op(rep, "sigma", x2) == x1);
}

TEST_CASE("graded invariant bases, canonical form") {
  auto f2 = Field::make(2, 1);
  InvariantEngine eng(build(jordan(2, 1, 2), f2));

  const auto& d1 = eng.invariant_basis(1);
  CHECK(d1.dim() == 1);
  CHECK(d1.basis[0] == var(f2, 2, 0));

  const auto& d2 = eng.invariant_basis(2);
  CHECK(d2.ambient_dim == 3);
  REQUIRE(d2.dim() == 2);
  Polynomial x1 = var(f2, 2, 0), x2 = var(f2, 2, 1);
  CHECK(d2.basis[0] == x1 * x1);
  CHECK(d2.basis[1] == x1 * x2 + x2 * x2);

  const auto& d0 = eng.invariant_basis(0);
  CHECK(d0.dim() == 1);
  CHECK(d0.basis[0] == Polynomial::constant(f2, 2, 1));
}

TEST_CASE("the 2-dimensional type (iii) module has one linear invariant") {
  auto f2 = Field::make(2, 1);
  InvariantEngine eng(build(klein(KleinVariant::W2m, 1), f2));
  const auto& linear = eng.invariant_basis(1);
  CHECK(linear.dim() == 1);
  CHECK(linear.basis[0] == Polynomial::variable(f2, 2, 0));
}

TEST_CASE("trivial group leaves every monomial invariant") {
  auto f3 = Field::make(3, 1);
  InvariantEngine eng(build(ModuleDescriptor{PermDesc{3, {{0, 1, 2}}}}, f3));
  for (int d = 0; d <= 3; ++d) {
    const auto& basis = eng.invariant_basis(d);
    CHECK(basis.dim() == basis.ambient_dim);
  }
}

TEST_CASE("invariant dimensions match orbit counts on permutation modules") {
  std::vector<int> a3 = {1, 2, 0};
  std::vector<int> swap01 = {1, 0, 2};
  auto f3 = Field::make(3, 1);
  InvariantEngine a3eng(build(ModuleDescriptor{PermDesc{3, {a3}}}, f3));
  InvariantEngine s3eng(build(ModuleDescriptor{PermDesc{3, {a3, swap01}}}, f3));
  for (int d = 1; d <= 5; ++d) {
    CHECK(a3eng.invariant_basis(d).dim() == burnside_orbit_count({a3}, 3, d));
    CHECK(s3eng.invariant_basis(d).dim() == burnside_orbit_count({a3, swap01}, 3, d));
  }

  auto f2 = Field::make(2, 1);
  InvariantEngine kl(build(klein(KleinVariant::Regular), f2));
  std::vector<int> p1 = {1, 0, 3, 2}, p2 = {2, 3, 0, 1};
  for (int d = 1; d <= 4; ++d)
    CHECK(kl.invariant_basis(d).dim() == burnside_orbit_count({p1, p2}, 4, d));
}

TEST_CASE("invariant space by exhaustive enumeration on a tiny module") {
  auto f2 = Field::make(2, 1);
  auto rep = build(jordan(2, 1, 2), f2);
  auto images = coaction(rep, "sigma");
  const auto monoms = monomials_of_degree(2, 2);
  std::int64_t invariant_count = 0;
  for (unsigned mask = 0; mask < 8; ++mask) {
    Polynomial f(f2, 2);
    for (std::size_t i = 0; i < 3; ++i)
      if (mask & (1u << i)) f.add_term(monoms[i].e, 1);
    if (substitute_linear(f, images) == f) ++invariant_count;
  }
  InvariantEngine eng(rep);
  CHECK(invariant_count == std::int64_t{1} << eng.invariant_basis(2).dim());
}

TEST_CASE("monomial occurrence queries") {
  auto f2 = Field::make(2, 1);
  InvariantEngine v4(build(klein(KleinVariant::V2m, 2, {0}), f2));
  // y_2 is the last variable; y_2^2 never appears in a degree-2 invariant.
  CHECK_FALSE(v4.monomial_in_invariants(2, Monomial{{0, 0, 0, 2}}));

  InvariantEngine j2(build(jordan(2, 1, 2), f2));
  CHECK(j2.monomial_in_invariants(2, Monomial{{0, 2}}));
  CHECK(j2.monomial_in_invariants(1, Monomial{{1, 0}}));
  CHECK_THROWS_AS(j2.monomial_in_invariants(1, Monomial{{0, 2}}), Error);
}

TEST_CASE("epsilon searches") {
  auto f2 = Field::make(2, 1);
  InvariantEngine j3(build(jordan(2, 2, 3), f2));
  auto r = j3.epsilon({0, 0, 1});
  CHECK(r.degree_found == 4);
  CHECK(r.per_degree_dims.size() == 4);
  CHECK(r.witness.evaluate({0, 0, 1}) != 0);

  InvariantEngine j2(build(jordan(2, 1, 2), f2));
  auto r2 = j2.epsilon({0, 1});
  CHECK(r2.degree_found == 2);
  Polynomial x1 = Polynomial::variable(f2, 2, 0), x2 = Polynomial::variable(f2, 2, 1);
  CHECK(r2.witness == x1 * x2 + x2 * x2);

  InvariantEngine j1(build(jordan(2, 2, 1), f2));
  CHECK(j1.epsilon({1}).degree_found == 1);

  CHECK_THROWS_AS(j3.epsilon({0, 0, 0}), Error);
  CHECK_THROWS_AS(j3.epsilon({0, 0, 1}, 3), Error);  // NotSeparated below degree 4
}

TEST_CASE("delta and gamma values") {
  auto f2 = Field::make(2, 1);
  InvariantEngine j2(build(jordan(2, 1, 2), f2));
  CHECK(j2.delta_value() == 2);
  CHECK(j2.gamma_value() == 2);

  auto f4 = Field::make(2, 2);
  InvariantEngine w2(build(wmod(2, 1, 3, 2, {0, 1}), f4));
  CHECK(w2.delta_value() == 0);  // no nonzero fixed points
  CHECK(w2.gamma_value() == 6);

  InvariantEngine w1(build(wmod(2, 1, 3, 1, {0, 1}), f4));
  CHECK(w1.delta_value() == 0);
  CHECK(w1.gamma_value() == 3);
}

TEST_CASE("delta <= gamma <= group order on a module sample") {
  auto f2 = Field::make(2, 1);
  auto f4 = Field::make(2, 2);
  struct Case {
    ModuleDescriptor desc;
    FieldPtr field;
  };
  const std::vector<Case> cases = {
      {jordan(2, 2, 3), f2},
      {sum({jordan(2, 2, 3), jordan(2, 2, 2)}), f2},
      {klein(KleinVariant::Regular), f2},
      {klein(KleinVariant::VOdd, 1), f2},
      {wmod(2, 1, 3, 2, {0, 1}), f4},
      {sum({wmod(2, 1, 3, 2, {1}), wmod(2, 1, 3, 1, {0, 1})}), f4},
  };
  for (const auto& c : cases) {
    InvariantEngine eng(build(c.desc, c.field));
    const auto delta = eng.delta_value();
    const auto gamma = eng.gamma_value();
    CHECK(delta <= gamma);
    CHECK(gamma <= eng.group_order());
  }
}

TEST_CASE("gamma max rule on the split faithful sum") {
  auto f4 = Field::make(2, 2);
  InvariantEngine fixed_part(build(wmod(2, 1, 3, 2, {1}), f4));
  InvariantEngine scaled_part(build(wmod(2, 1, 3, 1, {0, 1}), f4));
  InvariantEngine whole(build(sum({wmod(2, 1, 3, 2, {1}), wmod(2, 1, 3, 1, {0, 1})}), f4));
  CHECK(fixed_part.gamma_value() == 2);
  CHECK(scaled_part.gamma_value() == 3);
  CHECK(whole.gamma_value() == 3);
}

TEST_CASE("point budget cap") {
  auto f2 = Field::make(2, 1);
  EngineLimits limits;
  limits.point_cap = 3;
  InvariantEngine big(build(jordan(2, 2, 4), f2), limits);
  CHECK_THROWS_AS(big.gamma_value(), Error);  // 15 projective points > 3
}

TEST_CASE("orbit products") {
  auto f2 = Field::make(2, 1);
  InvariantEngine j2(build(jordan(2, 1, 2), f2));
  Polynomial x1 = Polynomial::variable(f2, 2, 0), x2 = Polynomial::variable(f2, 2, 1);
  CHECK(j2.orbit_product(x2) == x2 * x2 + x1 * x2);
  CHECK(j2.orbit_product(x1) == x1);  // already invariant: orbit of size one

  InvariantEngine j3(build(jordan(2, 2, 3), f2));
  Polynomial x3 = Polynomial::variable(f2, 3, 2);
  Polynomial n = j3.orbit_product(x3);
  CHECK(n.degree() == 4);
  CHECK(n.is_homogeneous());
  CHECK(n.evaluate({0, 0, 1}) != 0);

  CHECK_THROWS_AS(j2.orbit_product(x1 * x2), Error);
  CHECK_THROWS_AS(j2.orbit_product(Polynomial(f2, 2)), Error);
}

TEST_CASE("degree-one zero locus") {
  auto f3 = Field::make(3, 1);
  InvariantEngine a3(build(ModuleDescriptor{PermDesc{3, {{1, 2, 0}}}}, f3));
  auto v0 = a3.v_zero();
  CHECK(v0 == std::vector<std::vector<fq_t>>{{2, 1, 0}, {2, 0, 1}});

  // V_0 is a submodule: images of basis vectors stay inside it.
  const auto& rep = a3.rep();
  MatrixFq span(f3, v0.size(), 3);
  for (std::size_t i = 0; i < v0.size(); ++i)
    for (std::size_t j = 0; j < 3; ++j) span(i, j) = v0[i][j];
  for (const auto& [label, g] : rep.generators)
    for (const auto& v : v0) {
      auto gv = g.apply(v);
      MatrixFq stacked(f3, v0.size() + 1, 3);
      for (std::size_t i = 0; i < v0.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j) stacked(i, j) = span(i, j);
      for (std::size_t j = 0; j < 3; ++j) stacked(v0.size(), j) = gv[j];
      CHECK(rank(stacked) == rank(span));
    }

  // No linear invariants: the locus is everything.
  auto f4 = Field::make(2, 2);
  InvariantEngine w1(build(wmod(2, 1, 3, 1, {0, 1}), f4));
  CHECK(w1.v_zero() == std::vector<std::vector<fq_t>>{{1}});

  // Trivial one-dimensional module: x1 is invariant, so the locus is {0}.
  auto f2 = Field::make(2, 1);
  InvariantEngine triv(build(jordan(2, 1, 1), f2));
  CHECK(triv.v_zero().empty());
}

TEST_CASE("terminal divisibility") {
  auto f2 = Field::make(2, 1);
  InvariantEngine eng(build(sum({jordan(2, 2, 3), jordan(2, 2, 2)}), f2));
  for (int d = 1; d <= 4; ++d) {
    auto report = eng.terminal_divisibility_check(d);
    CHECK(report.pass());
    if (d == 4) CHECK(report.purely_terminal > 0);
  }

  InvariantEngine triv(build(jordan(2, 1, 1), f2));
  auto r1 = triv.terminal_divisibility_check(1);
  CHECK(r1.pass());
  CHECK(r1.purely_terminal == 1);

  InvariantEngine kl(build(klein(KleinVariant::Regular), f2));
  CHECK_THROWS_AS(kl.terminal_divisibility_check(2), Error);
}

TEST_CASE("group action is contravariant on points, exhaustively") {
  auto f2 = Field::make(2, 1);
  for (const auto& desc :
       {jordan(2, 1, 2), jordan(2, 2, 3), klein(KleinVariant::V2m, 1, {0}),
        klein(KleinVariant::WOdd, 1)}) {
    auto rep = build(desc, f2);
    auto cl = close_group(rep);
    const int n = static_cast<int>(rep.dim);
    std::vector<Polynomial> polys;
    for (int d = 1; d <= 2; ++d)
      for (const auto& m : monomials_of_degree(n, d))
        polys.push_back(Polynomial::monomial(f2, m.e, 1));
    // over every element of the closure, not just the generators
    for (const auto& g : cl.elements) {
      const MatrixFq ginv = inverse(g);
      std::vector<Polynomial> images;
      for (int i = 0; i < n; ++i) {
        Polynomial img(f2, n);
        for (int j = 0; j < n; ++j) {
          std::vector<int> e(static_cast<std::size_t>(n), 0);
          e[static_cast<std::size_t>(j)] = 1;
          img.add_term(e, ginv(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
        }
        images.push_back(std::move(img));
      }
      for (const auto& f : polys) {
        Polynomial gf = substitute_linear(f, images);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          std::vector<fq_t> v(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = (mask >> i) & 1;
          CHECK(gf.evaluate(v) == f.evaluate(ginv.apply(v)));
        }
      }
    }
  }
}

TEST_CASE("restricting the group never shrinks invariants") {
  auto f2 = Field::make(2, 1);
  auto full = build(klein(KleinVariant::V2m, 2, {0}), f2);
  MatrixGroupRep restricted = full;
  restricted.generators.pop_back();
  InvariantEngine a(full), b(restricted);
  for (int d = 1; d <= 3; ++d) CHECK(b.invariant_basis(d).dim() >= a.invariant_basis(d).dim());
}

TEST_CASE("deadline aborts long searches") {
  auto f2 = Field::make(2, 1);
  InvariantEngine eng(build(jordan(2, 2, 4), f2));
  Deadline past = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  CHECK_THROWS_AS(eng.delta_value(past), Error);
}
