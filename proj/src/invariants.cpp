#include "sepdeg/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace sepdeg {

namespace {

void check_deadline(const Deadline& deadline) {
  if (deadline && std::chrono::steady_clock::now() > *deadline)
    fail(Errc::BudgetExceeded, "computation exceeded its time budget");
}

std::vector<Polynomial> coaction_from_matrix(const FieldPtr& field, const MatrixFq& a) {
  const MatrixFq ainv = inverse(a);
  const int n = static_cast<int>(a.rows());
  std::vector<Polynomial> images;
  images.reserve(a.rows());
  for (int i = 0; i < n; ++i) {
    Polynomial img(field, n);
    for (int j = 0; j < n; ++j) {
      std::vector<int> e(n, 0);
      e[j] = 1;
      img.add_term(e, ainv(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    }
    images.push_back(std::move(img));
  }
  return images;
}

// Walks the degree-d monomials in descending lex order, carrying partial
// products of image powers, and hands each fully substituted column to sink.
void for_each_column(const FieldPtr& field, const std::vector<Polynomial>& images, int degree,
                     const std::function<void(std::size_t, const Polynomial&)>& sink) {
  const int n = static_cast<int>(images.size());
  std::vector<std::vector<Polynomial>> pw(images.size());
  auto power = [&](int i, int a) -> const Polynomial& {
    auto& slot = pw[static_cast<std::size_t>(i)];
    if (slot.empty()) slot.push_back(Polynomial::constant(field, n, 1));
    while (static_cast<int>(slot.size()) <= a)
      slot.push_back(slot.back() * images[static_cast<std::size_t>(i)]);
    return slot[static_cast<std::size_t>(a)];
  };
  std::size_t col = 0;
  std::function<void(int, int, const Polynomial&)> rec = [&](int var, int rem,
                                                             const Polynomial& partial) {
    if (var == n - 1) {
      if (rem == 0) {
        sink(col++, partial);
      } else {
        sink(col++, partial * power(var, rem));
      }
      return;
    }
    for (int a = rem; a >= 0; --a)
      rec(var + 1, rem - a, a == 0 ? partial : partial * power(var, a));
  };
  rec(0, degree, Polynomial::constant(field, n, 1));
}

}  // namespace

std::vector<Polynomial> coaction(const MatrixGroupRep& rep, const std::string& label) {
  return coaction_from_matrix(rep.field, rep.generator(label));
}

Polynomial group_action(const MatrixGroupRep& rep, const std::string& label, const Polynomial& f) {
  return substitute_linear(f, coaction(rep, label));
}

Polynomial delta_op(const MatrixGroupRep& rep, const std::string& label, const Polynomial& f) {
  return group_action(rep, label, f) - f;
}

MatrixFq graded_action_matrix(const MatrixGroupRep& rep, const std::string& label, int degree) {
  check(degree >= 0, Errc::BadParameter, "degree must be >= 0");
  const int n = static_cast<int>(rep.dim);
  const auto monoms = monomials_of_degree(n, degree);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < monoms.size(); ++i) index[monoms[i].e] = i;
  MatrixFq m(rep.field, monoms.size(), monoms.size());
  const auto images = coaction(rep, label);
  for_each_column(rep.field, images, degree, [&](std::size_t col, const Polynomial& p) {
    for (const auto& [e, c] : p.terms()) m(index.at(e), col) = c;
  });
  return m;
}

InvariantEngine::InvariantEngine(MatrixGroupRep rep, EngineLimits limits)
    : rep_(std::move(rep)), limits_(limits) {}

void InvariantEngine::attach_dim_memo(std::shared_ptr<DimMemo> memo, std::string key_prefix) {
  memo_ = std::move(memo);
  memo_prefix_ = std::move(key_prefix);
}

const GroupClosure& InvariantEngine::closure() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (closure_) return *closure_;
  }
  GroupClosure cl = close_group(rep_, limits_.group_cap);
  std::lock_guard<std::mutex> lock(mu_);
  if (!closure_) closure_ = std::move(cl);
  return *closure_;
}

void InvariantEngine::memo_dim(int degree, std::int64_t dim) const {
  if (!memo_ || memo_prefix_.empty()) return;
  const std::string key = memo_prefix_ + "|d=" + std::to_string(degree);
  std::lock_guard<std::mutex> lock(memo_->mu);
  auto [it, inserted] = memo_->dims.try_emplace(key, dim);
  if (inserted) {
    memo_->dirty = true;
  } else {
    check(it->second == dim, Errc::Internal,
          "cached invariant dimension disagrees with the fresh computation for " + key);
  }
}

std::shared_ptr<const GradedInvariantBasis> InvariantEngine::compute_basis(int degree) const {
  auto out = std::make_shared<GradedInvariantBasis>();
  out->degree = degree;
  const int n = static_cast<int>(rep_.dim);
  if (degree == 0) {
    out->ambient_dim = 1;
    out->basis = {Polynomial::constant(rep_.field, n, 1)};
    return out;
  }
  const auto monoms = monomials_of_degree(n, degree);
  const std::size_t cols = monoms.size();
  out->ambient_dim = static_cast<std::int64_t>(cols);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < cols; ++i) index[monoms[i].e] = i;

  std::vector<std::vector<Polynomial>> all_images;
  for (const auto& [label, a] : rep_.generators)
    all_images.push_back(coaction_from_matrix(rep_.field, a));

  // Kernel of the stacked (rho_d(g) - I) over the generators. Over F_2 the
  // stacked matrix is packed directly into machine words.
  std::vector<std::vector<fq_t>> kernel;
  if (rep_.field->q() == 2) {
    Gf2Matrix big(rep_.generators.size() * cols, cols);
    for (std::size_t gi = 0; gi < rep_.generators.size(); ++gi) {
      const std::size_t base = gi * cols;
      for_each_column(rep_.field, all_images[gi], degree,
                      [&](std::size_t col, const Polynomial& p) {
                        for (const auto& [e, c] : p.terms()) big.set(base + index.at(e), col);
                      });
      for (std::size_t c = 0; c < cols; ++c) big.flip(base + c, c);
    }
    kernel = kernel_basis(big);
  } else {
    std::vector<MatrixFq> blocks;
    for (std::size_t gi = 0; gi < rep_.generators.size(); ++gi) {
      MatrixFq m(rep_.field, cols, cols);
      for_each_column(rep_.field, all_images[gi], degree,
                      [&](std::size_t col, const Polynomial& p) {
                        for (const auto& [e, c] : p.terms()) m(index.at(e), col) = c;
                      });
      for (std::size_t c = 0; c < cols; ++c) m(c, c) = rep_.field->sub(m(c, c), 1);
      blocks.push_back(std::move(m));
    }
    kernel = kernel_basis(stack_rows(blocks));
  }

  out->basis.reserve(kernel.size());
  for (const auto& vec : kernel) {
    Polynomial f(rep_.field, n);
    for (std::size_t i = 0; i < cols; ++i)
      if (vec[i] != 0) f.add_term(monoms[i].e, vec[i]);
    out->basis.push_back(f.monic());
  }

  // Invariance of every emitted basis element, re-checked unconditionally.
  for (const auto& f : out->basis)
    for (std::size_t gi = 0; gi < rep_.generators.size(); ++gi)
      check(substitute_linear(f, all_images[gi]) == f, Errc::Internal,
            "graded kernel produced a non-invariant element");
  return out;
}

const GradedInvariantBasis& InvariantEngine::invariant_basis(int degree) {
  check(degree >= 0, Errc::BadParameter, "degree must be >= 0");
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(degree);
    if (it != cache_.end()) return *it->second;
  }
  auto computed = compute_basis(degree);
  memo_dim(degree, computed->dim());
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = cache_.try_emplace(degree, std::move(computed));
  return *it->second;
}

std::vector<std::int64_t> InvariantEngine::dims_up_to(int max_degree) {
  std::vector<std::int64_t> dims;
  dims.reserve(static_cast<std::size_t>(std::max(0, max_degree)));
  for (int d = 1; d <= max_degree; ++d) dims.push_back(invariant_basis(d).dim());
  return dims;
}

bool InvariantEngine::monomial_in_invariants(int degree, const Monomial& m) {
  check(m.degree() == degree, Errc::DegreeMismatch,
        "monomial degree does not match the requested degree");
  check(m.e.size() == rep_.dim, Errc::ArityMismatch, "monomial arity mismatch");
  for (const auto& f : invariant_basis(degree).basis)
    if (f.coeff(m.e) != 0) return true;
  return false;
}

SeparationResult InvariantEngine::epsilon(const std::vector<fq_t>& point,
                                          std::optional<std::int64_t> max_degree,
                                          const Deadline& deadline) {
  check(point.size() == rep_.dim, Errc::ArityMismatch, "point dimension mismatch");
  for (fq_t c : point)
    check(c < rep_.field->q(), Errc::BadParameter, "point coordinate outside the field");
  check(std::any_of(point.begin(), point.end(), [](fq_t c) { return c != 0; }), Errc::ZeroPoint,
        "epsilon is defined for nonzero points only");
  const std::int64_t maxd = max_degree ? *max_degree : group_order();
  std::vector<std::int64_t> dims;
  for (int d = 1; d <= maxd; ++d) {
    check_deadline(deadline);
    const auto& graded = invariant_basis(d);
    dims.push_back(graded.dim());
    for (const auto& f : graded.basis) {
      if (f.evaluate(point) != 0) {
        // Degree-|G| separability bound: violating it means the engine is
        // inconsistent, not the input.
        std::lock_guard<std::mutex> lock(mu_);
        if (closure_)
          check(d <= closure_->order(), Errc::Internal, "separation above the group order");
        return {point, d, f, std::move(dims)};
      }
    }
  }
  fail(Errc::NotSeparated,
       "no invariant of degree <= " + std::to_string(maxd) + " separates the point");
}

InvariantEngine::CappedValue InvariantEngine::max_epsilon_over_span(
    const std::vector<std::vector<fq_t>>& basis, const Deadline& deadline,
    std::optional<int> degree_cap) {
  const Field& f = *rep_.field;
  const std::size_t nb = basis.size();
  const std::int64_t q = f.q();

  // One representative per scalar line: first nonzero coefficient fixed to 1,
  // later coefficients running through the canonical element order.
  double projected = 0;
  for (std::size_t j = 0; j < nb; ++j)
    projected += std::pow(static_cast<double>(q), static_cast<double>(nb - 1 - j));
  check(projected <= static_cast<double>(limits_.point_cap), Errc::PointBudgetExceeded,
        "projective point count exceeds the cap of " + std::to_string(limits_.point_cap));

  const std::int64_t maxd =
      degree_cap ? std::min<std::int64_t>(*degree_cap, group_order()) : group_order();
  // A cap below the group order turns an unseparated point into the
  // certificate "above the cap"; at or past the group order a failure to
  // separate stays an error.
  const bool truly_capped = degree_cap && maxd < group_order();
  const std::int64_t ceiling = truly_capped ? maxd + 1 : maxd;
  CappedValue best;
  std::vector<fq_t> point(rep_.dim);
  for (std::size_t lead = 0; lead < nb; ++lead) {
    const std::size_t tail = nb - 1 - lead;
    std::vector<std::size_t> idx(tail, 0);  // canonical indices of trailing coefficients
    while (true) {
      check_deadline(deadline);
      for (std::size_t i = 0; i < rep_.dim; ++i) point[i] = basis[lead][i];
      for (std::size_t t = 0; t < tail; ++t) {
        const fq_t c = f.canonical_element(static_cast<fq_t>(idx[t]));
        if (c != 0)
          for (std::size_t i = 0; i < rep_.dim; ++i)
            point[i] = f.add(point[i], f.mul(c, basis[lead + 1 + t][i]));
      }
      std::int64_t found;
      if (truly_capped) {
        try {
          found = epsilon(point, maxd, deadline).degree_found;
        } catch (const Error& e) {
          if (e.code() != Errc::NotSeparated) throw;
          found = maxd + 1;
          best.lower_bound_only = true;
        }
      } else {
        found = epsilon(point, maxd, deadline).degree_found;
      }
      best.value = std::max(best.value, found);
      if (best.value == ceiling) return best;  // nothing can grow past the ceiling
      if (tail == 0) break;
      bool rolled = true;
      for (std::size_t t = tail; t-- > 0;) {
        if (++idx[t] < static_cast<std::size_t>(q)) {
          rolled = false;
          break;
        }
        idx[t] = 0;
      }
      if (rolled) break;
    }
  }
  return best;
}

std::int64_t InvariantEngine::delta_value(const Deadline& deadline) {
  const auto fs = fixed_space(rep_);
  if (fs.empty()) return 0;
  return max_epsilon_over_span(fs, deadline).value;
}

InvariantEngine::CappedValue InvariantEngine::delta_value_capped(int degree_cap,
                                                                 const Deadline& deadline) {
  const auto fs = fixed_space(rep_);
  if (fs.empty()) return {0, false};
  return max_epsilon_over_span(fs, deadline, degree_cap);
}

std::int64_t InvariantEngine::gamma_value(const Deadline& deadline) {
  std::vector<std::vector<fq_t>> basis;
  for (std::size_t i = 0; i < rep_.dim; ++i) {
    std::vector<fq_t> e(rep_.dim, 0);
    e[i] = 1;
    basis.push_back(std::move(e));
  }
  return max_epsilon_over_span(basis, deadline).value;
}

Polynomial InvariantEngine::orbit_product(const Polynomial& linear_form) {
  check(linear_form.nvars() == static_cast<int>(rep_.dim), Errc::ArityMismatch,
        "linear form arity mismatch");
  check(!linear_form.is_zero() && linear_form.is_homogeneous() && linear_form.degree() == 1,
        Errc::BadParameter, "orbit products take nonzero homogeneous linear forms");
  require_same_field(linear_form.field(), rep_.field);
  const Field& f = *rep_.field;
  const int n = static_cast<int>(rep_.dim);

  std::vector<fq_t> ell(rep_.dim, 0);
  for (const auto& [e, c] : linear_form.terms())
    for (int i = 0; i < n; ++i)
      if (e[static_cast<std::size_t>(i)] == 1) ell[static_cast<std::size_t>(i)] = c;

  // Images of the form under the group: the row vector times each element
  // matrix (the element set is inverse-closed, so no per-element inversion).
  std::set<std::vector<fq_t>> orbit;
  for (const auto& a : closure().elements) {
    std::vector<fq_t> img(rep_.dim, 0);
    for (std::size_t j = 0; j < rep_.dim; ++j) {
      fq_t acc = 0;
      for (std::size_t i = 0; i < rep_.dim; ++i)
        if (ell[i] != 0 && a(i, j) != 0) acc = f.add(acc, f.mul(ell[i], a(i, j)));
      img[j] = acc;
    }
    orbit.insert(std::move(img));
  }

  Polynomial product = Polynomial::constant(rep_.field, n, 1);
  for (const auto& img : orbit) {
    Polynomial form(rep_.field, n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(i)] = 1;
      form.add_term(e, img[static_cast<std::size_t>(i)]);
    }
    product = product * form;
  }

  for (const auto& [label, a] : rep_.generators)
    check(group_action(rep_, label, product) == product, Errc::Internal,
          "orbit product is not invariant");
  return product;
}

std::vector<std::vector<fq_t>> InvariantEngine::v_zero() {
  const auto& linear = invariant_basis(1);
  MatrixFq m(rep_.field, linear.basis.size(), rep_.dim);
  for (std::size_t i = 0; i < linear.basis.size(); ++i) {
    std::vector<int> e(rep_.dim, 0);
    for (std::size_t j = 0; j < rep_.dim; ++j) {
      e[j] = 1;
      m(i, j) = linear.basis[i].coeff(e);
      e[j] = 0;
    }
  }
  return kernel_basis(m);
}

TerminalDivisibilityReport InvariantEngine::terminal_divisibility_check(int degree) {
  check(rep_.descriptor.has_value(), Errc::NotCyclicJordan,
        "terminal check needs a descriptor-built module");
  const auto shape = cyclic_jordan_shape(*rep_.descriptor);
  check(shape.has_value(), Errc::NotCyclicJordan,
        "terminal check applies to sums of Jordan summands of one cyclic p-group");

  TerminalDivisibilityReport report;
  report.degree = degree;
  std::vector<bool> terminal(rep_.dim, false);
  for (int t : shape->terminals) terminal[static_cast<std::size_t>(t)] = true;

  std::set<std::vector<int>> seen, seen_terminal;
  for (const auto& fpoly : invariant_basis(degree).basis) {
    for (const auto& [e, c] : fpoly.terms()) {
      seen.insert(e);
      bool pure = true;
      for (std::size_t i = 0; i < rep_.dim; ++i)
        if (!terminal[i] && e[i] != 0) {
          pure = false;
          break;
        }
      if (!pure) continue;
      seen_terminal.insert(e);
      for (int s = 1; s <= shape->r; ++s) {
        const std::int64_t ps = ipow(shape->p, s);
        const std::int64_t threshold = ipow(shape->p, s - 1);
        for (std::size_t j = 0; j < shape->sizes.size(); ++j) {
          if (shape->sizes[j] <= threshold) continue;  // j outside J_s
          const int a = e[static_cast<std::size_t>(shape->terminals[j])];
          if (a % ps != 0) {
            Polynomial mono = Polynomial::monomial(rep_.field, e, 1);
            report.violations.push_back("degree " + std::to_string(degree) + ", monomial " +
                                        mono.to_string() + ": exponent " + std::to_string(a) +
                                        " of summand " + std::to_string(j + 1) +
                                        " is not divisible by " + std::to_string(ps));
          }
        }
      }
    }
  }
  report.monomials_seen = static_cast<std::int64_t>(seen.size());
  report.purely_terminal = static_cast<std::int64_t>(seen_terminal.size());
  std::sort(report.violations.begin(), report.violations.end());
  report.violations.erase(std::unique(report.violations.begin(), report.violations.end()),
                          report.violations.end());
  return report;
}

}  // namespace sepdeg
