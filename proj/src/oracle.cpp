#include "sepdeg/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace sepdeg {

std::int64_t lucas(std::int64_t t, std::int64_t s, std::int64_t p) {
  check(t >= 0 && s >= 0, Errc::BadParameter, "binomial arguments must be >= 0");
  check(p >= 2, Errc::BadParameter, "p must be >= 2");
  std::int64_t result = 1;
  while ((t > 0 || s > 0) && result != 0) {
    const std::int64_t ct = t % p, ds = s % p;
    if (ds > ct) return 0;
    // small binomial C(ct, ds) with 0 <= ds <= ct < p
    std::int64_t b = 1;
    for (std::int64_t i = 1; i <= ds; ++i) b = b * (ct - ds + i) / i;
    result = result * (b % p) % p;
    t /= p;
    s /= p;
  }
  return result;
}

const char* pred_kind_name(PredKind kind) {
  switch (kind) {
    case PredKind::EpsilonCyclic: return "epsilon_cyclic";
    case PredKind::DeltaCyclic: return "delta_cyclic";
    case PredKind::GammaW: return "gamma_w";
    case PredKind::GammaSum: return "gamma_sum";
    case PredKind::KleinTable: return "klein_table";
    case PredKind::PGroupLowerBound: return "pgroup_lower_bound";
    case PredKind::CenterExponentBound: return "center_exponent_bound";
    case PredKind::PmTrichotomy: return "pm_trichotomy";
  }
  return "?";
}

std::optional<PredKind> pred_kind_from_name(const std::string& name) {
  for (PredKind k : {PredKind::EpsilonCyclic, PredKind::DeltaCyclic, PredKind::GammaW,
                     PredKind::GammaSum, PredKind::KleinTable, PredKind::PGroupLowerBound,
                     PredKind::CenterExponentBound, PredKind::PmTrichotomy})
    if (name == pred_kind_name(k)) return k;
  return std::nullopt;
}

const char* target_kind_name(TargetKind kind) {
  switch (kind) {
    case TargetKind::Epsilon: return "epsilon";
    case TargetKind::Delta: return "delta";
    case TargetKind::Gamma: return "gamma";
    case TargetKind::LemmaDivide: return "lemma_divide";
    case TargetKind::KleinAbsence: return "klein_absence";
  }
  return "?";
}

namespace {

// Smallest s >= 0 with n <= p^s.
int block_exponent(std::int64_t p, int n) {
  int s = 0;
  std::int64_t ps = 1;
  while (ps < n) {
    ps *= p;
    ++s;
  }
  return s;
}

}  // namespace

Prediction predict_epsilon_cyclic(const std::vector<int>& sizes, const std::vector<int>& support,
                                  std::int64_t p) {
  check(!support.empty(), Errc::EmptySupport, "support must be nonempty");
  int s = -1;
  for (int j : support) {
    check(0 <= j && j < static_cast<int>(sizes.size()), Errc::BadParameter,
          "support index out of range");
    const int sj = block_exponent(p, sizes[static_cast<std::size_t>(j)]);
    s = s < 0 ? sj : std::min(s, sj);
  }
  Prediction pred;
  pred.kind = PredKind::EpsilonCyclic;
  pred.value = ipow(p, s);
  pred.exact = true;
  pred.hypothesis = "fixed point of a cyclic p-group module supported on Jordan summands with "
                    "p^{s-1} < n_j throughout the support; s = " +
                    std::to_string(s);
  return pred;
}

Prediction predict_delta_cyclic_faithful(std::int64_t p, int r, const std::vector<int>& sizes) {
  const std::int64_t threshold = ipow(p, r - 1);
  const bool faithful =
      std::any_of(sizes.begin(), sizes.end(), [&](int n) { return n > threshold; });
  check(faithful, Errc::NotFaithful, "no Jordan summand exceeds p^{r-1}");
  Prediction pred;
  pred.kind = PredKind::DeltaCyclic;
  pred.value = ipow(p, r);
  pred.exact = true;
  pred.hypothesis = "faithful module of the cyclic group of order p^r";
  return pred;
}

Prediction predict_gamma_w(std::int64_t p, int r, std::int64_t m, int n,
                           std::int64_t lambda_order) {
  check(r >= 1 && m >= 1 && lambda_order >= 1, Errc::BadParameter, "bad group parameters");
  check(std::gcd(p, m) == 1, Errc::BadParameter, "m must be coprime to p");
  check(1 <= n && n <= ipow(p, r), Errc::BadParameter, "dimension outside [1, p^r]");
  check(m % lambda_order == 0, Errc::BadParameter, "the order of lambda must divide m");
  const int s = block_exponent(p, n);
  Prediction pred;
  pred.kind = PredKind::GammaW;
  pred.value = ipow(p, s) * lambda_order;
  pred.exact = true;
  pred.hypothesis = "scaled Jordan module, faithful over the cyclic group of order p^s m' with s = " +
                    std::to_string(s) + ", m' = " + std::to_string(lambda_order);
  return pred;
}

Prediction predict_gamma_sum(const std::vector<Prediction>& parts) {
  check(!parts.empty(), Errc::BadParameter, "empty sum");
  Prediction pred;
  pred.kind = PredKind::GammaSum;
  pred.exact = true;
  for (const auto& part : parts) {
    pred.value = std::max(pred.value, part.value);
    pred.exact = pred.exact && part.exact;
  }
  pred.hypothesis = "maximum over the direct summands";
  return pred;
}

Prediction predict_klein(const std::vector<KleinDesc>& summands, const FieldPtr& field) {
  check(field && field->p() == 2, Errc::FieldMismatch, "Klein modules live in characteristic 2");
  check(!summands.empty(), Errc::TrivialModule, "no nontrivial summand given");
  std::int64_t value = 2;
  for (const auto& k : summands) {
    bool small = false;  // summand within the delta = 2 class
    switch (k.variant) {
      case KleinVariant::Regular: small = false; break;
      case KleinVariant::V2m: {
        // lambda = 1 and lambda = 0 give the same matrix group
        const fq_t lambda = field->from_coeffs(k.lambda);
        small = (k.m == 1) && (lambda == 0 || lambda == 1);
        break;
      }
      case KleinVariant::W2m: small = (k.m == 1); break;
      case KleinVariant::VOdd: small = false; break;
      case KleinVariant::WOdd: small = true; break;
    }
    if (!small) value = 4;
  }
  Prediction pred;
  pred.kind = PredKind::KleinTable;
  pred.value = value;
  pred.exact = true;
  pred.hypothesis = "Klein four classification: 2 iff every summand is V_{2,0}, V_{2,1}, W_2 or "
                    "W_{2m+1}";
  return pred;
}

namespace {

bool is_power_of(std::int64_t n, std::int64_t p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

Prediction pgroup_lower_bound(const GroupClosure& cl, std::int64_t p) {
  check(cl.order() > 1 && is_power_of(cl.order(), p), Errc::NotPGroup,
        "closure is not a nontrivial p-group");
  std::int64_t best = p;
  for (std::size_t i = 0; i < cl.elements.size(); ++i) {
    const std::int64_t o = cl.orders[i];
    if (o <= best) continue;
    const MatrixFq power = cl.elements[i].pow(o / p);  // sigma^{p^{r-1}}
    bool central = true;
    for (const auto& e : cl.elements)
      if (!(power * e == e * power)) {
        central = false;
        break;
      }
    if (central) best = o;
  }
  Prediction pred;
  pred.kind = PredKind::PGroupLowerBound;
  pred.value = best;
  pred.exact = false;
  pred.hypothesis = "faithful p-group module with an order-" + std::to_string(best) +
                    " element whose p^{r-1} power is central";
  return pred;
}

Prediction predict_center_exponent_bound(const GroupClosure& cl, std::int64_t p) {
  check(cl.order() > 1 && is_power_of(cl.order(), p), Errc::NotPGroup,
        "closure is not a nontrivial p-group");
  Prediction pred;
  pred.kind = PredKind::CenterExponentBound;
  pred.value = center_exponent(cl);
  pred.exact = false;
  pred.hypothesis = "faithful p-group module; exponent of the centre";
  return pred;
}

Prediction classify_pm(const MatrixGroupRep& rep, const GroupClosure* closure_hint) {
  const std::int64_t p = rep.field->p();
  std::optional<std::int64_t> order;
  if (rep.descriptor) order = descriptor_group_order(*rep.descriptor);
  if (!order) {
    if (closure_hint) {
      order = closure_hint->order();
    } else {
      order = close_group(rep).order();
    }
  }
  check(*order % p == 0, Errc::BadGroupOrder, "group order is not divisible by p");
  const std::int64_t m = *order / p;
  check(m % p != 0, Errc::BadGroupOrder, "p^2 divides the group order");

  Prediction pred;
  pred.kind = PredKind::PmTrichotomy;
  pred.exact = true;
  const auto fixed = fixed_space(rep);
  if (fixed.empty()) {
    pred.value = 0;
    pred.hypothesis = "|G| = pm with no nonzero fixed point";
    return pred;
  }
  // Zero locus of the linear invariants, i.e. of the fixed space of the
  // dual action; only these two subspaces decide the trichotomy.
  const auto linear_invariants = fixed_space(dual(rep));
  MatrixFq locus_rows(rep.field, linear_invariants.size(), rep.dim);
  for (std::size_t i = 0; i < linear_invariants.size(); ++i)
    for (std::size_t j = 0; j < rep.dim; ++j) locus_rows(i, j) = linear_invariants[i][j];
  const auto v0 = kernel_basis(locus_rows);

  // dim(V^G  cap  V_0) = dim V^G + dim V_0 - dim(V^G + V_0)
  MatrixFq both(rep.field, fixed.size() + v0.size(), rep.dim);
  for (std::size_t i = 0; i < fixed.size(); ++i)
    for (std::size_t j = 0; j < rep.dim; ++j) both(i, j) = fixed[i][j];
  for (std::size_t i = 0; i < v0.size(); ++i)
    for (std::size_t j = 0; j < rep.dim; ++j) both(fixed.size() + i, j) = v0[i][j];
  const std::size_t meet = fixed.size() + v0.size() - rank(both);
  if (meet == 0) {
    pred.value = 1;
    pred.hypothesis = "|G| = pm, nonzero fixed point, V^G meets the linear-invariant locus "
                      "trivially";
  } else {
    pred.value = p;
    pred.hypothesis = "|G| = pm, some nonzero fixed point lies in the linear-invariant locus";
  }
  return pred;
}

bool equal_ignoring_millis(const TargetResult& a, const TargetResult& b) {
  return a.key == b.key && a.quantity == b.quantity && a.predictions == b.predictions &&
         a.expect == b.expect && a.computed == b.computed &&
         a.computed_is_lower_bound == b.computed_is_lower_bound &&
         a.per_degree_dims == b.per_degree_dims && a.witness == b.witness && a.note == b.note &&
         a.pass == b.pass;
}

bool equal_ignoring_millis(const VerificationReport& a, const VerificationReport& b) {
  if (!(a.name == b.name && a.descriptor == b.descriptor && a.field == b.field &&
        a.pass == b.pass && a.targets.size() == b.targets.size()))
    return false;
  for (std::size_t i = 0; i < a.targets.size(); ++i)
    if (!equal_ignoring_millis(a.targets[i], b.targets[i])) return false;
  return true;
}

namespace {

std::string point_key(const std::vector<std::vector<int>>& coords, int k) {
  std::string out = "[";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ",";
    if (k == 1) {
      out += std::to_string(coords[i].empty() ? 0 : coords[i][0]);
    } else {
      out += "[";
      for (int t = 0; t < k; ++t) {
        if (t) out += ",";
        out += std::to_string(t < static_cast<int>(coords[i].size()) ? coords[i][t] : 0);
      }
      out += "]";
    }
  }
  return out + "]";
}

std::vector<fq_t> pack_point(const std::vector<std::vector<int>>& coords, const FieldPtr& field,
                             std::size_t dim) {
  check(coords.size() == dim, Errc::ArityMismatch, "point dimension mismatch");
  std::vector<fq_t> out;
  out.reserve(dim);
  for (const auto& c : coords) out.push_back(field->from_coeffs(c));
  return out;
}

// All applicable closed-form predictors for one target.
std::vector<Prediction> predictions_for(const TargetSpec& target, const ModuleDescriptor& desc,
                                        const FieldPtr& field, const MatrixGroupRep& rep,
                                        InvariantEngine& engine) {
  std::vector<Prediction> preds;
  const auto jordan = cyclic_jordan_shape(desc);
  const auto wsum = w_sum_shape(desc);
  const auto kleins = klein_summands(desc);
  const std::int64_t p = field->p();

  switch (target.kind) {
    case TargetKind::Epsilon: {
      if (!jordan) break;
      const auto point = pack_point(target.point, field, rep.dim);
      std::vector<bool> terminal(rep.dim, false);
      for (int t : jordan->terminals) terminal[static_cast<std::size_t>(t)] = true;
      bool pure = true;
      std::vector<int> support;
      for (std::size_t i = 0; i < rep.dim; ++i)
        if (point[i] != 0 && !terminal[i]) pure = false;
      for (std::size_t j = 0; j < jordan->terminals.size(); ++j)
        if (point[static_cast<std::size_t>(jordan->terminals[j])] != 0)
          support.push_back(static_cast<int>(j));
      if (pure && !support.empty())
        preds.push_back(predict_epsilon_cyclic(jordan->sizes, support, p));
      break;
    }
    case TargetKind::Delta: {
      if (jordan) {
        const std::int64_t threshold = ipow(jordan->p, jordan->r - 1);
        if (std::any_of(jordan->sizes.begin(), jordan->sizes.end(),
                        [&](int n) { return n > threshold; }))
          preds.push_back(predict_delta_cyclic_faithful(jordan->p, jordan->r, jordan->sizes));
      } else if (wsum) {
        // Fixed points live in the lambda = 1 summands; the delta of a sum
        // is the maximum over the summands.
        std::int64_t best = 0;
        for (const auto& w : wsum.value())
          if (field->from_coeffs(w.lambda) == 1) {
            int s = 0;
            while (ipow(w.p, s) < w.n) ++s;
            best = std::max(best, ipow(w.p, s));
          }
        Prediction pred;
        pred.kind = PredKind::DeltaCyclic;
        pred.value = best;
        pred.exact = true;
        pred.hypothesis = "max rule over scaled Jordan summands; only lambda = 1 summands carry "
                          "fixed points";
        preds.push_back(pred);
      } else if (kleins) {
        preds.push_back(predict_klein(*kleins, field));
      }
      // trichotomy for groups of order p * (coprime part)
      std::optional<std::int64_t> order;
      if (rep.descriptor) order = descriptor_group_order(*rep.descriptor);
      if (!order) order = engine.closure().order();
      if (*order % p == 0 && (*order / p) % p != 0)
        preds.push_back(classify_pm(rep, &engine.closure()));
      // p-group lower bounds
      if (engine.closure().order() > 1) {
        std::int64_t n = engine.closure().order();
        while (n % p == 0) n /= p;
        if (n == 1) {
          preds.push_back(pgroup_lower_bound(engine.closure(), p));
          preds.push_back(predict_center_exponent_bound(engine.closure(), p));
        }
      }
      break;
    }
    case TargetKind::Gamma: {
      if (jordan) {
        std::vector<Prediction> parts;
        for (int n : jordan->sizes)
          parts.push_back(predict_gamma_w(jordan->p, jordan->r, 1, n, 1));
        preds.push_back(parts.size() == 1 ? parts.front() : predict_gamma_sum(parts));
      } else if (wsum) {
        std::vector<Prediction> parts;
        for (const auto& w : wsum.value())
          parts.push_back(predict_gamma_w(w.p, w.r, w.m, w.n,
                                          field->element_order(field->from_coeffs(w.lambda))));
        preds.push_back(parts.size() == 1 ? parts.front() : predict_gamma_sum(parts));
      } else if (kleins) {
        preds.push_back(predict_klein(*kleins, field));
      }
      break;
    }
    case TargetKind::LemmaDivide:
    case TargetKind::KleinAbsence:
      break;  // these targets carry their own expected outcome (zero findings)
  }
  return preds;
}

}  // namespace

VerificationReport verify(const std::string& name, const ModuleDescriptor& desc,
                          const FieldPtr& field, const std::vector<TargetSpec>& targets,
                          const EngineLimits& limits, const std::shared_ptr<DimMemo>& memo,
                          const std::string& memo_prefix) {
  using clock = std::chrono::steady_clock;
  const auto report_start = clock::now();

  VerificationReport report;
  report.name = name;
  report.descriptor = desc;
  report.field = field->spec();

  MatrixGroupRep rep = build(desc, field);
  InvariantEngine engine(rep, limits);
  if (memo) engine.attach_dim_memo(memo, memo_prefix);

  for (const auto& target : targets) {
    const auto target_start = clock::now();
    TargetResult res;
    res.quantity = target_kind_name(target.kind);
    res.expect = target.expect;
    res.pass = true;

    try {
      res.predictions = predictions_for(target, desc, field, rep, engine);
      switch (target.kind) {
        case TargetKind::Epsilon: {
          res.key = std::string("epsilon@") + point_key(target.point, field->k());
          const auto point = pack_point(target.point, field, rep.dim);
          auto sep = engine.epsilon(point);
          res.computed = sep.degree_found;
          res.witness = sep.witness.to_string();
          res.per_degree_dims = std::move(sep.per_degree_dims);
          break;
        }
        case TargetKind::Delta: {
          res.key = "delta";
          Deadline deadline;
          if (target.budget_ms)
            deadline = clock::now() + std::chrono::milliseconds(*target.budget_ms);
          try {
            res.computed = engine.delta_value(deadline);
          } catch (const Error& e) {
            if (e.code() != Errc::BudgetExceeded || target.degrade_degree <= 0) throw;
            auto capped = engine.delta_value_capped(target.degrade_degree);
            res.computed = capped.value;
            res.computed_is_lower_bound = capped.lower_bound_only;
            res.note = "budget exhausted; searches capped at degree " +
                       std::to_string(target.degrade_degree) +
                       (capped.lower_bound_only ? "; value is a lower bound" : "");
          }
          const std::int64_t evidence_cap =
              res.computed_is_lower_bound
                  ? target.degrade_degree
                  : std::min<std::int64_t>(res.computed, engine.group_order());
          res.per_degree_dims = engine.dims_up_to(static_cast<int>(evidence_cap));
          break;
        }
        case TargetKind::Gamma: {
          res.key = "gamma";
          Deadline deadline;
          if (target.budget_ms)
            deadline = clock::now() + std::chrono::milliseconds(*target.budget_ms);
          res.computed = engine.gamma_value(deadline);
          res.per_degree_dims = engine.dims_up_to(static_cast<int>(res.computed));
          break;
        }
        case TargetKind::LemmaDivide: {
          res.key = "lemma_divide@" + std::to_string(target.degree);
          auto rep_div = engine.terminal_divisibility_check(target.degree);
          res.computed = static_cast<std::int64_t>(rep_div.violations.size());
          if (!res.expect) res.expect = 0;
          res.note = std::to_string(rep_div.purely_terminal) + " purely terminal of " +
                     std::to_string(rep_div.monomials_seen) + " basis monomials";
          for (const auto& v : rep_div.violations) res.note += "; " + v;
          break;
        }
        case TargetKind::KleinAbsence: {
          res.key = "klein_absence";
          const auto kleins = klein_summands(desc);
          check(kleins && kleins->size() == 1 && kleins->front().variant == KleinVariant::V2m &&
                    kleins->front().m >= 2,
                Errc::BadParameter, "absence check applies to a single V_{2m,lambda} with m >= 2");
          const int m = kleins->front().m;
          std::int64_t present = 0;
          for (int d = 1; d <= 3; ++d) {
            std::vector<int> e(rep.dim, 0);
            e[static_cast<std::size_t>(2 * m - 1)] = d;  // y_m^d
            if (engine.monomial_in_invariants(d, Monomial{e})) ++present;
          }
          res.computed = present;
          if (!res.expect) res.expect = 0;
          res.note = "y_" + std::to_string(m) + "^d occurrences for d in {1,2,3}";
          break;
        }
      }

      for (const auto& pred : res.predictions) {
        if (pred.exact) {
          if (res.computed_is_lower_bound) {
            res.pass = false;
            res.note += (res.note.empty() ? "" : "; ");
            res.note += "exact prediction could not be verified against a lower bound";
          } else if (pred.value != res.computed) {
            res.pass = false;
          }
        } else if (pred.value > res.computed) {
          // a bound above even a lower-bound computation is a failure;
          // a bound below a lower bound holds a fortiori
          res.pass = false;
        }
      }
      if (res.expect) {
        if (res.computed_is_lower_bound ? (*res.expect < res.computed)
                                        : (*res.expect != res.computed))
          res.pass = false;
      }
    } catch (const Error& e) {
      // Resource and consistency failures abort the run; an inapplicable or
      // malformed target is a fail verdict on that target.
      if (is_engine_error(e.code())) throw;
      res.pass = false;
      res.computed = -1;
      res.note = std::string("error: ") + e.what();
      if (res.key.empty()) res.key = res.quantity;
    }

    res.millis = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - target_start)
                     .count();
    report.pass = report.pass && res.pass;
    report.targets.push_back(std::move(res));
  }

  std::sort(report.targets.begin(), report.targets.end(),
            [](const TargetResult& a, const TargetResult& b) { return a.key < b.key; });
  report.millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - report_start).count();
  return report;
}

}  // namespace sepdeg
