#include "sepdeg/reps.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "sepdeg/mpoly.hpp"

namespace sepdeg {

bool operator==(const SymDesc& a, const SymDesc& b) {
  if (a.n != b.n) return false;
  if (!a.inner || !b.inner) return a.inner == b.inner;
  return *a.inner == *b.inner;
}

bool operator==(const DualDesc& a, const DualDesc& b) {
  if (!a.inner || !b.inner) return a.inner == b.inner;
  return *a.inner == *b.inner;
}

bool operator==(const SumDesc& a, const SumDesc& b) { return a.summands == b.summands; }

bool operator==(const ModuleDescriptor& a, const ModuleDescriptor& b) { return a.node == b.node; }

std::int64_t ipow(std::int64_t base, int exp) {
  check(exp >= 0 && exp <= 62, Errc::BadParameter, "exponent out of range");
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    check(r <= (std::int64_t{1} << 40), Errc::BadParameter, "power too large");
    r *= base;
  }
  return r;
}

const MatrixFq& MatrixGroupRep::generator(const std::string& label) const {
  for (const auto& [name, mat] : generators)
    if (name == label) return mat;
  fail(Errc::UnknownGenerator, "no generator labeled '" + label + "'");
}

std::vector<std::string> MatrixGroupRep::labels() const {
  std::vector<std::string> out;
  out.reserve(generators.size());
  for (const auto& [name, mat] : generators) out.push_back(name);
  return out;
}

namespace {

// sigma^{-1} maps e_i to e_i + e_{i+1} and fixes e_n; the stored generator
// matrix is the inverse of that unipotent block.
MatrixFq jordan_sigma(const FieldPtr& f, int n) {
  MatrixFq sigma_inv = MatrixFq::identity(f, static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) sigma_inv(i + 1, i) = 1;
  return inverse(sigma_inv);
}

void require_char(const FieldPtr& f, std::int64_t p) {
  check(f->p() == p, Errc::FieldMismatch,
        "descriptor characteristic " + std::to_string(p) + " does not match the field");
}

void check_relation(bool ok, const std::string& what) {
  check(ok, Errc::Internal, "constructed generators violate a defining relation: " + what);
}

MatrixFq perm_matrix(const FieldPtr& f, const std::vector<int>& images) {
  const std::size_t n = images.size();
  std::vector<bool> seen(n, false);
  MatrixFq m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    check(0 <= images[i] && images[i] < static_cast<int>(n), Errc::BadParameter,
          "permutation image out of range");
    check(!seen[static_cast<std::size_t>(images[i])], Errc::BadParameter,
          "permutation images repeat");
    seen[static_cast<std::size_t>(images[i])] = true;
    m(static_cast<std::size_t>(images[i]), i) = 1;
  }
  return m;
}

MatrixGroupRep build_jordan(const JordanDesc& d, const FieldPtr& f) {
  require_char(f, d.p);
  check(d.r >= 1, Errc::BadParameter, "r must be >= 1");
  check(1 <= d.n && d.n <= ipow(d.p, d.r), Errc::BadParameter,
        "jordan module dimension must satisfy 1 <= n <= p^r");
  MatrixFq sigma = jordan_sigma(f, d.n);
  check_relation(sigma.pow(ipow(d.p, d.r)).is_identity(), "sigma^(p^r) = 1");
  return {f, static_cast<std::size_t>(d.n), {{"sigma", sigma}}, std::nullopt};
}

MatrixGroupRep build_w(const WDesc& d, const FieldPtr& f) {
  require_char(f, d.p);
  check(d.r >= 1 && d.m >= 1, Errc::BadParameter, "r and m must be >= 1");
  check(std::gcd(d.p, d.m) == 1, Errc::BadParameter, "m must be coprime to p");
  check(1 <= d.n && d.n <= ipow(d.p, d.r), Errc::BadParameter,
        "module dimension must satisfy 1 <= n <= p^r");
  const fq_t lambda = f->from_coeffs(d.lambda);
  check(lambda != 0, Errc::BadParameter, "lambda must be a nonzero root of unity");
  check(d.m % f->element_order(lambda) == 0, Errc::BadParameter,
        "the order of lambda must divide m");
  MatrixFq sigma = jordan_sigma(f, d.n);
  MatrixFq alpha(f, static_cast<std::size_t>(d.n), static_cast<std::size_t>(d.n));
  for (int i = 0; i < d.n; ++i) alpha(i, i) = lambda;
  check_relation(sigma.pow(ipow(d.p, d.r)).is_identity(), "sigma^(p^r) = 1");
  check_relation(alpha.pow(d.m).is_identity(), "alpha^m = 1");
  check_relation(sigma * alpha == alpha * sigma, "sigma alpha = alpha sigma");
  return {f, static_cast<std::size_t>(d.n), {{"sigma", sigma}, {"alpha", alpha}}, std::nullopt};
}

std::pair<MatrixFq, MatrixFq> klein_v2m_matrices(const FieldPtr& f, int m, fq_t lambda) {
  // Basis h_1..h_m, e_1..e_m. sigma1: h_j -> h_j + e_j. sigma2:
  // h_j -> h_j + lambda e_j + e_{j+1} (j < m), h_m -> h_m + lambda e_m.
  const std::size_t dim = static_cast<std::size_t>(2 * m);
  MatrixFq a1 = MatrixFq::identity(f, dim);
  MatrixFq a2 = MatrixFq::identity(f, dim);
  for (int j = 1; j <= m; ++j) {
    a1(static_cast<std::size_t>(m + j - 1), static_cast<std::size_t>(j - 1)) = 1;
    a2(static_cast<std::size_t>(m + j - 1), static_cast<std::size_t>(j - 1)) = lambda;
    if (j < m) a2(static_cast<std::size_t>(m + j), static_cast<std::size_t>(j - 1)) = 1;
  }
  return {a1, a2};
}

MatrixGroupRep build_klein(const KleinDesc& d, const FieldPtr& f) {
  require_char(f, 2);
  MatrixFq a1(f, 0, 0), a2(f, 0, 0);
  std::size_t dim = 0;
  switch (d.variant) {
    case KleinVariant::Regular: {
      dim = 4;
      // Group elements indexed by generator-exponent bitmasks; left
      // multiplication is XOR on indices.
      std::vector<int> p1(4), p2(4);
      for (int h = 0; h < 4; ++h) {
        p1[h] = h ^ 1;
        p2[h] = h ^ 2;
      }
      a1 = perm_matrix(f, p1);
      a2 = perm_matrix(f, p2);
      break;
    }
    case KleinVariant::V2m: {
      check(d.m >= 1, Errc::BadParameter, "m must be >= 1");
      dim = static_cast<std::size_t>(2 * d.m);
      std::tie(a1, a2) = klein_v2m_matrices(f, d.m, f->from_coeffs(d.lambda));
      break;
    }
    case KleinVariant::W2m: {
      check(d.m >= 1, Errc::BadParameter, "m must be >= 1");
      dim = static_cast<std::size_t>(2 * d.m);
      std::tie(a2, a1) = klein_v2m_matrices(f, d.m, 0);
      break;
    }
    case KleinVariant::VOdd: {
      check(d.m >= 1, Errc::BadParameter, "m must be >= 1");
      // Basis h_1..h_{m+1}, e_1..e_m.
      dim = static_cast<std::size_t>(2 * d.m + 1);
      a1 = MatrixFq::identity(f, dim);
      a2 = MatrixFq::identity(f, dim);
      for (int i = 1; i <= d.m; ++i)
        a1(static_cast<std::size_t>(d.m + i), static_cast<std::size_t>(i - 1)) = 1;
      for (int i = 2; i <= d.m + 1; ++i)
        a2(static_cast<std::size_t>(d.m + i - 1), static_cast<std::size_t>(i - 1)) = 1;
      break;
    }
    case KleinVariant::WOdd: {
      check(d.m >= 1, Errc::BadParameter, "m must be >= 1");
      dim = static_cast<std::size_t>(2 * d.m + 1);
      a1 = MatrixFq::identity(f, dim);
      a2 = MatrixFq::identity(f, dim);
      for (int j = 0; j < d.m; ++j) {
        a1(static_cast<std::size_t>(j), static_cast<std::size_t>(d.m + 1 + j)) = 1;
        a2(static_cast<std::size_t>(j + 1), static_cast<std::size_t>(d.m + 1 + j)) = 1;
      }
      break;
    }
  }
  check_relation((a1 * a1).is_identity(), "sigma1^2 = 1");
  check_relation((a2 * a2).is_identity(), "sigma2^2 = 1");
  check_relation(a1 * a2 == a2 * a1, "sigma1 sigma2 = sigma2 sigma1");
  return {f, dim, {{"sigma1", a1}, {"sigma2", a2}}, std::nullopt};
}

MatrixGroupRep build_perm(const PermDesc& d, const FieldPtr& f) {
  check(d.n >= 1, Errc::BadParameter, "n must be >= 1");
  check(!d.gens.empty(), Errc::BadParameter, "at least one permutation required");
  MatrixGroupRep rep{f, static_cast<std::size_t>(d.n), {}, std::nullopt};
  int idx = 1;
  for (const auto& g : d.gens) {
    check(g.size() == static_cast<std::size_t>(d.n), Errc::BadParameter,
          "permutation length mismatch");
    rep.generators.emplace_back("g" + std::to_string(idx++), perm_matrix(f, g));
  }
  return rep;
}

MatrixGroupRep build_borel(const BorelDesc& d, const FieldPtr& f) {
  require_char(f, d.p);
  MatrixFq u = MatrixFq::identity(f, 2);
  u(0, 1) = 1;
  MatrixFq t = MatrixFq::identity(f, 2);
  const std::int64_t g = primitive_root_mod(d.p);
  t(1, 1) = f->from_int(g);
  std::int64_t ginv = 1;
  while (ginv * g % d.p != 1) ++ginv;
  check_relation(u.pow(d.p).is_identity(), "u^p = 1");
  check_relation(t.pow(d.p - 1).is_identity(), "t^(p-1) = 1");
  check_relation(t * u * inverse(t) == u.pow(ginv), "t u t^-1 = u^(1/g)");
  return {f, 2, {{"u", u}, {"t", t}}, std::nullopt};
}

MatrixGroupRep build_sym(const SymDesc& d, const FieldPtr& f) {
  check(d.inner != nullptr, Errc::BadParameter, "missing inner module");
  check(d.n >= 1, Errc::BadParameter, "symmetric power must be >= 1");
  MatrixGroupRep inner = build(*d.inner, f);
  const int w = static_cast<int>(inner.dim);
  const auto basis = monomials_of_degree(w, d.n);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i].e] = i;

  MatrixGroupRep rep{f, basis.size(), {}, std::nullopt};
  for (const auto& [label, a] : inner.generators) {
    // Images of the inner basis vectors as linear forms; expanding the
    // product over a basis monomial gives the column with multinomial
    // coefficients reduced in the field.
    std::vector<Polynomial> images;
    for (int i = 0; i < w; ++i) {
      Polynomial img(f, w);
      for (int j = 0; j < w; ++j) {
        std::vector<int> e(w, 0);
        e[j] = 1;
        img.add_term(e, a(static_cast<std::size_t>(j), static_cast<std::size_t>(i)));
      }
      images.push_back(std::move(img));
    }
    MatrixFq m(f, basis.size(), basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
      Polynomial image = substitute_linear(Polynomial::monomial(f, basis[col].e, 1), images);
      for (const auto& [e, c] : image.terms()) m(index.at(e), col) = c;
    }
    rep.generators.emplace_back(label, std::move(m));
  }
  return rep;
}

}  // namespace

MatrixGroupRep build(const ModuleDescriptor& desc, const FieldPtr& field) {
  check(field != nullptr, Errc::FieldMismatch, "missing field");
  MatrixGroupRep rep = std::visit(
      [&](const auto& node) -> MatrixGroupRep {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, JordanDesc>) return build_jordan(node, field);
        else if constexpr (std::is_same_v<T, WDesc>) return build_w(node, field);
        else if constexpr (std::is_same_v<T, KleinDesc>) return build_klein(node, field);
        else if constexpr (std::is_same_v<T, PermDesc>) return build_perm(node, field);
        else if constexpr (std::is_same_v<T, BorelDesc>) return build_borel(node, field);
        else if constexpr (std::is_same_v<T, SymDesc>) return build_sym(node, field);
        else if constexpr (std::is_same_v<T, DualDesc>) {
          check(node.inner != nullptr, Errc::BadParameter, "missing inner module");
          return dual(build(*node.inner, field));
        } else {
          static_assert(std::is_same_v<T, SumDesc>);
          check(!node.summands.empty(), Errc::BadParameter, "empty direct sum");
          std::vector<MatrixGroupRep> parts;
          parts.reserve(node.summands.size());
          for (const auto& s : node.summands) parts.push_back(build(s, field));
          return direct_sum(parts);
        }
      },
      desc.node);
  for (const auto& [label, a] : rep.generators)
    check(rank(a) == rep.dim, Errc::BadParameter, "generator '" + label + "' is not invertible");
  rep.descriptor = desc;
  return rep;
}

GroupClosure close_group(const MatrixGroupRep& rep, std::size_t cap) {
  GroupClosure cl;
  std::map<std::vector<fq_t>, std::size_t> seen;
  auto push = [&](const MatrixFq& m) -> bool {
    auto [it, inserted] = seen.try_emplace(m.entries(), cl.elements.size());
    if (!inserted) return false;
    check(cl.elements.size() < cap, Errc::CapExceeded,
          "group order exceeds cap " + std::to_string(cap));
    cl.elements.push_back(m);
    return true;
  };
  const MatrixFq id = MatrixFq::identity(rep.field, rep.dim);
  push(id);
  for (const auto& [label, a] : rep.generators) push(a);
  for (std::size_t head = 0; head < cl.elements.size(); ++head) {
    const MatrixFq cur = cl.elements[head];
    for (const auto& [label, a] : rep.generators) push(cur * a);
  }

  cl.orders.reserve(cl.elements.size());
  for (const auto& e : cl.elements) {
    std::int64_t t = 1;
    MatrixFq cur = e;
    while (!cur.is_identity()) {
      cur = cur * e;
      ++t;
      check(t <= cl.order(), Errc::Internal, "element order exceeds group order");
    }
    cl.orders.push_back(t);
  }
  for (std::size_t i = 0; i < cl.elements.size(); ++i) {
    bool central = true;
    for (const auto& [label, a] : rep.generators)
      if (!(cl.elements[i] * a == a * cl.elements[i])) {
        central = false;
        break;
      }
    if (central) cl.center_indices.push_back(i);
  }
  return cl;
}

MatrixGroupRep dual(const MatrixGroupRep& rep) {
  MatrixGroupRep out{rep.field, rep.dim, {}, std::nullopt};
  for (const auto& [label, a] : rep.generators)
    out.generators.emplace_back(label, inverse(a).transpose());
  if (rep.descriptor)
    out.descriptor =
        ModuleDescriptor{DualDesc{std::make_shared<const ModuleDescriptor>(*rep.descriptor)}};
  return out;
}

MatrixGroupRep direct_sum(const std::vector<MatrixGroupRep>& parts) {
  check(!parts.empty(), Errc::BadParameter, "empty direct sum");
  if (parts.size() == 1) return parts.front();
  const auto labels = parts.front().labels();
  std::size_t dim = 0;
  for (const auto& part : parts) {
    require_same_field(part.field, parts.front().field);
    check(part.labels() == labels, Errc::LabelMismatch,
          "direct sum requires identical generator labels");
    dim += part.dim;
  }
  MatrixGroupRep out{parts.front().field, dim, {}, std::nullopt};
  for (std::size_t g = 0; g < labels.size(); ++g) {
    MatrixFq block(out.field, dim, dim);
    std::size_t off = 0;
    for (const auto& part : parts) {
      const MatrixFq& a = part.generators[g].second;
      for (std::size_t i = 0; i < part.dim; ++i)
        for (std::size_t j = 0; j < part.dim; ++j) block(off + i, off + j) = a(i, j);
      off += part.dim;
    }
    out.generators.emplace_back(labels[g], std::move(block));
  }
  std::vector<ModuleDescriptor> sumdescs;
  bool all_have = true;
  for (const auto& part : parts) {
    if (!part.descriptor) {
      all_have = false;
      break;
    }
    sumdescs.push_back(*part.descriptor);
  }
  if (all_have) out.descriptor = ModuleDescriptor{SumDesc{std::move(sumdescs)}};
  return out;
}

std::vector<std::vector<fq_t>> fixed_space(const MatrixGroupRep& rep) {
  std::vector<MatrixFq> blocks;
  const MatrixFq id = MatrixFq::identity(rep.field, rep.dim);
  blocks.reserve(rep.generators.size());
  for (const auto& [label, a] : rep.generators) blocks.push_back(a - id);
  return kernel_basis(stack_rows(blocks));
}

std::vector<int> jordan_type(const MatrixFq& a, std::int64_t p) {
  check(a.rows() == a.cols(), Errc::ShapeMismatch, "jordan type of a non-square matrix");
  check(a.field()->p() == p, Errc::FieldMismatch, "characteristic mismatch");
  const std::size_t n = a.rows();
  const MatrixFq nilp = a - MatrixFq::identity(a.field(), n);
  check(nilp.pow(static_cast<std::int64_t>(n)).is_zero(), Errc::NotUnipotent,
        "matrix is not unipotent");
  // ranks[j] = rank((A-I)^j); block count of size >= j is ranks[j-1]-ranks[j]
  std::vector<std::size_t> ranks = {n};
  MatrixFq power = nilp;
  while (ranks.back() > 0) {
    ranks.push_back(rank(power));
    power = power * nilp;
  }
  std::vector<int> out;
  for (std::size_t j = 1; j + 1 <= ranks.size(); ++j) {
    const std::size_t ge_j = ranks[j - 1] - ranks[j];
    const std::size_t ge_j1 = j + 1 < ranks.size() ? ranks[j] - ranks[j + 1] : 0;
    for (std::size_t t = 0; t < ge_j - ge_j1; ++t) out.push_back(static_cast<int>(j));
  }
  std::sort(out.rbegin(), out.rend());
  check(std::accumulate(out.begin(), out.end(), 0) == static_cast<int>(n), Errc::Internal,
        "jordan type does not sum to the dimension");
  return out;
}

std::int64_t group_exponent(const GroupClosure& cl) {
  std::int64_t l = 1;
  for (std::int64_t o : cl.orders) l = std::lcm(l, o);
  return l;
}

std::int64_t center_exponent(const GroupClosure& cl) {
  std::int64_t l = 1;
  for (std::size_t i : cl.center_indices) l = std::lcm(l, cl.orders[i]);
  return l;
}

std::optional<std::int64_t> descriptor_group_order(const ModuleDescriptor& desc) {
  return std::visit(
      [&](const auto& node) -> std::optional<std::int64_t> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, JordanDesc>) return ipow(node.p, node.r);
        else if constexpr (std::is_same_v<T, WDesc>) return ipow(node.p, node.r) * node.m;
        else if constexpr (std::is_same_v<T, KleinDesc>) return 4;
        else if constexpr (std::is_same_v<T, BorelDesc>) return node.p * (node.p - 1);
        else if constexpr (std::is_same_v<T, SymDesc>) return descriptor_group_order(*node.inner);
        else if constexpr (std::is_same_v<T, DualDesc>) return descriptor_group_order(*node.inner);
        else if constexpr (std::is_same_v<T, SumDesc>) {
          std::optional<std::int64_t> common;
          for (const auto& s : node.summands) {
            auto o = descriptor_group_order(s);
            if (!o) return std::nullopt;
            if (common && *common != *o) return std::nullopt;
            common = o;
          }
          return common;
        } else {
          return std::nullopt;  // permutation modules: group given by closure
        }
      },
      desc.node);
}

std::optional<CyclicJordanShape> cyclic_jordan_shape(const ModuleDescriptor& desc) {
  std::vector<const JordanDesc*> summands;
  if (const auto* j = std::get_if<JordanDesc>(&desc.node)) {
    summands.push_back(j);
  } else if (const auto* s = std::get_if<SumDesc>(&desc.node)) {
    for (const auto& part : s->summands) {
      const auto* j = std::get_if<JordanDesc>(&part.node);
      if (!j) return std::nullopt;
      summands.push_back(j);
    }
  } else {
    return std::nullopt;
  }
  if (summands.empty()) return std::nullopt;
  CyclicJordanShape shape;
  shape.p = summands.front()->p;
  shape.r = summands.front()->r;
  int off = 0;
  for (const auto* j : summands) {
    if (j->p != shape.p || j->r != shape.r) return std::nullopt;
    shape.sizes.push_back(j->n);
    shape.offsets.push_back(off);
    shape.terminals.push_back(off + j->n - 1);
    off += j->n;
  }
  return shape;
}

std::optional<std::vector<WDesc>> w_sum_shape(const ModuleDescriptor& desc) {
  std::vector<WDesc> out;
  if (const auto* w = std::get_if<WDesc>(&desc.node)) {
    out.push_back(*w);
  } else if (const auto* s = std::get_if<SumDesc>(&desc.node)) {
    for (const auto& part : s->summands) {
      const auto* w = std::get_if<WDesc>(&part.node);
      if (!w) return std::nullopt;
      out.push_back(*w);
    }
  } else {
    return std::nullopt;
  }
  if (out.empty()) return std::nullopt;
  for (const auto& w : out)
    if (w.p != out.front().p || w.r != out.front().r || w.m != out.front().m)
      return std::nullopt;
  return out;
}

std::optional<std::vector<KleinDesc>> klein_summands(const ModuleDescriptor& desc) {
  std::vector<KleinDesc> out;
  if (const auto* k = std::get_if<KleinDesc>(&desc.node)) {
    out.push_back(*k);
  } else if (const auto* s = std::get_if<SumDesc>(&desc.node)) {
    for (const auto& part : s->summands) {
      const auto* k = std::get_if<KleinDesc>(&part.node);
      if (!k) return std::nullopt;
      out.push_back(*k);
    }
  } else {
    return std::nullopt;
  }
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace sepdeg
