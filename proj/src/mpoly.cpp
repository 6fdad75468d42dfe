#include "sepdeg/mpoly.hpp"

#include <algorithm>
#include <functional>

namespace sepdeg {

std::int64_t binomial_int(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
  check(nvars >= 1, Errc::BadParameter, "need at least one variable");
  check(degree >= 0, Errc::BadParameter, "degree must be >= 0");
  std::vector<Monomial> out;
  out.reserve(static_cast<std::size_t>(binomial_int(nvars + degree - 1, degree)));
  std::vector<int> e(nvars, 0);
  std::function<void(int, int)> rec = [&](int pos, int rem) {
    if (pos == nvars - 1) {
      e[pos] = rem;
      out.push_back(Monomial{e});
      return;
    }
    for (int a = rem; a >= 0; --a) {
      e[pos] = a;
      rec(pos + 1, rem - a);
    }
    e[pos] = 0;
  };
  rec(0, degree);
  return out;
}

Polynomial::Polynomial(FieldPtr field, int nvars) : field_(std::move(field)), nvars_(nvars) {
  check(nvars_ >= 1, Errc::BadParameter, "need at least one variable");
}

Polynomial Polynomial::monomial(FieldPtr field, std::vector<int> exps, fq_t coeff) {
  Polynomial p(std::move(field), static_cast<int>(exps.size()));
  p.add_term(exps, coeff);
  return p;
}

Polynomial Polynomial::constant(FieldPtr field, int nvars, fq_t value) {
  Polynomial p(std::move(field), nvars);
  p.add_term(std::vector<int>(nvars, 0), value);
  return p;
}

Polynomial Polynomial::variable(FieldPtr field, int nvars, int index) {
  check(0 <= index && index < nvars, Errc::BadParameter, "variable index out of range");
  std::vector<int> e(nvars, 0);
  e[index] = 1;
  return monomial(std::move(field), std::move(e), 1);
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_)
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

bool Polynomial::is_homogeneous() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    const int t = std::accumulate(e.begin(), e.end(), 0);
    if (d < 0) d = t;
    if (t != d) return false;
  }
  return true;
}

fq_t Polynomial::coeff(const std::vector<int>& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? 0 : it->second;
}

void Polynomial::add_term(const std::vector<int>& exps, fq_t c) {
  check(exps.size() == static_cast<std::size_t>(nvars_), Errc::ArityMismatch,
        "exponent vector length mismatch");
  if (c == 0) return;
  for (int a : exps) check(a >= 0, Errc::BadParameter, "negative exponent");
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second = field_->add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  require_same_field(field_, rhs.field_);
  check(nvars_ == rhs.nvars_, Errc::ArityMismatch, "variable count mismatch");
  Polynomial out = *this;
  for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  require_same_field(field_, rhs.field_);
  check(nvars_ == rhs.nvars_, Errc::ArityMismatch, "variable count mismatch");
  Polynomial out = *this;
  for (const auto& [e, c] : rhs.terms_) out.add_term(e, field_->neg(c));
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  require_same_field(field_, rhs.field_);
  check(nvars_ == rhs.nvars_, Errc::ArityMismatch, "variable count mismatch");
  Polynomial out(field_, nvars_);
  std::vector<int> e(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : rhs.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, field_->mul(ca, cb));
    }
  return out;
}

Polynomial Polynomial::scaled(fq_t c) const {
  Polynomial out(field_, nvars_);
  if (c == 0) return out;
  for (const auto& [e, coeff] : terms_) out.terms_.emplace(e, field_->mul(coeff, c));
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.field_->same_field(*b.field_) && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

fq_t Polynomial::evaluate(const std::vector<fq_t>& point) const {
  check(point.size() == static_cast<std::size_t>(nvars_), Errc::ArityMismatch,
        "point length mismatch");
  const Field& f = *field_;
  fq_t acc = 0;
  for (const auto& [e, c] : terms_) {
    fq_t term = c;
    for (int i = 0; i < nvars_ && term != 0; ++i)
      if (e[i] > 0) term = f.mul(term, f.pow(point[i], e[i]));
    acc = f.add(acc, term);
  }
  return acc;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  const fq_t lead = terms_.begin()->second;
  if (lead == 1) return *this;
  return scaled(field_->inv(lead));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += field_->to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      const std::string cs = field_->to_string(c);
      out += (field_->k() > 1 ? "(" + cs + ")" : cs) + "*" + mono;
    }
  }
  return out;
}

Polynomial substitute_linear(const Polynomial& f, const std::vector<Polynomial>& images) {
  check(images.size() == static_cast<std::size_t>(f.nvars()), Errc::ArityMismatch,
        "one image per variable required");
  const int out_vars = images.front().nvars();
  for (const auto& img : images) {
    require_same_field(img.field(), f.field());
    check(img.nvars() == out_vars, Errc::ArityMismatch, "images must share a variable count");
    for (const auto& [e, c] : img.terms())
      check(std::accumulate(e.begin(), e.end(), 0) == 1, Errc::BadParameter,
            "images must be homogeneous linear (or zero)");
  }
  // Power cache: pw[i][a] = images[i]^a, filled on demand.
  std::vector<std::vector<Polynomial>> pw(images.size());
  auto power = [&](std::size_t i, int a) -> const Polynomial& {
    auto& slot = pw[i];
    if (slot.empty()) slot.push_back(Polynomial::constant(f.field(), out_vars, 1));
    while (static_cast<int>(slot.size()) <= a) slot.push_back(slot.back() * images[i]);
    return slot[a];
  };

  Polynomial out(f.field(), out_vars);
  for (const auto& [e, c] : f.terms()) {
    Polynomial term = Polynomial::constant(f.field(), out_vars, c);
    for (std::size_t i = 0; i < images.size() && !term.is_zero(); ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    out = out + term;
  }
  return out;
}

}  // namespace sepdeg
