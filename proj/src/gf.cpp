#include "sepdeg/gf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

namespace sepdeg {

namespace {

constexpr fq_t kMaxFieldSize = 1u << 20;

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense univariate polynomials over F_p, constant term first.
using Upoly = std::vector<int>;

int updeg(const Upoly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

Upoly upmul(const Upoly& a, const Upoly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Upoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<int>((c[i + j] + static_cast<std::int64_t>(a[i]) * b[j]) % p);
  }
  return c;
}

// Remainder of a by the monic divisor b.
Upoly upmod(Upoly a, const Upoly& b, std::int64_t p) {
  const int db = updeg(b);
  for (int da = updeg(a); da >= db && da >= 0; da = updeg(a)) {
    const std::int64_t c = a[da];
    for (int i = 0; i <= db; ++i) {
      std::int64_t t = a[da - db + i] - c * b[i] % p;
      a[da - db + i] = static_cast<int>(((t % p) + p) % p);
    }
  }
  return a;
}

bool up_divides(const Upoly& divisor, const Upoly& poly, std::int64_t p) {
  return updeg(upmod(poly, divisor, p)) < 0;
}

// Built-in moduli (constant term first). Deterministic cross-run fields for
// the common small cases; anything else takes an explicit modulus.
const std::map<std::pair<std::int64_t, int>, std::vector<int>>& builtin_moduli() {
  static const std::map<std::pair<std::int64_t, int>, std::vector<int>> table = {
      {{2, 1}, {0, 1}},
      {{2, 2}, {1, 1, 1}},
      {{3, 1}, {0, 1}},
      {{3, 2}, {2, 2, 1}},
      {{5, 1}, {0, 1}},
  };
  return table;
}

}  // namespace

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  fq_t q = 1;
  for (int i = 0; i < spec_.k; ++i) q *= static_cast<fq_t>(spec_.p);
  q_ = q;
}

bool Field::has_builtin_modulus(std::int64_t p, int k) {
  return builtin_moduli().count({p, k}) > 0;
}

FieldPtr Field::make(std::int64_t p, int k) {
  auto it = builtin_moduli().find({p, k});
  check(it != builtin_moduli().end(), Errc::BadParameter,
        "no built-in modulus for p=" + std::to_string(p) + ", k=" + std::to_string(k) +
            "; supply one explicitly");
  return make(FieldSpec{p, k, it->second});
}

FieldPtr Field::make(FieldSpec spec) {
  check(is_prime(spec.p), Errc::NonPrime, "p = " + std::to_string(spec.p) + " is not prime");
  check(spec.k >= 1, Errc::BadDegree, "extension degree must be >= 1");
  check(spec.modulus.size() == static_cast<std::size_t>(spec.k) + 1, Errc::BadDegree,
        "modulus must have k+1 coefficients");
  check(spec.modulus.back() == 1, Errc::BadDegree, "modulus must be monic");
  for (int c : spec.modulus)
    check(0 <= c && c < spec.p, Errc::BadDegree, "modulus coefficients must lie in [0,p)");
  if (spec.k == 1)
    check(spec.modulus[0] == 0, Errc::BadDegree, "for k=1 the modulus must be the polynomial t");

  double qlog = static_cast<double>(spec.k) * std::log2(static_cast<double>(spec.p));
  check(qlog <= 20.0 + 1e-9, Errc::BadParameter, "field size exceeds 2^20");

  // Trial division by every monic polynomial of degree <= floor(k/2).
  for (int d = 1; d <= spec.k / 2; ++d) {
    std::int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= spec.p;
    for (std::int64_t idx = 0; idx < count; ++idx) {
      Upoly cand(d + 1, 0);
      std::int64_t rem = idx;
      for (int i = 0; i < d; ++i) {
        cand[i] = static_cast<int>(rem % spec.p);
        rem /= spec.p;
      }
      cand[d] = 1;
      if (up_divides(cand, spec.modulus, spec.p))
        fail(Errc::ReducibleModulus, "modulus has a factor of degree " + std::to_string(d));
    }
  }

  auto field = FieldPtr(new Field(std::move(spec)));
  const_cast<Field*>(field.get())->build_tables();
  return field;
}

fq_t Field::mul_nocache(fq_t a, fq_t b) const {
  const std::int64_t p = spec_.p;
  Upoly pa(spec_.k), pb(spec_.k);
  for (int i = 0; i < spec_.k; ++i) {
    pa[i] = static_cast<int>(a % p);
    a /= static_cast<fq_t>(p);
    pb[i] = static_cast<int>(b % p);
    b /= static_cast<fq_t>(p);
  }
  Upoly prod = upmod(upmul(pa, pb, p), spec_.modulus, p);
  fq_t out = 0;
  for (int i = std::min<int>(static_cast<int>(prod.size()), spec_.k) - 1; i >= 0; --i)
    out = out * static_cast<fq_t>(p) + static_cast<fq_t>(prod[i]);
  return out;
}

void Field::build_tables() {
  const fq_t q = q_;
  exp_.assign(q - 1, 1);
  log_.assign(q, 0);
  if (q == 2) {
    log_[1] = 0;
    return;
  }
  const auto factors = prime_factors(q - 1);
  fq_t gen = 0;
  for (fq_t cand = 1; cand < q; ++cand) {
    bool ok = true;
    for (std::int64_t f : factors) {
      // cand^((q-1)/f) via square-and-multiply on the table-free product
      std::int64_t e = (q - 1) / f;
      fq_t acc = 1, base = cand;
      while (e > 0) {
        if (e & 1) acc = mul_nocache(acc, base);
        base = mul_nocache(base, base);
        e >>= 1;
      }
      if (acc == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen = cand;
      break;
    }
  }
  check(gen != 0, Errc::Internal, "no multiplicative generator found");
  fq_t cur = 1;
  for (fq_t i = 0; i + 1 < q; ++i) {
    exp_[i] = cur;
    log_[cur] = i;
    cur = mul_nocache(cur, gen);
  }
  check(cur == 1, Errc::Internal, "generator order mismatch");
}

fq_t Field::add(fq_t a, fq_t b) const {
  if (spec_.p == 2) return a ^ b;
  if (spec_.k == 1) return static_cast<fq_t>((a + b) % static_cast<fq_t>(spec_.p));
  const fq_t p = static_cast<fq_t>(spec_.p);
  fq_t out = 0, w = 1;
  for (int i = 0; i < spec_.k; ++i) {
    out += ((a % p) + (b % p)) % p * w;
    a /= p;
    b /= p;
    w *= p;
  }
  return out;
}

fq_t Field::neg(fq_t a) const {
  if (spec_.p == 2) return a;
  if (spec_.k == 1) return a == 0 ? 0 : static_cast<fq_t>(spec_.p) - a;
  const fq_t p = static_cast<fq_t>(spec_.p);
  fq_t out = 0, w = 1;
  for (int i = 0; i < spec_.k; ++i) {
    fq_t d = a % p;
    out += (d == 0 ? 0 : p - d) * w;
    a /= p;
    w *= p;
  }
  return out;
}

fq_t Field::sub(fq_t a, fq_t b) const { return add(a, neg(b)); }

fq_t Field::mul(fq_t a, fq_t b) const {
  if (a == 0 || b == 0) return 0;
  std::uint64_t e = static_cast<std::uint64_t>(log_[a]) + log_[b];
  if (e >= q_ - 1) e -= q_ - 1;
  return exp_[e];
}

fq_t Field::inv(fq_t a) const {
  check(a != 0, Errc::DivisionByZero, "inverse of zero");
  const fq_t e = log_[a];
  return exp_[e == 0 ? 0 : q_ - 1 - e];
}

fq_t Field::pow(fq_t a, std::int64_t e) const {
  if (a == 0) {
    check(e >= 0, Errc::DivisionByZero, "zero to a negative power");
    return e == 0 ? 1 : 0;
  }
  std::int64_t n = q_ - 1;
  std::int64_t r = e % n;
  if (r < 0) r += n;
  return exp_[static_cast<std::uint64_t>(log_[a]) * static_cast<std::uint64_t>(r) % n];
}

fq_t Field::from_int(std::int64_t n) const {
  std::int64_t r = n % spec_.p;
  if (r < 0) r += spec_.p;
  return static_cast<fq_t>(r);
}

fq_t Field::from_coeffs(const std::vector<int>& coeffs) const {
  check(coeffs.size() <= static_cast<std::size_t>(spec_.k), Errc::FieldMismatch,
        "coordinate vector longer than the extension degree");
  fq_t out = 0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    check(0 <= coeffs[i] && coeffs[i] < spec_.p, Errc::BadParameter,
          "coordinates must lie in [0,p)");
    out = out * static_cast<fq_t>(spec_.p) + static_cast<fq_t>(coeffs[i]);
  }
  return out;
}

std::vector<int> Field::coeffs(fq_t a) const {
  std::vector<int> out(spec_.k, 0);
  for (int i = 0; i < spec_.k; ++i) {
    out[i] = static_cast<int>(a % static_cast<fq_t>(spec_.p));
    a /= static_cast<fq_t>(spec_.p);
  }
  return out;
}

std::int64_t Field::element_order(fq_t a) const {
  check(a != 0, Errc::DivisionByZero, "order of zero");
  const std::int64_t n = q_ - 1;
  return n / std::gcd<std::int64_t>(log_[a], n);
}

fq_t Field::canonical_element(fq_t index) const {
  // index digits in base p, most significant first, are the coordinates
  // (c_0, ..., c_{k-1}); repack with c_0 as the least significant digit.
  std::vector<int> c(spec_.k, 0);
  for (int i = spec_.k - 1; i >= 0; --i) {
    c[i] = static_cast<int>(index % static_cast<fq_t>(spec_.p));
    index /= static_cast<fq_t>(spec_.p);
  }
  fq_t out = 0;
  for (int i = spec_.k - 1; i >= 0; --i)
    out = out * static_cast<fq_t>(spec_.p) + static_cast<fq_t>(c[i]);
  return out;
}

fq_t Field::root_of_unity(std::int64_t m) const {
  check(m >= 1, Errc::BadParameter, "root order must be >= 1");
  check((q_ - 1) % m == 0, Errc::NoSuchRoot,
        std::to_string(m) + " does not divide q-1 = " + std::to_string(q_ - 1));
  for (fq_t i = 0; i < q_; ++i) {
    const fq_t v = canonical_element(i);
    if (v != 0 && element_order(v) == m) return v;
  }
  fail(Errc::Internal, "no element of the requested order");
}

std::string Field::to_string(fq_t a) const {
  if (spec_.k == 1) return std::to_string(a);
  if (a == 0) return "0";
  const auto c = coeffs(a);
  std::string out;
  for (int i = spec_.k - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
    } else {
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += (i == 1) ? "w" : "w^" + std::to_string(i);
    }
  }
  return out;
}

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  check(a && b, Errc::FieldMismatch, "missing field");
  if (a.get() == b.get()) return;
  check(a->same_field(*b), Errc::FieldMismatch, "operands belong to different fields");
}

std::int64_t primitive_root_mod(std::int64_t p) {
  check(is_prime(p), Errc::NonPrime, "p = " + std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::int64_t f : factors) {
      std::int64_t e = (p - 1) / f, acc = 1, base = g;
      while (e > 0) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
      }
      if (acc == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  fail(Errc::Internal, "no primitive root found");
}

}  // namespace sepdeg
