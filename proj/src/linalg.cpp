#include "sepdeg/linalg.hpp"

#include <algorithm>
#include <string>

namespace sepdeg {

MatrixFq::MatrixFq(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

MatrixFq MatrixFq::identity(FieldPtr field, std::size_t n) {
  MatrixFq m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool operator==(const MatrixFq& a, const MatrixFq& b) {
  return a.field_->same_field(*b.field_) && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.a_ == b.a_;
}

MatrixFq MatrixFq::operator*(const MatrixFq& rhs) const {
  require_same_field(field_, rhs.field_);
  check(cols_ == rhs.rows_, Errc::ShapeMismatch, "matrix product shape mismatch");
  const Field& f = *field_;
  MatrixFq out(field_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const fq_t aik = (*this)(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const fq_t b = rhs(k, j);
        if (b != 0) out(i, j) = f.add(out(i, j), f.mul(aik, b));
      }
    }
  return out;
}

MatrixFq MatrixFq::operator+(const MatrixFq& rhs) const {
  require_same_field(field_, rhs.field_);
  check(rows_ == rhs.rows_ && cols_ == rhs.cols_, Errc::ShapeMismatch, "matrix sum shape");
  MatrixFq out(field_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->add(a_[i], rhs.a_[i]);
  return out;
}

MatrixFq MatrixFq::operator-(const MatrixFq& rhs) const {
  require_same_field(field_, rhs.field_);
  check(rows_ == rhs.rows_ && cols_ == rhs.cols_, Errc::ShapeMismatch, "matrix diff shape");
  MatrixFq out(field_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->sub(a_[i], rhs.a_[i]);
  return out;
}

MatrixFq MatrixFq::transpose() const {
  MatrixFq out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

MatrixFq MatrixFq::pow(std::int64_t e) const {
  check(rows_ == cols_, Errc::ShapeMismatch, "power of a non-square matrix");
  check(e >= 0, Errc::BadParameter, "negative matrix power");
  MatrixFq acc = identity(field_, rows_);
  MatrixFq base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    if (e >>= 1) base = base * base;
  }
  return acc;
}

std::vector<fq_t> MatrixFq::apply(const std::vector<fq_t>& v) const {
  check(v.size() == cols_, Errc::ShapeMismatch, "vector length mismatch");
  const Field& f = *field_;
  std::vector<fq_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const fq_t a = (*this)(i, j);
      if (a != 0 && v[j] != 0) out[i] = f.add(out[i], f.mul(a, v[j]));
    }
  return out;
}

bool MatrixFq::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

bool MatrixFq::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](fq_t x) { return x == 0; });
}

namespace {

// Reduced row echelon form in place; returns pivot columns in order.
std::vector<std::size_t> rref_generic(MatrixFq& m) {
  const Field& f = *m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && m(pr, c) == 0) ++pr;
    if (pr == rows) continue;
    if (pr != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(r, j), m(pr, j));
    const fq_t piv_inv = f.inv(m(r, c));
    if (piv_inv != 1)
      for (std::size_t j = c; j < cols; ++j) m(r, j) = f.mul(m(r, j), piv_inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const fq_t factor = m(i, c);
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Gf2Matrix to_gf2(const MatrixFq& m) {
  Gf2Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j)) out.set(i, j);
  return out;
}

// Kernel vectors from a reduced echelon form: x_free = 1 parameterisation,
// x_pivot = -entry(pivot row, free column).
template <typename Entry>
std::vector<std::vector<fq_t>> kernel_from_rref(const Field& f, std::size_t cols,
                                                const std::vector<std::size_t>& pivots,
                                                Entry entry) {
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<fq_t>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<fq_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t t = 0; t < pivots.size(); ++t) v[pivots[t]] = f.neg(entry(t, free));
    basis.push_back(std::move(v));
  }
  check(basis.size() == cols - pivots.size(), Errc::Internal, "rank-nullity violation");
  return basis;
}

}  // namespace

std::vector<std::size_t> Gf2Matrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    const std::size_t word = c >> 6;
    const std::uint64_t mask = 1ull << (c & 63);
    std::size_t pr = r;
    while (pr < rows_ && !(w_[pr * words_ + word] & mask)) ++pr;
    if (pr == rows_) continue;
    if (pr != r)
      std::swap_ranges(w_.begin() + static_cast<std::ptrdiff_t>(r * words_),
                       w_.begin() + static_cast<std::ptrdiff_t>((r + 1) * words_),
                       w_.begin() + static_cast<std::ptrdiff_t>(pr * words_));
    const std::uint64_t* src = &w_[r * words_];
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      std::uint64_t* dst = &w_[i * words_];
      if (dst[word] & mask)
        for (std::size_t t = word; t < words_; ++t) dst[t] ^= src[t];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), w_(rows * words_, 0) {}

std::vector<std::vector<fq_t>> kernel_basis(Gf2Matrix& m) {
  static const FieldPtr f2 = Field::make(2, 1);
  const auto pivots = m.rref();
  return kernel_from_rref(*f2, m.cols(), pivots, [&](std::size_t t, std::size_t c) -> fq_t {
    return m.get(t, c) ? 1 : 0;
  });
}

MatrixFq inverse(const MatrixFq& m) {
  check(m.rows() == m.cols(), Errc::ShapeMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  MatrixFq aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref_generic(aug);
  check(pivots.size() == n && (pivots.empty() || pivots.back() < n), Errc::Singular,
        "matrix is singular");
  MatrixFq out(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

std::size_t rank(const MatrixFq& m) {
  if (m.field()->q() == 2) {
    Gf2Matrix g = to_gf2(m);
    return g.rref().size();
  }
  MatrixFq copy = m;
  return rref_generic(copy).size();
}

std::vector<std::vector<fq_t>> kernel_basis(const MatrixFq& m) {
  if (m.field()->q() == 2) {
    Gf2Matrix g = to_gf2(m);
    return kernel_basis(g);
  }
  return detail::kernel_basis_generic(m);
}

MatrixFq stack_rows(const std::vector<MatrixFq>& blocks) {
  check(!blocks.empty(), Errc::ShapeMismatch, "stack of zero matrices");
  const std::size_t cols = blocks.front().cols();
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    require_same_field(b.field(), blocks.front().field());
    check(b.cols() == cols, Errc::ShapeMismatch, "stacked blocks must share column count");
    rows += b.rows();
  }
  MatrixFq out(blocks.front().field(), rows, cols);
  std::size_t r = 0;
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.rows(); ++i, ++r)
      for (std::size_t j = 0; j < cols; ++j) out(r, j) = b(i, j);
  return out;
}

namespace detail {

std::vector<std::vector<fq_t>> kernel_basis_generic(const MatrixFq& m) {
  MatrixFq copy = m;
  const auto pivots = rref_generic(copy);
  return kernel_from_rref(*m.field(), m.cols(), pivots,
                          [&](std::size_t t, std::size_t c) { return copy(t, c); });
}

std::size_t rank_generic(const MatrixFq& m) {
  MatrixFq copy = m;
  return rref_generic(copy).size();
}

}  // namespace detail

}  // namespace sepdeg
