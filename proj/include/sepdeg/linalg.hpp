#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sepdeg/gf.hpp"

namespace sepdeg {

/// Dense matrix over F_{p^k} with packed entries, row major.
class MatrixFq {
 public:
  MatrixFq(FieldPtr field, std::size_t rows, std::size_t cols);
  static MatrixFq identity(FieldPtr field, std::size_t n);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  fq_t operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  fq_t& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const std::vector<fq_t>& entries() const { return a_; }

  friend bool operator==(const MatrixFq& a, const MatrixFq& b);

  MatrixFq operator*(const MatrixFq& rhs) const;
  MatrixFq operator+(const MatrixFq& rhs) const;
  MatrixFq operator-(const MatrixFq& rhs) const;
  MatrixFq transpose() const;
  MatrixFq pow(std::int64_t e) const;  // square matrices, e >= 0

  std::vector<fq_t> apply(const std::vector<fq_t>& v) const;
  bool is_identity() const;
  bool is_zero() const;

 private:
  FieldPtr field_;
  std::size_t rows_, cols_;
  std::vector<fq_t> a_;
};

/// Inverse of a square matrix. Throws ShapeMismatch / Singular.
MatrixFq inverse(const MatrixFq& m);

/// Rank via row echelon form (exact).
std::size_t rank(const MatrixFq& m);

/// Canonical basis of the right null space, derived from the reduced row
/// echelon form: one vector per free column, ordered by free-column index
/// ascending, with a 1 in that coordinate. Empty when the kernel is {0}.
std::vector<std::vector<fq_t>> kernel_basis(const MatrixFq& m);

/// Vertical concatenation in argument order. Throws ShapeMismatch on
/// mismatched column counts, FieldMismatch on mixed fields.
MatrixFq stack_rows(const std::vector<MatrixFq>& blocks);

/// Bit-packed matrix over F_2: staging area for large eliminations so the
/// dense word-packed path never materialises a 4-byte-per-entry copy.
class Gf2Matrix {
 public:
  Gf2Matrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (w_[r * words_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c) { w_[r * words_ + (c >> 6)] |= 1ull << (c & 63); }
  void flip(std::size_t r, std::size_t c) { w_[r * words_ + (c >> 6)] ^= 1ull << (c & 63); }

  /// In-place reduction to reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref();

 private:
  std::size_t rows_, cols_, words_;
  std::vector<std::uint64_t> w_;
};

std::vector<std::vector<fq_t>> kernel_basis(Gf2Matrix& m);

namespace detail {
// Field-generic elimination, exposed so tests can cross-check the packed
// F_2 route against it.
std::vector<std::vector<fq_t>> kernel_basis_generic(const MatrixFq& m);
std::size_t rank_generic(const MatrixFq& m);
}  // namespace detail

}  // namespace sepdeg
