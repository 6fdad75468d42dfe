#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sepdeg/linalg.hpp"

namespace sepdeg {

struct ModuleDescriptor;

/// Cyclic group of order p^r acting on the n-dimensional indecomposable
/// module via a unipotent Jordan block (basis e_1..e_n; the inverse of the
/// generator maps e_i to e_i + e_{i+1} and fixes e_n). Requires 1 <= n <= p^r.
struct JordanDesc {
  std::int64_t p = 2;
  int r = 1;
  int n = 1;

  friend bool operator==(const JordanDesc&, const JordanDesc&) = default;
};

/// Cyclic group of order p^r * m (gcd(p,m)=1) acting on an n-dimensional
/// module: generator "sigma" as in JordanDesc, generator "alpha" scaling by
/// lambda, an m-th root of unity given by its coordinate vector.
struct WDesc {
  std::int64_t p = 2;
  int r = 1;
  std::int64_t m = 1;
  int n = 1;
  std::vector<int> lambda = {1};

  friend bool operator==(const WDesc&, const WDesc&) = default;
};

enum class KleinVariant { Regular, V2m, W2m, VOdd, WOdd };

/// Klein four group modules (characteristic 2), one constructor per
/// indecomposable family:
///   Regular — the 4-dimensional permutation action of the group on itself
///             in closure order (id, sigma1, sigma2, sigma1*sigma2);
///   V2m     — dimension 2m, parameters m >= 1 and lambda; basis ordered
///             h_1..h_m, e_1..e_m, so the dual variables come out
///             x_1..x_m, y_1..y_m;
///   W2m     — dimension 2m: V2m with lambda = 0 and the two generator
///             matrices swapped;
///   VOdd    — dimension 2m+1, basis h_1..h_{m+1}, e_1..e_m (dual variables
///             x_1..x_{m+1}, y_1..y_m);
///   WOdd    — dimension 2m+1, the two block matrices I + (shift) acting on
///             the first m+1 coordinates from the last m.
struct KleinDesc {
  KleinVariant variant = KleinVariant::Regular;
  int m = 1;                     // ignored for Regular
  std::vector<int> lambda = {};  // V2m only

  friend bool operator==(const KleinDesc&, const KleinDesc&) = default;
};

/// Permutation action on F^n: generator g maps e_i to e_{g[i]}.
struct PermDesc {
  int n = 1;
  std::vector<std::vector<int>> gens;

  friend bool operator==(const PermDesc&, const PermDesc&) = default;
};

/// The order p(p-1) group of invertible upper triangular 2x2 matrices with
/// first diagonal entry 1, acting naturally on F_p^2 with basis (X, Y).
/// Generators: "u" (the unipotent shear, a=b=1) and "t" (the diagonal torus
/// element with b the smallest primitive root mod p).
struct BorelDesc {
  std::int64_t p = 3;

  friend bool operator==(const BorelDesc&, const BorelDesc&) = default;
};

/// n-th symmetric power of the inner module; basis = monomials of degree n
/// in the inner basis vectors, in descending lexicographic order.
struct SymDesc {
  std::shared_ptr<const ModuleDescriptor> inner;
  int n = 1;
};

/// Dual module: every generator matrix A becomes (A^{-1})^T.
struct DualDesc {
  std::shared_ptr<const ModuleDescriptor> inner;
};

/// Direct sum; summands must expose identical generator label lists.
struct SumDesc {
  std::vector<ModuleDescriptor> summands;
};

struct ModuleDescriptor {
  std::variant<JordanDesc, WDesc, KleinDesc, PermDesc, BorelDesc, SymDesc, DualDesc, SumDesc>
      node;
};

/// Structural (deep) equality; shared inner descriptors compare by value.
bool operator==(const ModuleDescriptor& a, const ModuleDescriptor& b);
bool operator==(const SymDesc& a, const SymDesc& b);
bool operator==(const DualDesc& a, const DualDesc& b);
bool operator==(const SumDesc& a, const SumDesc& b);

/// A representation: labeled invertible generator matrices over a common
/// field. The descriptor, when present, records how the module was built.
struct MatrixGroupRep {
  FieldPtr field;
  std::size_t dim = 0;
  std::vector<std::pair<std::string, MatrixFq>> generators;
  std::optional<ModuleDescriptor> descriptor;

  const MatrixFq& generator(const std::string& label) const;
  std::vector<std::string> labels() const;
};

/// Full element list of the group generated by the generator matrices.
/// elements[0] is the identity; generators follow, then products in
/// breadth-first discovery order.
struct GroupClosure {
  std::vector<MatrixFq> elements;
  std::vector<std::int64_t> orders;         // multiplicative order per element
  std::vector<std::size_t> center_indices;  // indices of central elements

  std::int64_t order() const { return static_cast<std::int64_t>(elements.size()); }
};

/// Realises a descriptor over the given field. Throws FieldMismatch when the
/// characteristic or lambda is incompatible, BadParameter on invalid shapes.
MatrixGroupRep build(const ModuleDescriptor& desc, const FieldPtr& field);

/// Breadth-first closure of the generator set under multiplication.
/// Throws CapExceeded when the group has more than `cap` elements.
GroupClosure close_group(const MatrixGroupRep& rep, std::size_t cap = 2048);

MatrixGroupRep dual(const MatrixGroupRep& rep);
MatrixGroupRep direct_sum(const std::vector<MatrixGroupRep>& parts);

/// Canonical kernel basis of the stacked (A_g - I): the fixed space V^G.
std::vector<std::vector<fq_t>> fixed_space(const MatrixGroupRep& rep);

/// Jordan block sizes of a unipotent matrix, recovered from rank drops of
/// powers of (A - I); returned sorted descending. Throws NotUnipotent.
std::vector<int> jordan_type(const MatrixFq& a, std::int64_t p);

std::int64_t group_exponent(const GroupClosure& cl);
std::int64_t center_exponent(const GroupClosure& cl);

/// Order of the abstract group a descriptor denotes (p^r for Jordan modules,
/// p^r*m for W modules, 4 for Klein modules, p(p-1) for the Borel group),
/// independent of whether the matrix image is faithful. Empty for
/// permutation modules and heterogeneous sums.
std::optional<std::int64_t> descriptor_group_order(const ModuleDescriptor& desc);

/// Shape of a module built from Jordan summands of one cyclic p-group:
/// sizes n_j plus each summand's coordinate offset and terminal index.
struct CyclicJordanShape {
  std::int64_t p = 2;
  int r = 1;
  std::vector<int> sizes;
  std::vector<int> offsets;
  std::vector<int> terminals;
};

/// Recognises jordan{...} and sums of jordan summands with matching (p, r).
std::optional<CyclicJordanShape> cyclic_jordan_shape(const ModuleDescriptor& desc);

/// Recognises w{...} and sums of W summands with matching (p, r, m).
std::optional<std::vector<WDesc>> w_sum_shape(const ModuleDescriptor& desc);

/// Recognises klein{...} and sums of Klein summands.
std::optional<std::vector<KleinDesc>> klein_summands(const ModuleDescriptor& desc);

std::int64_t ipow(std::int64_t base, int exp);

}  // namespace sepdeg
