#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sepdeg/mpoly.hpp"
#include "sepdeg/reps.hpp"

namespace sepdeg {

/// Images of the variables under a generator: x_i maps to the linear form
/// given by row i of the inverse generator matrix, so that (g.f)(v) equals
/// f(g^{-1} v).
std::vector<Polynomial> coaction(const MatrixGroupRep& rep, const std::string& label);

/// g.f for a single generator.
Polynomial group_action(const MatrixGroupRep& rep, const std::string& label, const Polynomial& f);

/// (g.f) - f; vanishes exactly on g-invariants.
Polynomial delta_op(const MatrixGroupRep& rep, const std::string& label, const Polynomial& f);

/// Matrix of f -> g.f on the degree-d monomial basis (columns and rows in
/// descending lex order, the global graded-basis contract).
MatrixFq graded_action_matrix(const MatrixGroupRep& rep, const std::string& label, int degree);

/// Canonical basis of the degree-d invariants, in reduced kernel form with
/// lex-leading coefficients normalised to 1.
struct GradedInvariantBasis {
  int degree = 0;
  std::int64_t ambient_dim = 0;
  std::vector<Polynomial> basis;

  std::int64_t dim() const { return static_cast<std::int64_t>(basis.size()); }
};

struct SeparationResult {
  std::vector<fq_t> point;
  int degree_found = 0;
  Polynomial witness;
  std::vector<std::int64_t> per_degree_dims;  // dims for d = 1..degree_found
};

struct TerminalDivisibilityReport {
  int degree = 0;
  std::int64_t monomials_seen = 0;      // distinct basis monomials scanned
  std::int64_t purely_terminal = 0;     // distinct monomials on terminal variables only
  std::vector<std::string> violations;  // expected empty

  bool pass() const { return violations.empty(); }
};

struct EngineLimits {
  std::size_t group_cap = 2048;
  std::size_t point_cap = 200000;
};

/// Cooperative budget for long searches; checked between degrees and points.
using Deadline = std::optional<std::chrono::steady_clock::time_point>;

/// Shared memo of graded invariant dimensions, persisted by the CLI when
/// SEPDEG_CACHE_DIR is set. Stored dimensions are cross-checked against
/// fresh computations; a mismatch is reported as an internal error.
struct DimMemo {
  std::mutex mu;
  std::map<std::string, std::int64_t> dims;
  bool dirty = false;
};

/// Brute-force engine for one representation: graded invariant bases with a
/// per-degree cache, separating-degree searches, orbit products and the
/// degree-one geometry. Bases are immutable once computed; the cache is a
/// concurrency-safe memo, so epsilon calls for distinct points may run in
/// parallel on one engine.
class InvariantEngine {
 public:
  explicit InvariantEngine(MatrixGroupRep rep, EngineLimits limits = {});

  const MatrixGroupRep& rep() const { return rep_; }
  const EngineLimits& limits() const { return limits_; }

  /// Attaches the dimension memo; `key_prefix` identifies (descriptor, field).
  void attach_dim_memo(std::shared_ptr<DimMemo> memo, std::string key_prefix);

  const GroupClosure& closure();
  std::int64_t group_order() { return closure().order(); }

  const GradedInvariantBasis& invariant_basis(int degree);

  /// Dimensions of the invariant spaces for d = 1..max_degree.
  std::vector<std::int64_t> dims_up_to(int max_degree);

  /// True when some degree-d invariant has a nonzero coefficient on m.
  bool monomial_in_invariants(int degree, const Monomial& m);

  /// Smallest d >= 1 with an invariant of degree d not vanishing at the
  /// point, together with the first such canonical basis element. Searches
  /// up to max_degree (default: the group order).
  SeparationResult epsilon(const std::vector<fq_t>& point,
                           std::optional<std::int64_t> max_degree = std::nullopt,
                           const Deadline& deadline = std::nullopt);

  /// Max of epsilon over projective representatives of the fixed space
  /// (0 when it is trivial) / of the whole module.
  std::int64_t delta_value(const Deadline& deadline = std::nullopt);
  std::int64_t gamma_value(const Deadline& deadline = std::nullopt);

  /// Result of a degree-capped search: when some point resists separation
  /// within the cap, `value` is only a lower bound (cap + 1).
  struct CappedValue {
    std::int64_t value = 0;
    bool lower_bound_only = false;
  };

  /// delta with the epsilon searches cut off at degree_cap.
  CappedValue delta_value_capped(int degree_cap, const Deadline& deadline = std::nullopt);

  /// Product of the distinct images of a linear form under the full group;
  /// invariant of degree = orbit size.
  Polynomial orbit_product(const Polynomial& linear_form);

  /// Canonical basis of the common zero set of the degree-one invariants.
  std::vector<std::vector<fq_t>> v_zero();

  /// Checks the terminal-exponent divisibility law on the degree-d basis of
  /// a module built from Jordan summands of one cyclic p-group.
  TerminalDivisibilityReport terminal_divisibility_check(int degree);

 private:
  CappedValue max_epsilon_over_span(const std::vector<std::vector<fq_t>>& basis,
                                    const Deadline& deadline,
                                    std::optional<int> degree_cap = std::nullopt);
  std::shared_ptr<const GradedInvariantBasis> compute_basis(int degree) const;
  void memo_dim(int degree, std::int64_t dim) const;

  MatrixGroupRep rep_;
  EngineLimits limits_;
  mutable std::mutex mu_;
  std::map<int, std::shared_ptr<const GradedInvariantBasis>> cache_;
  std::optional<GroupClosure> closure_;
  std::shared_ptr<DimMemo> memo_;
  std::string memo_prefix_;
};

}  // namespace sepdeg
