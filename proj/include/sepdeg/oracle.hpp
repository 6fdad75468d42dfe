#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sepdeg/invariants.hpp"

namespace sepdeg {

/// Binomial coefficient mod p via base-p digits.
std::int64_t lucas(std::int64_t t, std::int64_t s, std::int64_t p);

enum class PredKind {
  EpsilonCyclic,
  DeltaCyclic,
  GammaW,
  GammaSum,
  KleinTable,
  PGroupLowerBound,
  CenterExponentBound,
  PmTrichotomy,
};

const char* pred_kind_name(PredKind kind);
std::optional<PredKind> pred_kind_from_name(const std::string& name);

/// Closed-form predicted value: exact when equality is claimed, otherwise a
/// lower bound. The hypothesis string records the checked preconditions.
struct Prediction {
  PredKind kind = PredKind::EpsilonCyclic;
  std::int64_t value = 0;
  bool exact = true;
  std::string hypothesis;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// Separating degree of a fixed point of a cyclic p-group module with
/// Jordan summand sizes `sizes`, supported on the summands in `support`
/// (0-based indices): p^s with s maximal such that p^{s-1} < n_j on the
/// support. Throws EmptySupport.
Prediction predict_epsilon_cyclic(const std::vector<int>& sizes, const std::vector<int>& support,
                                  std::int64_t p);

/// delta = p^r for a faithful module of the cyclic group of order p^r.
/// Throws NotFaithful unless some summand exceeds p^{r-1}.
Prediction predict_delta_cyclic_faithful(std::int64_t p, int r, const std::vector<int>& sizes);

/// gamma = p^s * m' for the n-dimensional module of the cyclic group of
/// order p^r m scaled by a root of unity of order m'.
Prediction predict_gamma_w(std::int64_t p, int r, std::int64_t m, int n,
                           std::int64_t lambda_order);

/// gamma of a direct sum: the maximum over the summands.
Prediction predict_gamma_sum(const std::vector<Prediction>& parts);

/// delta = gamma for Klein four modules: 2 when every summand is one of
/// V_{2,0}, V_{2,1}, W_2 or W_{2m+1}, else 4. lambda is compared exactly in
/// the field, with lambda = 1 normalised to lambda = 0 (same matrix group).
Prediction predict_klein(const std::vector<KleinDesc>& summands, const FieldPtr& field);

/// For a p-group closure: max p^r over elements of order p^r whose
/// p^{r-1} power is central. A lower bound for delta on faithful modules;
/// always >= exp(Z) >= p. Throws NotPGroup.
Prediction pgroup_lower_bound(const GroupClosure& cl, std::int64_t p);

/// The weaker central-exponent bound delta >= exp(Z). Throws NotPGroup.
Prediction predict_center_exponent_bound(const GroupClosure& cl, std::int64_t p);

/// Exact delta in {0, 1, p} for groups of order pm with gcd(p,m) = 1,
/// decided from V^G and the zero locus of the linear invariants alone.
/// The group order comes from the descriptor when available (the matrix
/// image may be unfaithful), else from the closure. Throws BadGroupOrder.
Prediction classify_pm(const MatrixGroupRep& rep, const GroupClosure* closure_hint = nullptr);

enum class TargetKind { Epsilon, Delta, Gamma, LemmaDivide, KleinAbsence };

const char* target_kind_name(TargetKind kind);

/// One verification target. `point` holds epsilon points as coordinate
/// vectors per entry (singleton vectors for prime fields). `expect`
/// optionally pins a value to compare against, on top of the predictors.
struct TargetSpec {
  TargetKind kind = TargetKind::Delta;
  std::vector<std::vector<int>> point;
  int degree = 0;                          // lemma_divide
  std::optional<std::int64_t> expect;
  std::optional<std::int64_t> budget_ms;   // delta/gamma soft budget
  int degrade_degree = 0;                  // degree cap applied after the budget trips
};

struct TargetResult {
  std::string key;       // canonical key, e.g. "epsilon@[0,0,1]"
  std::string quantity;  // target kind name
  std::vector<Prediction> predictions;
  std::optional<std::int64_t> expect;
  std::int64_t computed = 0;
  bool computed_is_lower_bound = false;
  std::vector<std::int64_t> per_degree_dims;
  std::string witness;
  std::string note;
  bool pass = false;
  std::int64_t millis = 0;  // presentation only, never serialised to JSON
};

bool equal_ignoring_millis(const TargetResult& a, const TargetResult& b);

struct VerificationReport {
  std::string name;
  ModuleDescriptor descriptor;
  FieldSpec field;
  std::vector<TargetResult> targets;  // sorted by canonical key
  bool pass = true;
  std::int64_t millis = 0;
};

bool equal_ignoring_millis(const VerificationReport& a, const VerificationReport& b);

/// Builds the module, attaches every applicable predictor to each target,
/// runs the brute-force engine and renders verdicts: exact predictions and
/// explicit expectations require equality, bounds require <= computed.
VerificationReport verify(const std::string& name, const ModuleDescriptor& desc,
                          const FieldPtr& field, const std::vector<TargetSpec>& targets,
                          const EngineLimits& limits = {},
                          const std::shared_ptr<DimMemo>& memo = nullptr,
                          const std::string& memo_prefix = {});

}  // namespace sepdeg
