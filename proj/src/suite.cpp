#include "sepdeg/suite.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "sepdeg/version.hpp"

namespace sepdeg {

namespace {

ModuleDescriptor jordan(std::int64_t p, int r, int n) {
  return ModuleDescriptor{JordanDesc{p, r, n}};
}

ModuleDescriptor wmod(std::int64_t p, int r, std::int64_t m, int n, std::vector<int> lambda) {
  return ModuleDescriptor{WDesc{p, r, m, n, std::move(lambda)}};
}

ModuleDescriptor klein(KleinVariant v, int m = 1, std::vector<int> lambda = {}) {
  return ModuleDescriptor{KleinDesc{v, m, std::move(lambda)}};
}

ModuleDescriptor dsum(std::vector<ModuleDescriptor> parts) {
  return ModuleDescriptor{SumDesc{std::move(parts)}};
}

TargetSpec delta_target() { return TargetSpec{TargetKind::Delta, {}, 0, {}, {}, 0}; }
TargetSpec gamma_target() { return TargetSpec{TargetKind::Gamma, {}, 0, {}, {}, 0}; }

TargetSpec epsilon_target(std::vector<std::vector<int>> point) {
  return TargetSpec{TargetKind::Epsilon, std::move(point), 0, {}, {}, 0};
}

std::vector<std::vector<int>> unit_point(int dim, int index) {
  std::vector<std::vector<int>> p(static_cast<std::size_t>(dim), {0});
  p[static_cast<std::size_t>(index)] = {1};
  return p;
}

FieldSpec f2_spec() { return Field::make(2, 1)->spec(); }
FieldSpec f3_spec() { return Field::make(3, 1)->spec(); }
FieldSpec f4_spec() { return Field::make(2, 2)->spec(); }

}  // namespace

std::vector<SuiteEntry> paper_suite() {
  std::vector<SuiteEntry> entries;

  // Separating degrees at the fixed points of the indecomposable cyclic
  // modules, p = 2, r = 2.
  for (int n = 1; n <= 4; ++n)
    entries.push_back({"0" + std::to_string(n) + "-cyclic-epsilon-p2r2-n" + std::to_string(n),
                       jordan(2, 2, n),
                       f2_spec(),
                       {epsilon_target(unit_point(n, n - 1))}});

  entries.push_back({"05-cyclic-p3r2-v4",
                     jordan(3, 2, 4),
                     f3_spec(),
                     {epsilon_target(unit_point(4, 3)), delta_target()}});

  // Mixed support across two Jordan summands.
  {
    auto desc = dsum({jordan(2, 2, 3), jordan(2, 2, 2)});
    std::vector<std::vector<int>> both = unit_point(5, 2);
    both[4] = {1};
    entries.push_back({"06-mixed-support-v3v2",
                       desc,
                       f2_spec(),
                       {epsilon_target(unit_point(5, 2)), epsilon_target(unit_point(5, 4)),
                        epsilon_target(both)}});
  }

  // Terminal-exponent divisibility on every degree up to 6.
  {
    std::vector<TargetSpec> targets;
    for (int d = 1; d <= 6; ++d) targets.push_back(TargetSpec{TargetKind::LemmaDivide, {}, d, {}, {}, 0});
    entries.push_back(
        {"07-terminal-divisibility-v3v2", dsum({jordan(2, 2, 3), jordan(2, 2, 2)}), f2_spec(),
         std::move(targets)});
  }

  // Scaled cyclic modules: full group order for the faithful module, the
  // strictly smaller maximum for the split sum.
  entries.push_back({"08-gamma-w2-omega",
                     wmod(2, 1, 3, 2, {0, 1}),
                     f4_spec(),
                     {gamma_target(), delta_target()}});
  entries.push_back({"09-gamma-sum-counterexample",
                     dsum({wmod(2, 1, 3, 2, {1}), wmod(2, 1, 3, 1, {0, 1})}),
                     f4_spec(),
                     {gamma_target()}});

  // The Klein four table.
  entries.push_back({"10-klein-vreg", klein(KleinVariant::Regular), f2_spec(),
                     {delta_target(), gamma_target()}});
  entries.push_back({"11-klein-v2-0", klein(KleinVariant::V2m, 1, {0}), f2_spec(),
                     {delta_target(), gamma_target()}});
  entries.push_back({"12-klein-v2-omega", klein(KleinVariant::V2m, 1, {0, 1}), f4_spec(),
                     {delta_target(), gamma_target()}});
  entries.push_back({"13-klein-v4-0", klein(KleinVariant::V2m, 2, {0}), f2_spec(),
                     {delta_target(), gamma_target(),
                      TargetSpec{TargetKind::KleinAbsence, {}, 0, {}, {}, 0}}});
  entries.push_back({"14-klein-v4-omega", klein(KleinVariant::V2m, 2, {0, 1}), f4_spec(),
                     {delta_target(), gamma_target(),
                      TargetSpec{TargetKind::KleinAbsence, {}, 0, {}, {}, 0}}});
  entries.push_back({"15-klein-w2", klein(KleinVariant::W2m, 1), f2_spec(),
                     {delta_target(), gamma_target()}});
  entries.push_back({"16-klein-w4", klein(KleinVariant::W2m, 2), f2_spec(),
                     {delta_target(), gamma_target()}});
  entries.push_back({"17-klein-v3", klein(KleinVariant::VOdd, 1), f2_spec(),
                     {delta_target(), gamma_target()}});
  entries.push_back({"18-klein-v5", klein(KleinVariant::VOdd, 2), f2_spec(),
                     {delta_target(), gamma_target()}});
  entries.push_back({"19-klein-w3", klein(KleinVariant::WOdd, 1), f2_spec(),
                     {delta_target(), gamma_target()}});
  entries.push_back({"20-klein-w5", klein(KleinVariant::WOdd, 2), f2_spec(),
                     {delta_target(), gamma_target()}});

  // D8 acting on itself: the central-element bound, with the exact value
  // recorded. The heaviest kernel of the suite; degraded to a bound check
  // at degree 4 if it ever exceeds its budget.
  {
    std::vector<int> rho(8), s(8);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 2; ++j) {
        rho[static_cast<std::size_t>(i + 4 * j)] = (i + 1) % 4 + 4 * j;
        s[static_cast<std::size_t>(i + 4 * j)] = (4 - i) % 4 + 4 * (1 - j);
      }
    TargetSpec d8_delta = delta_target();
    d8_delta.budget_ms = 180000;
    d8_delta.degrade_degree = 4;
    entries.push_back(
        {"21-pgroup-d8-regular", ModuleDescriptor{PermDesc{8, {rho, s}}}, f2_spec(), {d8_delta}});
  }

  // Groups whose order is divisible by p exactly once.
  entries.push_back({"22-trichotomy-a3-natural", ModuleDescriptor{PermDesc{3, {{1, 2, 0}}}},
                     f3_spec(), {delta_target()}});
  entries.push_back({"23-trichotomy-s3-natural",
                     ModuleDescriptor{PermDesc{3, {{1, 2, 0}, {1, 0, 2}}}},
                     f3_spec(),
                     {delta_target()}});
  {
    auto borel_inner = std::make_shared<const ModuleDescriptor>(ModuleDescriptor{BorelDesc{3}});
    entries.push_back({"24-trichotomy-borel-sym1", ModuleDescriptor{SymDesc{borel_inner, 1}},
                       f3_spec(), {delta_target()}});
    entries.push_back({"25-trichotomy-borel-sym2", ModuleDescriptor{SymDesc{borel_inner, 2}},
                       f3_spec(), {delta_target()}});
  }
  entries.push_back(
      {"26-trichotomy-trivial-z6", wmod(2, 1, 3, 1, {1}), f2_spec(), {delta_target()}});
  entries.push_back(
      {"27-trichotomy-w1-omega-z6", wmod(2, 1, 3, 1, {0, 1}), f4_spec(), {delta_target()}});

  std::sort(entries.begin(), entries.end(),
            [](const SuiteEntry& a, const SuiteEntry& b) { return a.name < b.name; });
  return entries;
}

SuiteReport run_suite(const std::vector<SuiteEntry>& entries, const EngineLimits& limits, int jobs,
                      const std::shared_ptr<DimMemo>& memo) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();

  std::vector<SuiteEntry> ordered = entries;
  std::sort(ordered.begin(), ordered.end(),
            [](const SuiteEntry& a, const SuiteEntry& b) { return a.name < b.name; });

  SuiteReport report;
  report.version = kVersion;
  report.limits = limits;
  report.entries.resize(ordered.size());

  std::vector<std::exception_ptr> aborts(ordered.size());
  auto run_one = [&](std::size_t i) {
    const auto& e = ordered[i];
    const std::string prefix =
        descriptor_to_json(e.desc).dump() + "|" + field_to_json(e.field).dump();
    try {
      report.entries[i] =
          verify(e.name, e.desc, Field::make(e.field), e.targets, limits, memo, prefix);
    } catch (const Error& err) {
      if (is_engine_error(err.code())) {
        aborts[i] = std::current_exception();
        return;
      }
      // A module that cannot even be built is a failing entry rather than an
      // abort of the whole run.
      VerificationReport broken;
      broken.name = e.name;
      broken.descriptor = e.desc;
      broken.field = e.field;
      broken.pass = false;
      TargetResult t;
      t.key = "build";
      t.quantity = "build";
      t.computed = -1;
      t.pass = false;
      t.note = std::string("error: ") + err.what();
      broken.targets.push_back(std::move(t));
      report.entries[i] = std::move(broken);
    }
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < ordered.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const int nworkers = std::min<int>(jobs, static_cast<int>(ordered.size()));
    workers.reserve(static_cast<std::size_t>(nworkers));
    for (int w = 0; w < nworkers; ++w)
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < ordered.size(); i = next.fetch_add(1))
          run_one(i);
      });
    for (auto& w : workers) w.join();
  }
  for (auto& abort : aborts)
    if (abort) std::rethrow_exception(abort);

  report.pass = std::all_of(report.entries.begin(), report.entries.end(),
                            [](const VerificationReport& e) { return e.pass; });
  report.millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start).count();
  return report;
}

}  // namespace sepdeg
