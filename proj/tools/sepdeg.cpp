#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sepdeg/suite.hpp"
#include "sepdeg/version.hpp"

namespace {

using namespace sepdeg;

// exit codes: 0 pass, 1 verification failure, 2 input error, 3 engine/resource
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitEngine = 3;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::CapExceeded:
    case Errc::PointBudgetExceeded:
    case Errc::BudgetExceeded:
    case Errc::NotSeparated:
    case Errc::DivisionByZero:
    case Errc::ShapeMismatch:
    case Errc::Singular:
    case Errc::NotUnipotent:
    case Errc::Internal:
      return kExitEngine;
    default:
      return kExitInput;
  }
}

struct CommonOpts {
  std::string desc_json;
  std::string desc_file;
  std::string field_json;
  std::string format = "json";
  std::string out_path;
  std::size_t group_cap = 2048;
  std::size_t point_cap = 200000;
  int jobs = 1;
  std::uint64_t seed = 0;  // reserved for sampling-mode diagnostics
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_desc = true) {
  if (with_desc) {
    cmd->add_option("--desc", opts.desc_json, "inline descriptor JSON");
    cmd->add_option("--desc-file", opts.desc_file, "path to a descriptor JSON file");
  }
  cmd->add_option("--field", opts.field_json,
                  "field JSON, e.g. '{\"p\":2,\"k\":2,\"modulus\":[1,1,1]}'");
  cmd->add_option("--format", opts.format, "output format: json|csv|markdown");
  cmd->add_option("--out", opts.out_path, "write output to this path instead of stdout");
  cmd->add_option("--group-cap", opts.group_cap, "closure size cap");
  cmd->add_option("--point-cap", opts.point_cap, "projective point budget");
  cmd->add_option("--jobs", opts.jobs, "worker threads for independent verify targets");
  cmd->add_option("--seed", opts.seed, "reserved; not used by any computation");
}

ModuleDescriptor parse_descriptor(const CommonOpts& opts) {
  check(!opts.desc_json.empty() || !opts.desc_file.empty(), Errc::ParseError,
        "a descriptor is required (--desc or --desc-file)");
  check(opts.desc_json.empty() || opts.desc_file.empty(), Errc::ParseError,
        "--desc and --desc-file are mutually exclusive");
  std::string text = opts.desc_json;
  if (!opts.desc_file.empty()) {
    std::ifstream in(opts.desc_file);
    check(in.good(), Errc::ParseError, "cannot read " + opts.desc_file);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json j = json::parse(text, nullptr, false);
  check(!j.is_discarded(), Errc::ParseError, "descriptor is not valid JSON");
  return descriptor_from_json(j);
}

FieldPtr parse_field(const CommonOpts& opts, const ModuleDescriptor& desc) {
  if (opts.field_json.empty()) return default_field_for(desc);
  json j = json::parse(opts.field_json, nullptr, false);
  check(!j.is_discarded(), Errc::ParseError, "--field is not valid JSON");
  return Field::make(field_from_json(j));
}

void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  check(out.good(), Errc::ParseError, "cannot write " + opts.out_path);
  out << text;
}

std::string render(const CommonOpts& opts, const SuiteReport& report) {
  if (opts.format == "json") return suite_report_to_json(report).dump(2) + "\n";
  if (opts.format == "csv") return suite_report_to_csv(report);
  if (opts.format == "markdown") return suite_report_to_markdown(report);
  fail(Errc::ParseError, "unknown format '" + opts.format + "'");
}

// ---- SEPDEG_CACHE_DIR: on-disk memo of invariant dimensions ---------------

std::filesystem::path memo_path(const std::string& dir) {
  return std::filesystem::path(dir) / "dims.json";
}

std::shared_ptr<DimMemo> load_memo() {
  const char* dir = std::getenv("SEPDEG_CACHE_DIR");
  if (!dir || !*dir) return nullptr;
  auto memo = std::make_shared<DimMemo>();
  std::ifstream in(memo_path(dir));
  if (in.good()) {
    json j = json::parse(in, nullptr, false);
    if (j.is_object())
      for (const auto& [key, value] : j.items())
        if (value.is_number_integer()) memo->dims[key] = value.get<std::int64_t>();
  }
  return memo;
}

void save_memo(const std::shared_ptr<DimMemo>& memo) {
  const char* dir = std::getenv("SEPDEG_CACHE_DIR");
  if (!dir || !*dir || !memo) return;
  std::lock_guard<std::mutex> lock(memo->mu);
  if (!memo->dirty) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream out(memo_path(dir), std::ios::binary);
  if (!out.good()) return;  // cache persistence is best effort
  out << json(memo->dims).dump(2) << "\n";
  memo->dirty = false;
}

// ---- subcommands -----------------------------------------------------------

int cmd_invariants(const CommonOpts& opts, int degree) {
  auto desc = parse_descriptor(opts);
  auto field = parse_field(opts, desc);
  InvariantEngine engine(build(desc, field), EngineLimits{opts.group_cap, opts.point_cap});
  auto memo = load_memo();
  if (memo)
    engine.attach_dim_memo(memo, descriptor_to_json(desc).dump() + "|" +
                                     field_to_json(field->spec()).dump());
  const auto& basis = engine.invariant_basis(degree);
  std::string line = "dim=" + std::to_string(basis.dim()) + ":";
  for (std::size_t i = 0; i < basis.basis.size(); ++i)
    line += (i ? " ; " : " ") + basis.basis[i].to_string();
  if (basis.basis.empty()) line += " (empty)";
  emit(opts, line + "\n");
  save_memo(memo);
  return 0;
}

int cmd_compute(const CommonOpts& opts, const std::string& quantity,
                const std::string& point_json) {
  auto desc = parse_descriptor(opts);
  auto field = parse_field(opts, desc);
  TargetSpec target;
  if (quantity == "delta") {
    target.kind = TargetKind::Delta;
  } else if (quantity == "gamma") {
    target.kind = TargetKind::Gamma;
  } else if (quantity == "epsilon") {
    target.kind = TargetKind::Epsilon;
    check(!point_json.empty(), Errc::ParseError, "epsilon needs --point '[..]'");
    json pj = json::parse(point_json, nullptr, false);
    check(!pj.is_discarded(), Errc::ParseError, "--point is not valid JSON");
    target.point = point_from_json(pj);
    bool nonzero = false;
    for (const auto& c : target.point)
      for (int x : c) nonzero = nonzero || x != 0;
    check(nonzero, Errc::ParseError, "--point must be nonzero");
  } else {
    fail(Errc::ParseError, "unknown quantity '" + quantity + "' (epsilon|delta|gamma)");
  }

  auto memo = load_memo();
  const std::string prefix =
      descriptor_to_json(desc).dump() + "|" + field_to_json(field->spec()).dump();
  SuiteReport report;
  report.version = kVersion;
  report.limits = EngineLimits{opts.group_cap, opts.point_cap};
  report.entries.push_back(
      verify("compute", desc, field, {target}, report.limits, memo, prefix));
  report.pass = report.entries[0].pass;
  emit(opts, render(opts, report));
  save_memo(memo);
  return report.pass ? 0 : kExitFail;
}

int cmd_verify(const CommonOpts& opts, const std::string& suite_name,
               const std::string& targets_csv) {
  EngineLimits limits{opts.group_cap, opts.point_cap};
  auto memo = load_memo();
  SuiteReport report;
  if (!suite_name.empty()) {
    check(suite_name == "paper", Errc::ParseError, "unknown suite '" + suite_name + "'");
    report = run_suite(paper_suite(), limits, opts.jobs, memo);
  } else {
    auto desc = parse_descriptor(opts);
    auto field = parse_field(opts, desc);
    check(!targets_csv.empty(), Errc::ParseError,
          "--targets is required unless --suite is given");
    std::vector<TargetSpec> targets;
    std::stringstream ss(targets_csv);
    std::string item;
    while (std::getline(ss, item, ';')) {
      if (!item.empty()) targets.push_back(target_from_string(item));
    }
    check(!targets.empty(), Errc::ParseError, "no targets given");
    SuiteEntry entry{"cli", desc, field->spec(), std::move(targets)};
    report = run_suite({entry}, limits, 1, memo);
  }
  emit(opts, render(opts, report));
  save_memo(memo);
  return report.pass ? 0 : kExitFail;
}

struct TableRow {
  std::string label;
  std::int64_t predicted;
  std::int64_t computed;
  bool pass;
};

std::string render_table(const CommonOpts& opts, const std::string& title,
                         const std::vector<TableRow>& rows) {
  if (opts.format == "csv") {
    std::string out = "module,predicted,computed,verdict\n";
    for (const auto& r : rows)
      out += r.label + "," + std::to_string(r.predicted) + "," + std::to_string(r.computed) +
             "," + (r.pass ? "pass" : "fail") + "\n";
    return out;
  }
  check(opts.format == "markdown" || opts.format == "json", Errc::ParseError,
        "unknown format '" + opts.format + "'");
  std::string out = "# " + title + "\n\n| module | predicted | computed | verdict |\n| --- | --- | --- | --- |\n";
  for (const auto& r : rows)
    out += "| " + r.label + " | " + std::to_string(r.predicted) + " | " +
           std::to_string(r.computed) + " | " + (r.pass ? "pass" : "fail") + " |\n";
  return out;
}

int cmd_tables(const CommonOpts& opts, const std::string& table, std::int64_t p, int r) {
  std::vector<TableRow> rows;
  std::string title;
  EngineLimits limits{opts.group_cap, opts.point_cap};

  if (table == "klein") {
    title = "Klein four modules: delta = gamma";
    auto f2 = Field::make(2, 1);
    auto f4 = Field::make(2, 2);
    struct Item {
      std::string label;
      KleinDesc desc;
      FieldPtr field;
    };
    const std::vector<Item> items = {
        {"V_reg", {KleinVariant::Regular, 1, {}}, f2},
        {"V_{2,0}", {KleinVariant::V2m, 1, {0}}, f2},
        {"V_{2,w}", {KleinVariant::V2m, 1, {0, 1}}, f4},
        {"V_{4,0}", {KleinVariant::V2m, 2, {0}}, f2},
        {"V_{4,w}", {KleinVariant::V2m, 2, {0, 1}}, f4},
        {"W2", {KleinVariant::W2m, 1, {}}, f2},
        {"W4", {KleinVariant::W2m, 2, {}}, f2},
        {"V3", {KleinVariant::VOdd, 1, {}}, f2},
        {"V5", {KleinVariant::VOdd, 2, {}}, f2},
        {"W3", {KleinVariant::WOdd, 1, {}}, f2},
        {"W5", {KleinVariant::WOdd, 2, {}}, f2},
    };
    for (const auto& item : items) {
      const auto predicted = predict_klein({item.desc}, item.field).value;
      InvariantEngine engine(build(ModuleDescriptor{item.desc}, item.field), limits);
      const auto delta = engine.delta_value();
      const auto gamma = engine.gamma_value();
      rows.push_back({item.label, predicted, delta,
                      delta == gamma && delta == predicted});
    }
  } else if (table == "cyclic-epsilon") {
    title = "Separating degree at the terminal fixed point, p=" + std::to_string(p) +
            ", r=" + std::to_string(r);
    auto field = Field::make(p, 1);
    const std::int64_t full = ipow(p, r);
    const int max_n = static_cast<int>(std::min<std::int64_t>(full, 4));
    for (int n = 1; n <= max_n; ++n) {
      const auto predicted = predict_epsilon_cyclic({n}, {0}, p).value;
      InvariantEngine engine(build(ModuleDescriptor{JordanDesc{p, r, n}}, field), limits);
      std::vector<fq_t> point(static_cast<std::size_t>(n), 0);
      point.back() = 1;
      const auto computed = engine.epsilon(point).degree_found;
      rows.push_back({"V" + std::to_string(n), predicted, computed, predicted == computed});
    }
  } else if (table == "pm-trichotomy") {
    title = "delta for groups of order pm";
    auto f2 = Field::make(2, 1);
    auto f3 = Field::make(3, 1);
    auto f4 = Field::make(2, 2);
    auto borel_inner = std::make_shared<const ModuleDescriptor>(ModuleDescriptor{BorelDesc{3}});
    struct Item {
      std::string label;
      ModuleDescriptor desc;
      FieldPtr field;
    };
    const std::vector<Item> items = {
        {"A3-natural", ModuleDescriptor{PermDesc{3, {{1, 2, 0}}}}, f3},
        {"S3-natural", ModuleDescriptor{PermDesc{3, {{1, 2, 0}, {1, 0, 2}}}}, f3},
        {"borel3-sym1", ModuleDescriptor{SymDesc{borel_inner, 1}}, f3},
        {"borel3-sym2", ModuleDescriptor{SymDesc{borel_inner, 2}}, f3},
        {"trivial-Z6", ModuleDescriptor{WDesc{2, 1, 3, 1, {1}}}, f2},
        {"W_{1,w}-Z6", ModuleDescriptor{WDesc{2, 1, 3, 1, {0, 1}}}, f4},
    };
    for (const auto& item : items) {
      auto rep = build(item.desc, item.field);
      const auto predicted = classify_pm(rep).value;
      InvariantEngine engine(rep, limits);
      const auto computed = engine.delta_value();
      rows.push_back({item.label, predicted, computed, predicted == computed});
    }
  } else {
    fail(Errc::UnknownTable, "unknown table '" + table + "' (klein|cyclic-epsilon|pm-trichotomy)");
  }

  emit(opts, render_table(opts, title, rows));
  for (const auto& row : rows)
    if (!row.pass) return kExitFail;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact separating degrees of modular representations over finite fields"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonOpts inv_opts;
  int inv_degree = 1;
  auto* inv = app.add_subcommand("invariants", "print a graded invariant basis");
  add_common(inv, inv_opts);
  inv->add_option("--degree", inv_degree, "homogeneous degree")->required();

  CommonOpts cmp_opts;
  std::string cmp_quantity, cmp_point;
  auto* cmp = app.add_subcommand("compute", "compute epsilon, delta or gamma");
  add_common(cmp, cmp_opts);
  cmp->add_option("quantity", cmp_quantity, "epsilon|delta|gamma")->required();
  cmp->add_option("--point", cmp_point, "point for epsilon, e.g. '[0,0,1]'");

  CommonOpts ver_opts;
  std::string ver_suite, ver_targets;
  auto* ver = app.add_subcommand("verify", "compare predictions against brute force");
  add_common(ver, ver_opts);
  ver->add_option("--suite", ver_suite, "named suite: paper");
  ver->add_option("--targets", ver_targets,
                  "semicolon-separated targets, e.g. 'delta;epsilon@[0,0,1];lemma_divide@4'");

  CommonOpts tab_opts;
  tab_opts.format = "markdown";
  std::string tab_name;
  std::int64_t tab_p = 2;
  int tab_r = 2;
  auto* tab = app.add_subcommand("tables", "render a classification table");
  add_common(tab, tab_opts, false);
  tab->add_option("table", tab_name, "klein|cyclic-epsilon|pm-trichotomy")->required();
  tab->add_option("--p", tab_p, "characteristic for cyclic-epsilon");
  tab->add_option("--r", tab_r, "exponent for cyclic-epsilon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (inv->parsed()) return cmd_invariants(inv_opts, inv_degree);
    if (cmp->parsed()) return cmd_compute(cmp_opts, cmp_quantity, cmp_point);
    if (ver->parsed()) return cmd_verify(ver_opts, ver_suite, ver_targets);
    if (tab->parsed()) return cmd_tables(tab_opts, tab_name, tab_p, tab_r);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEngine;
  }
  return kExitInput;
}
