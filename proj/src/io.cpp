#include "sepdeg/io.hpp"

#include <algorithm>

#include "sepdeg/version.hpp"

namespace sepdeg {

namespace {

json int_vector(const std::vector<int>& v) { return json(v); }

std::vector<int> int_vector_from(const json& j, const char* what) {
  check(j.is_array(), Errc::ParseError, std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& e : j) {
    check(e.is_number_integer(), Errc::ParseError, std::string(what) + " entries must be integers");
    out.push_back(e.get<int>());
  }
  return out;
}

const char* klein_variant_name(KleinVariant v) {
  switch (v) {
    case KleinVariant::Regular: return "regular";
    case KleinVariant::V2m: return "v2m";
    case KleinVariant::W2m: return "w2m";
    case KleinVariant::VOdd: return "v_odd";
    case KleinVariant::WOdd: return "w_odd";
  }
  return "?";
}

KleinVariant klein_variant_from(const std::string& name) {
  for (KleinVariant v : {KleinVariant::Regular, KleinVariant::V2m, KleinVariant::W2m,
                         KleinVariant::VOdd, KleinVariant::WOdd})
    if (name == klein_variant_name(v)) return v;
  fail(Errc::ParseError, "unknown klein variant '" + name + "'");
}

template <typename T>
T field_at(const json& j, const char* key) {
  check(j.contains(key), Errc::ParseError, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(Errc::ParseError, std::string("bad value for key '") + key + "'");
  }
}

}  // namespace

json field_to_json(const FieldSpec& spec) {
  return json{{"p", spec.p}, {"k", spec.k}, {"modulus", int_vector(spec.modulus)}};
}

FieldSpec field_from_json(const json& j) {
  check(j.is_object(), Errc::ParseError, "field descriptor must be an object");
  FieldSpec spec;
  spec.p = field_at<std::int64_t>(j, "p");
  spec.k = field_at<int>(j, "k");
  if (j.contains("modulus")) {
    spec.modulus = int_vector_from(j.at("modulus"), "modulus");
  } else {
    check(Field::has_builtin_modulus(spec.p, spec.k), Errc::ParseError,
          "no built-in modulus for this (p,k); supply one");
    spec.modulus = Field::make(spec.p, spec.k)->spec().modulus;
  }
  return spec;
}

json descriptor_to_json(const ModuleDescriptor& desc) {
  return std::visit(
      [](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, JordanDesc>) {
          return json{{"type", "jordan"}, {"p", node.p}, {"r", node.r}, {"n", node.n}};
        } else if constexpr (std::is_same_v<T, WDesc>) {
          return json{{"type", "w"},     {"p", node.p}, {"r", node.r},
                      {"m", node.m},     {"n", node.n}, {"lambda", int_vector(node.lambda)}};
        } else if constexpr (std::is_same_v<T, KleinDesc>) {
          json j{{"type", "klein"}, {"variant", klein_variant_name(node.variant)}};
          if (node.variant != KleinVariant::Regular) j["m"] = node.m;
          if (node.variant == KleinVariant::V2m) j["lambda"] = int_vector(node.lambda);
          return j;
        } else if constexpr (std::is_same_v<T, PermDesc>) {
          json gens = json::array();
          for (const auto& g : node.gens) gens.push_back(int_vector(g));
          return json{{"type", "perm"}, {"n", node.n}, {"gens", gens}};
        } else if constexpr (std::is_same_v<T, BorelDesc>) {
          return json{{"type", "borel"}, {"p", node.p}};
        } else if constexpr (std::is_same_v<T, SymDesc>) {
          return json{{"type", "sym"}, {"n", node.n}, {"inner", descriptor_to_json(*node.inner)}};
        } else if constexpr (std::is_same_v<T, DualDesc>) {
          return json{{"type", "dual"}, {"inner", descriptor_to_json(*node.inner)}};
        } else {
          static_assert(std::is_same_v<T, SumDesc>);
          json summands = json::array();
          for (const auto& s : node.summands) summands.push_back(descriptor_to_json(s));
          return json{{"type", "sum"}, {"summands", summands}};
        }
      },
      desc.node);
}

ModuleDescriptor descriptor_from_json(const json& j) {
  check(j.is_object(), Errc::ParseError, "descriptor must be an object");
  const auto type = field_at<std::string>(j, "type");
  if (type == "jordan") {
    return ModuleDescriptor{JordanDesc{field_at<std::int64_t>(j, "p"), field_at<int>(j, "r"),
                                       field_at<int>(j, "n")}};
  }
  if (type == "w") {
    return ModuleDescriptor{WDesc{field_at<std::int64_t>(j, "p"), field_at<int>(j, "r"),
                                  field_at<std::int64_t>(j, "m"), field_at<int>(j, "n"),
                                  int_vector_from(j.at("lambda"), "lambda")}};
  }
  if (type == "klein") {
    KleinDesc k;
    k.variant = klein_variant_from(field_at<std::string>(j, "variant"));
    if (k.variant != KleinVariant::Regular) k.m = field_at<int>(j, "m");
    if (k.variant == KleinVariant::V2m) k.lambda = int_vector_from(j.at("lambda"), "lambda");
    return ModuleDescriptor{std::move(k)};
  }
  if (type == "perm") {
    PermDesc p;
    p.n = field_at<int>(j, "n");
    check(j.contains("gens") && j.at("gens").is_array(), Errc::ParseError,
          "perm descriptor needs a 'gens' array");
    for (const auto& g : j.at("gens")) p.gens.push_back(int_vector_from(g, "permutation"));
    return ModuleDescriptor{std::move(p)};
  }
  if (type == "borel") {
    return ModuleDescriptor{BorelDesc{field_at<std::int64_t>(j, "p")}};
  }
  if (type == "sym") {
    SymDesc s;
    s.n = field_at<int>(j, "n");
    check(j.contains("inner"), Errc::ParseError, "sym descriptor needs an 'inner' module");
    s.inner = std::make_shared<const ModuleDescriptor>(descriptor_from_json(j.at("inner")));
    return ModuleDescriptor{std::move(s)};
  }
  if (type == "dual") {
    check(j.contains("inner"), Errc::ParseError, "dual descriptor needs an 'inner' module");
    return ModuleDescriptor{
        DualDesc{std::make_shared<const ModuleDescriptor>(descriptor_from_json(j.at("inner")))}};
  }
  if (type == "sum") {
    SumDesc s;
    check(j.contains("summands") && j.at("summands").is_array(), Errc::ParseError,
          "sum descriptor needs a 'summands' array");
    for (const auto& part : j.at("summands")) s.summands.push_back(descriptor_from_json(part));
    return ModuleDescriptor{std::move(s)};
  }
  fail(Errc::ParseError, "unknown descriptor type '" + type + "'");
}

namespace {

void scan_scalars(const ModuleDescriptor& desc, std::optional<std::int64_t>& p, int& k) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        auto merge_p = [&](std::int64_t cand) {
          check(!p || *p == cand, Errc::ParseError,
                "descriptor mixes characteristics; supply an explicit field");
          p = cand;
        };
        if constexpr (std::is_same_v<T, JordanDesc>) {
          merge_p(node.p);
        } else if constexpr (std::is_same_v<T, WDesc>) {
          merge_p(node.p);
          k = std::max<int>(k, static_cast<int>(node.lambda.size()));
        } else if constexpr (std::is_same_v<T, KleinDesc>) {
          merge_p(2);
          k = std::max<int>(k, static_cast<int>(node.lambda.size()));
        } else if constexpr (std::is_same_v<T, BorelDesc>) {
          merge_p(node.p);
        } else if constexpr (std::is_same_v<T, SymDesc>) {
          scan_scalars(*node.inner, p, k);
        } else if constexpr (std::is_same_v<T, DualDesc>) {
          scan_scalars(*node.inner, p, k);
        } else if constexpr (std::is_same_v<T, SumDesc>) {
          for (const auto& s : node.summands) scan_scalars(s, p, k);
        }
        // permutation modules are characteristic-free
      },
      desc.node);
}

}  // namespace

FieldPtr default_field_for(const ModuleDescriptor& desc) {
  std::optional<std::int64_t> p;
  int k = 1;
  scan_scalars(desc, p, k);
  check(p.has_value(), Errc::ParseError,
        "descriptor does not determine a characteristic; supply --field");
  check(Field::has_builtin_modulus(*p, k), Errc::ParseError,
        "no built-in field for p=" + std::to_string(*p) + ", k=" + std::to_string(k) +
            "; supply --field");
  return Field::make(*p, k);
}

std::vector<std::vector<int>> point_from_json(const json& j) {
  check(j.is_array(), Errc::ParseError, "point must be an array");
  std::vector<std::vector<int>> out;
  for (const auto& e : j) {
    if (e.is_number_integer()) {
      out.push_back({e.get<int>()});
    } else {
      out.push_back(int_vector_from(e, "point coordinate"));
    }
  }
  return out;
}

TargetSpec target_from_string(const std::string& text) {
  TargetSpec spec;
  std::string body = text;
  // optional "=N" expectation suffix (split at the last '=')
  const auto eq = body.rfind('=');
  if (eq != std::string::npos && body.find(']', eq) == std::string::npos) {
    try {
      spec.expect = std::stoll(body.substr(eq + 1));
    } catch (...) {
      fail(Errc::ParseError, "bad expected value in target '" + text + "'");
    }
    body = body.substr(0, eq);
  }
  const auto at = body.find('@');
  const std::string head = at == std::string::npos ? body : body.substr(0, at);
  const std::string arg = at == std::string::npos ? "" : body.substr(at + 1);
  if (head == "delta") {
    spec.kind = TargetKind::Delta;
  } else if (head == "gamma") {
    spec.kind = TargetKind::Gamma;
  } else if (head == "epsilon") {
    spec.kind = TargetKind::Epsilon;
    check(!arg.empty(), Errc::ParseError, "epsilon target needs a point, e.g. epsilon@[0,0,1]");
    json pj = json::parse(arg, nullptr, false);
    check(!pj.is_discarded(), Errc::ParseError, "bad point JSON in target '" + text + "'");
    spec.point = point_from_json(pj);
    bool nonzero = false;
    for (const auto& c : spec.point)
      for (int x : c) nonzero = nonzero || x != 0;
    check(nonzero, Errc::ParseError, "epsilon points must be nonzero");
  } else if (head == "lemma_divide") {
    spec.kind = TargetKind::LemmaDivide;
    check(!arg.empty(), Errc::ParseError, "lemma_divide target needs a degree");
    try {
      spec.degree = std::stoi(arg);
    } catch (...) {
      fail(Errc::ParseError, "bad degree in target '" + text + "'");
    }
  } else if (head == "klein_absence") {
    spec.kind = TargetKind::KleinAbsence;
  } else {
    fail(Errc::ParseError, "unknown target '" + head + "'");
  }
  return spec;
}

namespace {

json prediction_to_json(const Prediction& p) {
  return json{{"kind", pred_kind_name(p.kind)},
              {"value", p.value},
              {"exact", p.exact},
              {"hypothesis", p.hypothesis}};
}

Prediction prediction_from_json(const json& j) {
  Prediction p;
  const auto kind = pred_kind_from_name(field_at<std::string>(j, "kind"));
  check(kind.has_value(), Errc::ParseError, "unknown prediction kind");
  p.kind = *kind;
  p.value = field_at<std::int64_t>(j, "value");
  p.exact = field_at<bool>(j, "exact");
  p.hypothesis = field_at<std::string>(j, "hypothesis");
  return p;
}

json target_to_json(const TargetResult& t) {
  json j{{"key", t.key},
         {"quantity", t.quantity},
         {"computed", t.computed},
         {"lower_bound_only", t.computed_is_lower_bound},
         {"per_degree_dims", json(t.per_degree_dims)},
         {"witness", t.witness},
         {"note", t.note},
         {"verdict", t.pass ? "pass" : "fail"}};
  json preds = json::array();
  for (const auto& p : t.predictions) preds.push_back(prediction_to_json(p));
  j["predictions"] = preds;
  if (t.expect) j["expect"] = *t.expect;
  return j;
}

TargetResult target_from_json(const json& j) {
  TargetResult t;
  t.key = field_at<std::string>(j, "key");
  t.quantity = field_at<std::string>(j, "quantity");
  t.computed = field_at<std::int64_t>(j, "computed");
  t.computed_is_lower_bound = field_at<bool>(j, "lower_bound_only");
  for (const auto& d : j.at("per_degree_dims")) t.per_degree_dims.push_back(d.get<std::int64_t>());
  t.witness = field_at<std::string>(j, "witness");
  t.note = field_at<std::string>(j, "note");
  t.pass = field_at<std::string>(j, "verdict") == "pass";
  for (const auto& p : j.at("predictions")) t.predictions.push_back(prediction_from_json(p));
  if (j.contains("expect")) t.expect = j.at("expect").get<std::int64_t>();
  return t;
}

}  // namespace

json report_to_json(const VerificationReport& report) {
  json targets = json::array();
  for (const auto& t : report.targets) targets.push_back(target_to_json(t));
  return json{{"name", report.name},
              {"descriptor", descriptor_to_json(report.descriptor)},
              {"field", field_to_json(report.field)},
              {"targets", targets},
              {"verdict", report.pass ? "pass" : "fail"}};
}

VerificationReport report_from_json(const json& j) {
  VerificationReport report;
  report.name = field_at<std::string>(j, "name");
  report.descriptor = descriptor_from_json(j.at("descriptor"));
  report.field = field_from_json(j.at("field"));
  for (const auto& t : j.at("targets")) report.targets.push_back(target_from_json(t));
  report.pass = field_at<std::string>(j, "verdict") == "pass";
  return report;
}

json suite_report_to_json(const SuiteReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) entries.push_back(report_to_json(e));
  return json{{"version", report.version},
              {"caps",
               json{{"group_cap", report.limits.group_cap}, {"point_cap", report.limits.point_cap}}},
              {"entries", entries},
              {"verdict", report.pass ? "pass" : "fail"}};
}

SuiteReport suite_report_from_json(const json& j) {
  SuiteReport report;
  report.version = field_at<std::string>(j, "version");
  report.limits.group_cap = j.at("caps").at("group_cap").get<std::size_t>();
  report.limits.point_cap = j.at("caps").at("point_cap").get<std::size_t>();
  for (const auto& e : j.at("entries")) report.entries.push_back(report_from_json(e));
  report.pass = field_at<std::string>(j, "verdict") == "pass";
  return report;
}

bool equal_ignoring_millis(const SuiteReport& a, const SuiteReport& b) {
  if (!(a.version == b.version && a.limits.group_cap == b.limits.group_cap &&
        a.limits.point_cap == b.limits.point_cap && a.pass == b.pass &&
        a.entries.size() == b.entries.size()))
    return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    if (!equal_ignoring_millis(a.entries[i], b.entries[i])) return false;
  return true;
}

namespace {

std::string csv_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Strongest prediction for the presentation columns: an explicit expectation
// or exact prediction verbatim, else the best lower bound as ">=N".
std::string predicted_column(const TargetResult& t) {
  if (t.expect) return std::to_string(*t.expect);
  std::optional<std::int64_t> bound;
  for (const auto& p : t.predictions) {
    if (p.exact) return std::to_string(p.value);
    bound = std::max(bound.value_or(0), p.value);
  }
  return bound ? ">=" + std::to_string(*bound) : "";
}

std::string computed_column(const TargetResult& t) {
  if (t.computed < 0) return "error";
  return (t.computed_is_lower_bound ? ">=" : "") + std::to_string(t.computed);
}

}  // namespace

std::string suite_report_to_csv(const SuiteReport& report) {
  std::string out = "descriptor,field,quantity,predicted,computed,verdict,millis\n";
  for (const auto& e : report.entries) {
    const std::string desc = csv_escape(descriptor_to_json(e.descriptor).dump());
    const std::string field = csv_escape(field_to_json(e.field).dump());
    for (const auto& t : e.targets) {
      out += desc + "," + field + "," + csv_escape(t.key) + "," + predicted_column(t) + "," +
             computed_column(t) + "," + (t.pass ? "pass" : "fail") + "," +
             std::to_string(t.millis) + "\n";
    }
  }
  return out;
}

std::string suite_report_to_markdown(const SuiteReport& report) {
  std::string out = "# Verification report (v" + report.version + ")\n\n";
  out += "Overall: **" + std::string(report.pass ? "pass" : "fail") + "**\n";
  for (const auto& e : report.entries) {
    out += "\n## " + e.name + "\n\n";
    out += "- descriptor: `" + descriptor_to_json(e.descriptor).dump() + "`\n";
    out += "- field: `" + field_to_json(e.field).dump() + "`\n\n";
    out += "| target | predicted | computed | verdict | millis |\n";
    out += "| --- | --- | --- | --- | --- |\n";
    for (const auto& t : e.targets) {
      out += "| " + t.key + " | " + predicted_column(t) + " | " + computed_column(t) + " | " +
             (t.pass ? "pass" : "fail") + " | " + std::to_string(t.millis) + " |\n";
    }
    for (const auto& t : e.targets)
      if (!t.note.empty()) out += "\n- " + t.key + ": " + t.note + "\n";
  }
  return out;
}

}  // namespace sepdeg
