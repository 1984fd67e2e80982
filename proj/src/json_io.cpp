#include "mpd/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mpd/errors.hpp"

namespace mpd {

namespace {

// Accepts "p/q" / "p" strings and plain JSON integers.
Rat rat_from_node(const Json& node, const std::string& what) {
  if (node.is_string()) return rat_from_string(node.get<std::string>());
  if (node.is_number_integer()) return Rat(node.get<long long>());
  fail(Errc::MalformedInput, what + ": expected a rational as \"p/q\" string or integer");
}

ExtRat ext_from_node(const Json& node, const std::string& what) {
  if (node.is_string() && node.get<std::string>() == "inf") return ExtRat::infinity();
  return ExtRat(rat_from_node(node, what));
}

void require_object(const Json& j, const std::string& what) {
  if (!j.is_object()) fail(Errc::MalformedInput, what + ": expected a JSON object");
}

const Json& require_key(const Json& j, const char* key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) fail(Errc::MalformedInput, what + ": missing \"" + key + "\"");
  return *it;
}

// The poset of a value: an explicit "poset" member (inline object or file
// reference), the poset pinned by the surrounding context, or both — in
// which case they must agree.
PosetPtr resolve_poset(const Json& j, const std::string& base_dir, const PosetPtr& expect,
                       int cap, const std::string& what) {
  auto it = j.find("poset");
  if (it == j.end()) {
    if (!expect) fail(Errc::MalformedInput, what + ": missing \"poset\"");
    return expect;
  }
  PosetPtr p = poset_from_json(*it, base_dir, cap);
  if (expect && !same_poset(p, expect))
    fail(Errc::PosetMismatch, what + ": spelled-out poset differs from the surrounding one");
  return p;
}

// Per-element maps like {"a": "1/2"}: anything not mentioned is 0.
template <class Value, class Parse>
std::vector<Value> values_by_element(const Json& node, const PosetPtr& p, const std::string& what,
                                     Parse parse) {
  require_object(node, what);
  std::vector<Value> out(static_cast<size_t>(p->size()), Value(0));
  for (const auto& [name, v] : node.items()) {
    int i = p->index_of(name);  // throws UnknownElement for stray names
    out[static_cast<size_t>(i)] = parse(v, what + " at \"" + name + "\"");
  }
  return out;
}

RangeMode mode_from_json(const Json& j, const std::string& what) {
  auto it = j.find("mode");
  if (it == j.end()) return RangeMode::Extended;
  if (it->is_string() && it->get<std::string>() == "unit") return RangeMode::Unit;
  if (it->is_string() && it->get<std::string>() == "extended") return RangeMode::Extended;
  fail(Errc::MalformedInput, what + ": \"mode\" must be \"unit\" or \"extended\"");
}

Json mass_map(const Valuation& v) {
  Json m = Json::object();
  for (int i = 0; i < v.size(); ++i)
    if (v.mass(i) != 0) m[v.poset()->name(i)] = rat_to_string(v.mass(i));
  return m;
}

Json value_map(const Predicate& f) {
  Json m = Json::object();
  const PosetPtr& p = f.poset();
  for (int i = 0; i < p->size(); ++i) {
    ExtRat v = f.at(i);
    bool zero = !v.is_infinite() && v.finite() == 0;
    if (!zero) m[p->name(i)] = ext_to_string(v);
  }
  return m;
}

}  // namespace

std::string ext_to_string(const ExtRat& v) {
  return v.is_infinite() ? "inf" : rat_to_string(v.finite());
}

ExtRat ext_from_string(const std::string& s) {
  if (s == "inf") return ExtRat::infinity();
  return ExtRat(rat_from_string(s));
}

PosetPtr poset_from_json(const Json& j, const std::string& base_dir, int cap) {
  if (j.is_string()) {
    std::filesystem::path ref(j.get<std::string>());
    if (ref.is_relative() && !base_dir.empty()) ref = std::filesystem::path(base_dir) / ref;
    return load_poset(ref.string(), cap);
  }
  require_object(j, "poset");
  // parse_poset owns the format's validation; reuse it verbatim.
  return parse_poset(j.dump(), cap);
}

Valuation valuation_from_json(const Json& j, const std::string& base_dir, PosetPtr expect,
                              int cap) {
  require_object(j, "valuation");
  PosetPtr p = resolve_poset(j, base_dir, expect, cap, "valuation");
  const Json& mass = require_key(j, "mass", "valuation");
  return Valuation(p, values_by_element<Rat>(mass, p, "valuation mass", rat_from_node));
}

Predicate predicate_from_json(const Json& j, const std::string& base_dir, PosetPtr expect,
                              int cap) {
  require_object(j, "predicate");
  PosetPtr p = resolve_poset(j, base_dir, expect, cap, "predicate");
  const Json& values = require_key(j, "values", "predicate");
  return Predicate(p, values_by_element<ExtRat>(values, p, "predicate values", ext_from_node),
                   mode_from_json(j, "predicate"));
}

IntervalPredicate interval_predicate_from_json(const Json& j, const std::string& base_dir,
                                               PosetPtr expect, int cap) {
  require_object(j, "interval predicate");
  if (!j.contains("lower") && !j.contains("upper"))
    return IntervalPredicate(predicate_from_json(j, base_dir, std::move(expect), cap));
  PosetPtr p = resolve_poset(j, base_dir, expect, cap, "interval predicate");
  RangeMode mode = mode_from_json(j, "interval predicate");
  const Json& lo = require_key(j, "lower", "interval predicate");
  const Json& hi = require_key(j, "upper", "interval predicate");
  return IntervalPredicate(
      Predicate(p, values_by_element<ExtRat>(lo, p, "interval lower", ext_from_node), mode),
      Predicate(p, values_by_element<ExtRat>(hi, p, "interval upper", ext_from_node), mode));
}

namespace {

Valuation generator_from_json(const Json& j, const std::string& base_dir, const PosetPtr& p,
                              int cap) {
  // Either a valuation object or a bare mass map.
  if (j.is_object() && j.contains("mass")) return valuation_from_json(j, base_dir, p, cap);
  return Valuation(p, values_by_element<Rat>(j, p, "generator mass", rat_from_node));
}

Flavor resolve_flavor(const Json& j, std::optional<Flavor> expect, const std::string& what) {
  auto it = j.find("flavor");
  if (it == j.end()) {
    if (!expect) fail(Errc::MalformedInput, what + ": missing \"flavor\"");
    return *expect;
  }
  if (!it->is_string()) fail(Errc::MalformedInput, what + ": \"flavor\" must be a string");
  Flavor f = flavor_from_string(it->get<std::string>());
  if (expect && f != *expect)
    fail(Errc::FlavorMismatch, what + ": spelled-out flavor differs from the surrounding one");
  return f;
}

PowerElement power_element_from_json_inner(const Json& j, const std::string& base_dir,
                                           PosetPtr expect_poset,
                                           std::optional<Flavor> expect_flavor, int cap) {
  require_object(j, "power element");
  Flavor f = resolve_flavor(j, expect_flavor, "power element");
  PosetPtr p = resolve_poset(j, base_dir, expect_poset, cap, "power element");
  const Json& gens = require_key(j, "generators", "power element");
  if (!gens.is_array())
    fail(Errc::MalformedInput, "power element: \"generators\" must be an array");
  std::vector<Valuation> out;
  for (const Json& g : gens) out.push_back(generator_from_json(g, base_dir, p, cap));
  return PowerElement(f, p, std::move(out));
}

}  // namespace

PowerElement power_element_from_json(const Json& j, const std::string& base_dir, PosetPtr expect,
                                     int cap) {
  return power_element_from_json_inner(j, base_dir, std::move(expect), std::nullopt, cap);
}

StateTransformer transformer_from_json(const Json& j, const std::string& base_dir, int cap) {
  require_object(j, "transformer");
  Flavor f = resolve_flavor(j, std::nullopt, "transformer");
  PosetPtr source = poset_from_json(require_key(j, "source", "transformer"), base_dir, cap);
  PosetPtr target = poset_from_json(require_key(j, "target", "transformer"), base_dir, cap);
  const Json& table = require_key(j, "table", "transformer");
  require_object(table, "transformer table");
  for (const auto& [name, node] : table.items()) {
    (void)node;
    source->index_of(name);  // no entries for states outside the source
  }
  std::vector<PowerElement> entries;
  for (int i = 0; i < source->size(); ++i) {
    auto it = table.find(source->name(i));
    if (it == table.end())
      fail(Errc::MalformedInput, "transformer table: missing state \"" + source->name(i) + "\"");
    entries.push_back(power_element_from_json_inner(*it, base_dir, target, f, cap));
  }
  return StateTransformer(f, source, target, std::move(entries));
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::MalformedInput, "cannot read \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::exception& e) {
    fail(Errc::MalformedInput, "\"" + path + "\": " + e.what());
  }
}

namespace {

std::string dir_of(const std::string& path) {
  return std::filesystem::path(path).parent_path().string();
}

}  // namespace

PosetPtr load_poset(const std::string& path, int cap) {
  Json j = load_json(path);
  if (j.is_string())
    fail(Errc::MalformedInput, "\"" + path + "\": a poset file must hold the object itself");
  return poset_from_json(j, dir_of(path), cap);
}

Valuation load_valuation(const std::string& path, int cap) {
  return valuation_from_json(load_json(path), dir_of(path), nullptr, cap);
}

Predicate load_predicate(const std::string& path, int cap) {
  return predicate_from_json(load_json(path), dir_of(path), nullptr, cap);
}

IntervalPredicate load_interval_predicate(const std::string& path, int cap) {
  return interval_predicate_from_json(load_json(path), dir_of(path), nullptr, cap);
}

PowerElement load_power_element(const std::string& path, int cap) {
  return power_element_from_json(load_json(path), dir_of(path), nullptr, cap);
}

StateTransformer load_transformer(const std::string& path, int cap) {
  return transformer_from_json(load_json(path), dir_of(path), cap);
}

Json poset_to_json(const FinitePoset& p) {
  Json elements = Json::array();
  for (const std::string& name : p.elements()) elements.push_back(name);
  Json covers = Json::array();
  // Emit the transitive reduction: enough to reconstruct, free of clutter.
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j) {
      if (i == j || !p.leq(i, j)) continue;
      bool direct = true;
      for (int k = 0; k < p.size() && direct; ++k)
        if (k != i && k != j && p.leq(i, k) && p.leq(k, j)) direct = false;
      if (direct) covers.push_back(Json::array({p.name(i), p.name(j)}));
    }
  return Json{{"elements", elements}, {"covers", covers}};
}

Json valuation_to_json(const Valuation& v, bool with_poset) {
  Json j = Json{{"mass", mass_map(v)}};
  if (with_poset) j["poset"] = poset_to_json(*v.poset());
  return j;
}

Json predicate_to_json(const Predicate& f, bool with_poset) {
  Json j = Json{{"values", value_map(f)}};
  j["mode"] = f.mode() == RangeMode::Unit ? "unit" : "extended";
  if (with_poset) j["poset"] = poset_to_json(*f.poset());
  return j;
}

Json interval_predicate_to_json(const IntervalPredicate& g, bool with_poset) {
  Json j = Json{{"lower", value_map(g.lower())}, {"upper", value_map(g.upper())}};
  j["mode"] = g.mode() == RangeMode::Unit ? "unit" : "extended";
  if (with_poset) j["poset"] = poset_to_json(*g.lower().poset());
  return j;
}

Json power_element_to_json(const PowerElement& x, bool with_poset) {
  Json gens = Json::array();
  for (const Valuation& g : x.gens()) gens.push_back(Json{{"mass", mass_map(g)}});
  Json j = Json{{"generators", gens}};
  if (with_poset) {
    j["flavor"] = flavor_name(x.flavor());
    j["poset"] = poset_to_json(*x.poset());
  }
  return j;
}

Json transformer_to_json(const StateTransformer& s) {
  Json table = Json::object();
  for (int i = 0; i < s.source()->size(); ++i)
    table[s.source()->name(i)] = power_element_to_json(s.at(i), /*with_poset=*/false);
  return Json{{"flavor", flavor_name(s.flavor())},
              {"source", poset_to_json(*s.source())},
              {"target", poset_to_json(*s.target())},
              {"table", table}};
}

Json violation_to_json(const Violation& v) {
  return Json{{"law", v.law}, {"inputs", v.inputs}, {"lhs", v.lhs}, {"rhs", v.rhs}};
}

Json health_report_to_json(const HealthReport& rep) {
  Json violations = Json::array();
  for (const Violation& v : rep.violations) violations.push_back(violation_to_json(v));
  return Json{{"passed", rep.passed}, {"violations", violations}};
}

Json suite_report_to_json(const SuiteReport& rep) {
  Json laws = Json::array();
  for (const LawResult& res : rep.laws) {
    Json r = Json{{"id", res.id},
                  {"display", res.display},
                  {"checked", res.checked},
                  {"passed", res.passed}};
    if (res.counterexample) r["counterexample"] = violation_to_json(*res.counterexample);
    laws.push_back(std::move(r));
  }
  return Json{{"passed", rep.passed},
              {"samples", rep.samples},
              {"seed", rep.seed},
              {"laws", laws}};
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mpd
