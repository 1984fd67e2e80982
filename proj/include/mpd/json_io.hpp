#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "mpd/functional.hpp"
#include "mpd/laws.hpp"
#include "mpd/powerdomain.hpp"
#include "mpd/predicate.hpp"
#include "mpd/valuation.hpp"

namespace mpd {

using Json = nlohmann::json;

// JSON interchange for every value the command line reads or writes.
// Shapes:
//   poset        {"elements": ["a","b"], "covers": [["a","b"]]}
//   valuation    {"poset": <ref>, "mass": {"a": "1/2", "b": "1/4"}}
//   predicate    {"poset": <ref>, "values": {"a": "1/2", "b": "inf"},
//                 "mode": "unit" | "extended"}            (mode optional)
//   interval     {"poset": <ref>, "lower": {...}, "upper": {...},
//                 "mode": ...} — or a plain predicate, read as [g, g]
//   power elem   {"flavor": "lower|upper|convex", "poset": <ref>,
//                 "generators": [{"mass": {...}}, ...]}
//   transformer  {"flavor": ..., "source": <ref>, "target": <ref>,
//                 "table": {"x": <power element>, ...}}
//
// A poset <ref> is either an inline object or a string naming a JSON file,
// resolved relative to the referring file. Rationals travel as reduced
// "p/q" strings (integers allowed), infinity as "inf". Missing mass/value
// entries default to 0. Nested objects may omit "poset"/"flavor" when the
// parent determines them, and must agree when they spell them out; emission
// always omits them. All parse failures throw Error with a message naming
// the offending part; output is canonical (sorted keys, two-space indent).

std::string ext_to_string(const ExtRat& v);
ExtRat ext_from_string(const std::string& s);

// Parsing. `base_dir` resolves string poset references; `expect` pins the
// poset a nested object must live on (pass nullptr to take it from the
// JSON, which is then mandatory). `cap` bounds poset sizes as in
// parse_poset.
PosetPtr poset_from_json(const Json& j, const std::string& base_dir = "",
                         int cap = FinitePoset::kDefaultCap);
Valuation valuation_from_json(const Json& j, const std::string& base_dir = "",
                              PosetPtr expect = nullptr, int cap = FinitePoset::kDefaultCap);
Predicate predicate_from_json(const Json& j, const std::string& base_dir = "",
                              PosetPtr expect = nullptr, int cap = FinitePoset::kDefaultCap);
IntervalPredicate interval_predicate_from_json(const Json& j, const std::string& base_dir = "",
                                               PosetPtr expect = nullptr,
                                               int cap = FinitePoset::kDefaultCap);
PowerElement power_element_from_json(const Json& j, const std::string& base_dir = "",
                                     PosetPtr expect = nullptr,
                                     int cap = FinitePoset::kDefaultCap);
StateTransformer transformer_from_json(const Json& j, const std::string& base_dir = "",
                                       int cap = FinitePoset::kDefaultCap);

// File loaders: read the file, remember its directory for nested refs.
Json load_json(const std::string& path);
PosetPtr load_poset(const std::string& path, int cap = FinitePoset::kDefaultCap);
Valuation load_valuation(const std::string& path, int cap = FinitePoset::kDefaultCap);
Predicate load_predicate(const std::string& path, int cap = FinitePoset::kDefaultCap);
IntervalPredicate load_interval_predicate(const std::string& path,
                                          int cap = FinitePoset::kDefaultCap);
PowerElement load_power_element(const std::string& path, int cap = FinitePoset::kDefaultCap);
StateTransformer load_transformer(const std::string& path, int cap = FinitePoset::kDefaultCap);

// Emission. with_poset=false drops the poset (and flavor) of nested values
// whose context already carries them.
Json poset_to_json(const FinitePoset& p);
Json valuation_to_json(const Valuation& v, bool with_poset = true);
Json predicate_to_json(const Predicate& f, bool with_poset = true);
Json interval_predicate_to_json(const IntervalPredicate& g, bool with_poset = true);
Json power_element_to_json(const PowerElement& x, bool with_poset = true);
Json transformer_to_json(const StateTransformer& s);
Json violation_to_json(const Violation& v);
Json health_report_to_json(const HealthReport& rep);
Json suite_report_to_json(const SuiteReport& rep);

// dump(2) with a trailing newline — the one serialization every command
// uses, so identical values print identically everywhere.
std::string canonical_dump(const Json& j);

}  // namespace mpd
