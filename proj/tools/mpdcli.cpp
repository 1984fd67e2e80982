// mpdcli — batch front end for the mpd library.
//
// Subcommands: check-laws, randomset, run, wp, duality, order, lambda,
// healthiness, minkowski, separate. All inputs are files; all output is
// canonical JSON (sorted keys, reduced rationals) or fixed text, so a given
// (inputs, flags, seed) triple always produces identical bytes.
//
// Exit codes: 0 = success / check passed, 1 = a check failed (the output
// carries the counterexample), 2 = usage or input error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mpd/functional.hpp"
#include "mpd/hulls.hpp"
#include "mpd/json_io.hpp"
#include "mpd/lang.hpp"
#include "mpd/laws.hpp"

using namespace mpd;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::MalformedInput, "cannot read \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string dir_of(const std::string& path) {
  return std::filesystem::path(path).parent_path().string();
}

PosetPtr chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  for (int i = 0; i + 1 < n; ++i) covers.push_back({names[i], names[i + 1]});
  return std::make_shared<FinitePoset>(names, covers);
}

RangeMode mode_of(const std::string& s) {
  if (s == "unit") return RangeMode::Unit;
  if (s == "extended") return RangeMode::Extended;
  fail(Errc::MalformedInput, "--mode must be unit or extended");
}

void emit(const Json& j) { std::cout << canonical_dump(j); }

// --- check-laws ------------------------------------------------------------

int cmd_check_laws(const std::string& model, int samples, uint64_t seed) {
  if (model == "valuation") {
    // Valuations carry no semilattice operation: theirs is the pointed
    // barycentric + scalar-action fragment, over a 3-chain.
    std::vector<Law> suite = barycentric_laws();
    for (Law& l : scalar_action_laws()) suite.push_back(std::move(l));
    SuiteReport rep = run_suite(valuation_model(chain(3)), suite, samples, seed);
    emit(suite_report_to_json(rep));
    return rep.passed ? 0 : 1;
  }
  if (model == "powerdomain") {
    Json by_flavor = Json::object();
    bool all = true;
    for (Flavor f : {Flavor::Lower, Flavor::Upper, Flavor::Convex}) {
      SuiteReport rep =
          run_suite(power_model(f, chain(2)), kegelspitze_semilattice_suite(), samples, seed);
      by_flavor[flavor_name(f)] = suite_report_to_json(rep);
      all = all && rep.passed;
    }
    emit(by_flavor);
    return all ? 0 : 1;
  }
  if (model == "randomset") {
    // The standard theory, minus the scalar action the model does not bind.
    // The report is the interesting part: exactly ∪-idempotence and
    // +_r-over-∪ fail, each with a counterexample, so the exit code is 1.
    std::vector<Law> suite = barycentric_laws();
    for (Law& l : semilattice_laws()) suite.push_back(std::move(l));
    suite.push_back(mix_over_cup());
    suite.push_back(cup_over_mix());
    SuiteReport rep = run_suite(randomset_model(2), suite, samples, seed);
    emit(suite_report_to_json(rep));
    return rep.passed ? 0 : 1;
  }
  fail(Errc::MalformedInput, "--model must be valuation, powerdomain, or randomset");
}

// --- run / wp / duality ------------------------------------------------------

Program load_program(const std::string& path, int cap_vars) {
  return parse_program(read_file(path), cap_vars);
}

int cmd_run(const std::string& path, Flavor flavor, int fuel, int cap_vars) {
  Program prog = load_program(path, cap_vars);
  emit(transformer_to_json(denote(prog, flavor, fuel)));
  return 0;
}

int cmd_wp(const std::string& path, Flavor flavor, const std::string& post_path, int fuel,
           int cap_vars, int cap_elements) {
  Program prog = load_program(path, cap_vars);
  PosetPtr space = state_space(prog.vars);
  // The post may omit its poset: the program's state space is the default,
  // and a spelled-out poset must match it.
  if (flavor == Flavor::Convex) {
    IntervalPredicate post =
        interval_predicate_from_json(load_json(post_path), dir_of(post_path), space, cap_elements);
    emit(interval_predicate_to_json(wp_interval(prog, post, fuel)));
  } else {
    Predicate post =
        predicate_from_json(load_json(post_path), dir_of(post_path), space, cap_elements);
    emit(predicate_to_json(wp(prog, flavor, post, fuel)));
  }
  return 0;
}

int cmd_duality(const std::string& path, Flavor flavor, int fuel, RangeMode mode, uint64_t seed,
                int cap_vars) {
  Program prog = load_program(path, cap_vars);
  PosetPtr space = state_space(prog.vars);
  StateTransformer st = denote(prog, flavor, fuel);
  std::vector<Predicate> posts = predicate_suite(space, mode, /*random_count=*/8, seed);

  int disagreements = 0;
  Json first = nullptr;
  for (const Predicate& g : posts) {
    if (flavor == Flavor::Convex) {
      IntervalPredicate back = wp_interval(prog, IntervalPredicate(g), fuel);
      for (int x = 0; x < space->size(); ++x) {
        ExtInterval direct = lambda_convex(st.at(x), g);
        ExtInterval via{back.lower().at(x), back.upper().at(x)};
        if (direct != via) {
          ++disagreements;
          if (first.is_null())
            first = Json{{"state", space->name(x)},
                         {"post", predicate_to_json(g, false)},
                         {"wp", Json{{"lo", ext_to_string(via.lo)}, {"hi", ext_to_string(via.hi)}}},
                         {"lambda", Json{{"lo", ext_to_string(direct.lo)},
                                         {"hi", ext_to_string(direct.hi)}}}};
        }
      }
    } else {
      Predicate back = wp(prog, flavor, g, fuel);
      for (int x = 0; x < space->size(); ++x) {
        ExtRat direct =
            flavor == Flavor::Lower ? lambda_lower(st.at(x), g) : lambda_upper(st.at(x), g);
        if (direct != back.at(x)) {
          ++disagreements;
          if (first.is_null())
            first = Json{{"state", space->name(x)},
                         {"post", predicate_to_json(g, false)},
                         {"wp", ext_to_string(back.at(x))},
                         {"lambda", ext_to_string(direct)}};
        }
      }
    }
  }
  Json out{{"flavor", flavor_name(flavor)},
           {"fuel", fuel},
           {"posts", posts.size()},
           {"states", space->size()},
           {"agree", disagreements == 0}};
  if (!first.is_null()) out["counterexample"] = first;
  emit(out);
  return disagreements == 0 ? 0 : 1;
}

// --- order / lambda / separate ----------------------------------------------

int cmd_order(const std::string& a_path, const std::string& b_path, int cap) {
  PowerElement a = load_power_element(a_path, cap);
  PowerElement b = load_power_element(b_path, cap);
  if (a.flavor() != b.flavor())
    fail(Errc::FlavorMismatch, "order: \"" + a_path + "\" and \"" + b_path + "\" disagree");
  require_same_poset(a.poset(), b.poset(), "order");
  bool leq = po_leq(a, b);
  bool geq = po_leq(b, a);
  emit(Json{{"po_leq", leq}, {"po_geq", geq}, {"po_equal", leq && geq}});
  return 0;
}

int cmd_lambda(const std::string& x_path, const std::string& f_path, int cap) {
  PowerElement x = load_power_element(x_path, cap);
  Predicate f = predicate_from_json(load_json(f_path), dir_of(f_path), x.poset(), cap);
  switch (x.flavor()) {
    case Flavor::Lower:
      emit(Json{{"value", ext_to_string(lambda_lower(x, f))}});
      break;
    case Flavor::Upper:
      emit(Json{{"value", ext_to_string(lambda_upper(x, f))}});
      break;
    case Flavor::Convex: {
      ExtInterval v = lambda_convex(x, f);
      emit(Json{{"lo", ext_to_string(v.lo)}, {"hi", ext_to_string(v.hi)}});
      break;
    }
  }
  return 0;
}

int cmd_separate(const std::string& a_path, const std::string& b_path, int cap) {
  StateTransformer s1 = load_transformer(a_path, cap);
  StateTransformer s2 = load_transformer(b_path, cap);
  if (s1.flavor() != s2.flavor())
    fail(Errc::FlavorMismatch, "separate: \"" + a_path + "\" and \"" + b_path + "\" disagree");
  require_same_poset(s1.source(), s2.source(), "separate");
  require_same_poset(s1.target(), s2.target(), "separate");
  std::optional<TransformerWitness> w = separate_transformers(s1, s2);
  if (!w) {
    std::cout << "Equal\n";
    return 0;
  }
  emit(Json{{"equal", false},
            {"state", s1.source()->name(w->state)},
            {"predicate", predicate_to_json(w->g, /*with_poset=*/false)}});
  return 1;
}

// --- healthiness --------------------------------------------------------------

int cmd_healthiness(const std::string& path, RangeMode mode, uint64_t seed, int samples, int cap) {
  StateTransformer st = load_transformer(path, cap);
  HealthinessOptions opts;
  opts.seed = seed;
  opts.random_predicates = samples;
  bool all = true;
  Json states = Json::object();
  for (int x = 0; x < st.source()->size(); ++x) {
    Functional fx = Functional::of_power_element(st.at(x));
    HealthReport rep = check_healthiness(fx, st.flavor(), st.target(), mode, opts);
    states[st.source()->name(x)] = health_report_to_json(rep);
    all = all && rep.passed;
  }
  emit(Json{{"flavor", flavor_name(st.flavor())},
            {"mode", mode == RangeMode::Unit ? "unit" : "extended"},
            {"passed", all},
            {"states", states}});
  return all ? 0 : 1;
}

// --- minkowski ----------------------------------------------------------------

int cmd_minkowski(const std::string& f_path, const std::string& a_path, int cap) {
  // F.json is a generator-set file: {"poset": ..., "generators": [...]}. A
  // power-element file works too — any "flavor" entry is ignored and the
  // generators are used exactly as written, with no canonicalization.
  Json jf = load_json(f_path);
  if (!jf.is_object() || !jf.contains("generators") || !jf["generators"].is_array())
    fail(Errc::MalformedInput, "\"" + f_path + "\": expected a file with \"generators\"");
  if (!jf.contains("poset")) fail(Errc::MalformedInput, "\"" + f_path + "\": missing \"poset\"");
  PosetPtr p = poset_from_json(jf["poset"], dir_of(f_path), cap);
  std::vector<Valuation> F;
  for (const Json& g : jf["generators"]) {
    Json wrapped = (g.is_object() && g.contains("mass")) ? g : Json{{"mass", g}};
    F.push_back(valuation_from_json(wrapped, dir_of(f_path), p, cap));
  }
  Valuation a = valuation_from_json(load_json(a_path), dir_of(a_path), p, cap);

  std::vector<Rat> weights;
  ExtRat value = minkowski(F, a, &weights);
  Json out{{"value", ext_to_string(value)}};
  if (!value.is_infinite()) {
    Json w = Json::array();
    for (const Rat& r : weights) w.push_back(rat_to_string(r));
    out["weights"] = w;
  }
  emit(out);
  return 0;
}

// --- randomset ------------------------------------------------------------------

int cmd_randomset(int n, int samples, uint64_t seed) {
  WitnessReport rep = appendixA_witnesses(n, samples, seed);
  std::cout << report_str(rep);
  return rep.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact mixed-powerdomain toolkit"};
  app.require_subcommand(1);

  // Flags shared across subcommands. Each subcommand binds the ones it uses.
  uint64_t seed = 1;
  int samples = 200;
  int cap_elements = FinitePoset::kDefaultCap;
  int cap_vars = 4;
  int fuel = 2;
  std::string mode = "extended";
  std::string flavor = "lower";
  std::string model, prog_path, post_path, a_path, b_path;
  int ground = 2;

  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", seed, "RNG seed"); };
  auto add_samples = [&](CLI::App* c) { c->add_option("--samples", samples, "sample count"); };
  auto add_caps = [&](CLI::App* c) {
    c->add_option("--cap-elements", cap_elements, "largest poset accepted");
    c->add_option("--cap-vars", cap_vars, "most program variables accepted");
  };
  auto add_flavor = [&](CLI::App* c) {
    c->add_option("--flavor", flavor, "lower | upper | convex");
  };
  auto add_fuel = [&](CLI::App* c) { c->add_option("--fuel", fuel, "loop unrolling depth"); };
  auto add_mode = [&](CLI::App* c) { c->add_option("--mode", mode, "unit | extended"); };

  CLI::App* laws = app.add_subcommand("check-laws", "run an equational-law suite on a model");
  laws->add_option("--model", model, "valuation | powerdomain | randomset")->required();
  add_seed(laws);
  add_samples(laws);

  CLI::App* rset = app.add_subcommand("randomset", "random-set and multiset witness report");
  rset->add_option("--n", ground, "ground-set size");
  add_seed(rset);
  add_samples(rset);

  CLI::App* run = app.add_subcommand("run", "print the state transformer of a program");
  run->add_option("prog", prog_path, "program file")->required();
  add_flavor(run);
  add_fuel(run);
  add_caps(run);

  CLI::App* wp_cmd = app.add_subcommand("wp", "weakest preexpectation of a post file");
  wp_cmd->add_option("prog", prog_path, "program file")->required();
  wp_cmd->add_option("--post", post_path, "post predicate file")->required();
  add_flavor(wp_cmd);
  add_fuel(wp_cmd);
  add_caps(wp_cmd);

  CLI::App* dual = app.add_subcommand("duality", "check wp against the functional of denote");
  dual->add_option("prog", prog_path, "program file")->required();
  add_flavor(dual);
  add_fuel(dual);
  add_mode(dual);
  add_seed(dual);
  add_caps(dual);

  CLI::App* order = app.add_subcommand("order", "compare two power elements");
  order->add_option("a", a_path, "first power element")->required();
  order->add_option("b", b_path, "second power element")->required();
  add_caps(order);

  CLI::App* lam = app.add_subcommand("lambda", "integrate a predicate over a power element");
  lam->add_option("x", a_path, "power element")->required();
  lam->add_option("f", b_path, "predicate")->required();
  add_caps(lam);

  // Healthiness reads --samples as "random predicates in the suite"; its
  // default is smaller because the suite is quadratic in its own size.
  int health_samples = 8;
  CLI::App* health = app.add_subcommand("healthiness", "healthiness report of a transformer");
  health->add_option("st", a_path, "state transformer file")->required();
  add_mode(health);
  add_seed(health);
  health->add_option("--samples", health_samples, "random predicates in the suite");
  add_caps(health);

  CLI::App* mink = app.add_subcommand("minkowski", "Minkowski functional of a generator set");
  mink->add_option("F", a_path, "generator set file")->required();
  mink->add_option("a", b_path, "valuation file")->required();
  add_caps(mink);

  CLI::App* sep = app.add_subcommand("separate", "prove two transformers equal or distinct");
  sep->add_option("s1", a_path, "first transformer")->required();
  sep->add_option("s2", b_path, "second transformer")->required();
  add_caps(sep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (laws->parsed()) return cmd_check_laws(model, samples, seed);
    if (rset->parsed()) return cmd_randomset(ground, samples, seed);
    if (run->parsed()) return cmd_run(prog_path, flavor_from_string(flavor), fuel, cap_vars);
    if (wp_cmd->parsed())
      return cmd_wp(prog_path, flavor_from_string(flavor), post_path, fuel, cap_vars,
                    cap_elements);
    if (dual->parsed())
      return cmd_duality(prog_path, flavor_from_string(flavor), fuel, mode_of(mode), seed,
                         cap_vars);
    if (order->parsed()) return cmd_order(a_path, b_path, cap_elements);
    if (lam->parsed()) return cmd_lambda(a_path, b_path, cap_elements);
    if (health->parsed())
      return cmd_healthiness(a_path, mode_of(mode), seed, health_samples, cap_elements);
    if (mink->parsed()) return cmd_minkowski(a_path, b_path, cap_elements);
    if (sep->parsed()) return cmd_separate(a_path, b_path, cap_elements);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable: require_subcommand(1)
}
