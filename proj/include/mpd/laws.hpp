#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpd/errors.hpp"
#include "mpd/functional.hpp"
#include "mpd/powerdomain.hpp"
#include "mpd/randomset.hpp"
#include "mpd/rng.hpp"
#include "mpd/valuation.hpp"

namespace mpd {

// Equational laws over the signature {+_r, ∪, 0, scalar action} as plain
// data: a law is a pair of terms, and a model is a bundle of closures that
// interpret the operations over some carrier. One engine then serves
// valuations, power elements, random sets, and toy models alike, and a
// failing law always comes back with the sampled instance that broke it.

struct Term {
  enum class Kind { Var, Zero, Plus, Cup, Scale };

  Kind kind = Kind::Var;
  int index = -1;  // Var: carrier-variable slot; Plus/Scale: scalar slot
  std::vector<Term> kids;

  static Term var(int slot);
  static Term zero();
  static Term plus(int scalar_slot, Term a, Term b);
  static Term cup(Term a, Term b);
  static Term scaled(int scalar_slot, Term a);
};

struct Law {
  std::string id;       // short tag: "B1", "SC", "cup-idem", ...
  std::string display;  // the equation in human-readable form
  int vars = 0;         // carrier variables sampled per instance
  int scalars = 0;      // scalar slots sampled per instance
  Term lhs, rhs;
  // Extends the sampled scalars with derived slots (products, complements)
  // and may reject a draw by returning false — e.g. (SA) needs pr < 1.
  std::function<bool(std::vector<Rat>&)> prepare;
};

// Law catalogs. The full Kegelspitze-semilattice suite is what the three
// power constructions satisfy: barycentric + semilattice + the convexity
// identity + +_r-over-∪ distributivity + the scalar-action laws. The
// reverse distributivity ∪-over-+_r is deliberately not in it — it fails
// there, while the random-set model satisfies it and fails the other one.
std::vector<Law> barycentric_laws();     // B1 B2 SC SA E D
std::vector<Law> semilattice_laws();     // cup-assoc cup-comm cup-idem
std::vector<Law> scalar_action_laws();   // scale-def scale-one scale-strict scale-comp scale-mix
Law convexity_identity();                // x ∪ y = (x ∪ y) ∪ (x +_r y)
Law mix_over_cup();                      // x +_r (y ∪ z) = (x +_r y) ∪ (x +_r z)
Law cup_over_mix();                      // x ∪ (y +_r z) = (x ∪ y) +_r (x ∪ z)
std::vector<Law> kegelspitze_semilattice_suite();

// A model: closures interpreting the signature over carrier M. sample,
// equal, show, and plus are mandatory; the rest stay empty when the model
// has no such operation, and a suite mentioning an unbound operation is
// rejected with UnboundOperation rather than silently skipped.
template <class M>
struct ModelBinding {
  std::string name;
  std::function<M(Rng&)> sample;
  std::function<bool(const M&, const M&)> equal;
  std::function<std::string(const M&)> show;
  std::function<M(const Rat&, const M&, const M&)> plus;  // a +_r b
  std::function<M(const M&, const M&)> cup;               // optional
  std::function<M()> zero;                                // optional
  std::function<M(const Rat&, const M&)> scale;           // optional
  std::function<bool(const M&, const M&)> leq;            // optional (order properties)
};

// Ready-made bindings.
ModelBinding<Valuation> valuation_model(PosetPtr poset);
ModelBinding<PowerElement> power_model(Flavor flavor, PosetPtr poset);
ModelBinding<RandomSetElement> randomset_model(int ground_size);
// A 3-element chain with a +_r b := a ∨ b for 0 < r < 1 (and the forced
// boundary cases a +_1 b = a, a +_0 b = b): the degenerate way a join
// semilattice is a barycentric algebra. No zero and no scalar action.
ModelBinding<int> chain_semilattice_model();

struct LawResult {
  std::string id;
  std::string display;
  int checked = 0;  // instances evaluated (guard-rejected draws not counted)
  bool passed = true;
  std::optional<Violation> counterexample;
};

struct SuiteReport {
  bool passed = true;
  int samples = 0;
  uint64_t seed = 0;
  std::vector<LawResult> laws;
};

std::string report_str(const SuiteReport& rep);

// Engine internals shared by the templates below.
void term_requirements(const Term& t, bool& needs_zero, bool& needs_cup, bool& needs_scale);
// Deterministic prelude of scalar vectors covering the boundary values
// {0, 1, 1/2} before random draws begin — (B1)-style bugs live there.
std::vector<std::vector<Rat>> boundary_scalar_vectors(int slots);
std::string instance_str(const std::vector<std::string>& vars, const std::vector<Rat>& scalars);

template <class M>
M eval_term(const Term& t, const ModelBinding<M>& model, const std::vector<M>& vars,
            const std::vector<Rat>& scalars) {
  switch (t.kind) {
    case Term::Kind::Var:
      return vars.at(static_cast<size_t>(t.index));
    case Term::Kind::Zero:
      return model.zero();
    case Term::Kind::Plus:
      return model.plus(scalars.at(static_cast<size_t>(t.index)),
                        eval_term(t.kids[0], model, vars, scalars),
                        eval_term(t.kids[1], model, vars, scalars));
    case Term::Kind::Cup:
      return model.cup(eval_term(t.kids[0], model, vars, scalars),
                       eval_term(t.kids[1], model, vars, scalars));
    case Term::Kind::Scale:
      return model.scale(scalars.at(static_cast<size_t>(t.index)),
                         eval_term(t.kids[0], model, vars, scalars));
  }
  fail(Errc::MalformedInput, "eval_term: unknown term kind");
}

// Evaluates every law of the suite on `samples` sampled instances each.
// Deterministic: each law draws from its own stream derived from (seed,
// law position), so a report is reproducible from (seed, samples, suite).
template <class M>
SuiteReport run_suite(const ModelBinding<M>& model, const std::vector<Law>& suite, int samples,
                      uint64_t seed) {
  if (!model.sample || !model.equal || !model.show || !model.plus)
    fail(Errc::UnboundOperation,
         "run_suite: model '" + model.name + "' must bind sample, equal, show, and +_r");
  if (samples < 1) fail(Errc::MalformedInput, "run_suite: samples must be positive");
  for (const Law& law : suite) {
    bool z = false, c = false, s = false;
    term_requirements(law.lhs, z, c, s);
    term_requirements(law.rhs, z, c, s);
    if (z && !model.zero)
      fail(Errc::UnboundOperation,
           "law " + law.id + " mentions 0, which model '" + model.name + "' does not bind");
    if (c && !model.cup)
      fail(Errc::UnboundOperation,
           "law " + law.id + " mentions ∪, which model '" + model.name + "' does not bind");
    if (s && !model.scale)
      fail(Errc::UnboundOperation, "law " + law.id + " mentions the scalar action, which model '" +
                                       model.name + "' does not bind");
  }

  SuiteReport rep;
  rep.samples = samples;
  rep.seed = seed;
  for (size_t li = 0; li < suite.size(); ++li) {
    const Law& law = suite[li];
    LawResult res;
    res.id = law.id;
    res.display = law.display;
    Rng rng(seed + 0x9e3779b97f4a7c15ull * (li + 1));
    const auto prelude = boundary_scalar_vectors(law.scalars);
    for (int i = 0; i < samples && res.passed; ++i) {
      std::vector<Rat> scalars;
      if (static_cast<size_t>(i) < prelude.size()) {
        scalars = prelude[static_cast<size_t>(i)];
      } else {
        for (int k = 0; k < law.scalars; ++k) scalars.push_back(rng.unit_rat(8));
      }
      if (law.prepare && !law.prepare(scalars)) continue;
      std::vector<M> vars;
      for (int k = 0; k < law.vars; ++k) vars.push_back(model.sample(rng));
      M lhs = eval_term(law.lhs, model, vars, scalars);
      M rhs = eval_term(law.rhs, model, vars, scalars);
      ++res.checked;
      if (!model.equal(lhs, rhs)) {
        res.passed = false;
        std::vector<std::string> shown;
        for (const M& v : vars) shown.push_back(model.show(v));
        res.counterexample = Violation{law.id, instance_str(shown, scalars), model.show(lhs),
                                       model.show(rhs)};
      }
    }
    if (!res.passed) rep.passed = false;
    rep.laws.push_back(std::move(res));
  }
  return rep;
}

// Conditional order properties — not equations, so they sit outside the
// term engine. Both hold in every ordered barycentric algebra resp. every
// Kegelspitze, so valuations and all three power constructions pass:
//   neumann: a +_p c ≤ b +_p c for one 0<p<1 implies it for all such p;
//   (OC2):   r·a ≤ r·b for 0<r<1 implies a ≤ b.
struct PropertyReport {
  bool passed = true;
  int neumann_hits = 0;  // instances where the neumann premise fired
  int oc2_hits = 0;      // instances where the (OC2) premise fired
  std::optional<Violation> counterexample;
};

template <class M>
PropertyReport check_order_properties(const ModelBinding<M>& model, int samples, uint64_t seed) {
  if (!model.sample || !model.leq || !model.plus || !model.scale || !model.show)
    fail(Errc::UnboundOperation, "check_order_properties: model '" + model.name +
                                     "' must bind sample, leq, show, +_r, and the scalar action");
  PropertyReport rep;
  Rng rng(seed);
  for (int i = 0; i < samples && rep.passed; ++i) {
    M a = model.sample(rng), b = model.sample(rng), c = model.sample(rng);
    Rat p = rng.open_unit_rat(6), q = rng.open_unit_rat(6);
    if (model.leq(model.plus(p, a, c), model.plus(p, b, c))) {
      ++rep.neumann_hits;
      if (!model.leq(model.plus(q, a, c), model.plus(q, b, c))) {
        rep.passed = false;
        rep.counterexample =
            Violation{"neumann",
                      instance_str({model.show(a), model.show(b), model.show(c)}, {p, q}),
                      "a +_p c ≤ b +_p c holds", "a +_q c ≤ b +_q c fails"};
      }
    }
    if (model.leq(model.scale(p, a), model.scale(p, b))) {
      ++rep.oc2_hits;
      if (!model.leq(a, b)) {
        rep.passed = false;
        rep.counterexample = Violation{"OC2", instance_str({model.show(a), model.show(b)}, {p}),
                                       "p·a ≤ p·b holds", "a ≤ b fails"};
      }
    }
  }
  return rep;
}

// The finite random-set model: everything it verifiably does and does not
// satisfy, over the ground set {a, .., } of the given size (1..3). The two
// expected failures come back with their exact witnesses; the CCSA suite
// (∪ comm/assoc, ∪-over-+_r, barycentric axioms) and the multiset model's
// p ≠ p∪p are expected to pass on the whole sample.
struct WitnessReport {
  int ground_size = 0;
  bool passed = false;             // every expectation confirmed
  std::optional<Violation> idem_witness;     // ∪-idempotence failure (needs n ≥ 2)
  std::optional<Violation> distrib_witness;  // +_r-over-∪ failure  (needs n ≥ 2)
  SuiteReport ccsa;
  int multiset_checked = 0;
  std::vector<std::string> notes;  // human-readable findings, in order
};

WitnessReport appendixA_witnesses(int ground_size, int samples = 200, uint64_t seed = 1);
std::string report_str(const WitnessReport& rep);

}  // namespace mpd
