#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mpd/powerdomain.hpp"
#include "mpd/predicate.hpp"

namespace mpd {

// ---------------------------------------------------------------------------
// Functional representation of a power element: integrate a predicate against
// the denoted set of valuations. The extrema of a linear map over a convex
// set are attained at generators, so these are generator sweeps:
//
//   Lower   sup_{mu}  ∫ f dmu  = max over generators
//   Upper   inf_{mu}  ∫ f dmu  = min  over generators
//   Convex  [inf, sup]
// ---------------------------------------------------------------------------

struct ExtInterval {
  ExtRat lo, hi;
  bool operator==(const ExtInterval& o) const { return lo == o.lo && hi == o.hi; }
  bool operator!=(const ExtInterval& o) const { return !(*this == o); }
};

ExtRat lambda_lower(const PowerElement& x, const Predicate& f);
ExtRat lambda_upper(const PowerElement& x, const Predicate& f);
ExtInterval lambda_convex(const PowerElement& x, const Predicate& f);

// ---------------------------------------------------------------------------
// Healthiness checking. A functional under test is an opaque map from
// predicates to values (scalar for Lower/Upper, interval-on-intervals for
// Convex); the checker evaluates the flavor's characteristic inequalities
// over a generated suite plus any supplied cases and reports violations.
// The universally quantified conditions are checked on a finite suite: all
// up-set indicator predicates (capped on large posets), the constants
// 0, 1/2, 1, and seeded random monotone predicates; binary laws run over
// pairs from that suite.
// ---------------------------------------------------------------------------

struct Functional {
  // Exactly one of these is consulted, by flavor.
  std::function<ExtRat(const Predicate&)> scalar;             // Lower / Upper
  std::function<ExtInterval(const IntervalPredicate&)> interval;  // Convex

  static Functional of_power_element(const PowerElement& x);
};

struct Violation {
  std::string law;     // which inequality failed, e.g. "subadditivity"
  std::string inputs;  // the instantiation, rendered compactly
  std::string lhs, rhs;
};

struct HealthReport {
  bool passed = true;
  std::vector<Violation> violations;
};

struct HealthinessOptions {
  int random_predicates = 8;
  uint64_t seed = 1;
  int max_indicators = 32;  // cap for the indicator part of the suite
  std::vector<Rat> scalars{Rat(0), Rat(1) / 4, Rat(1) / 2, Rat(1)};
  std::vector<std::pair<Predicate, Predicate>> extra_pairs;  // supplied tests
};

// The generated predicate suite (shared with tests): capped up-set
// indicators, constants {0, 1/2, 1}, seeded random monotone predicates.
// In Unit mode every member stays within [0, 1].
std::vector<Predicate> predicate_suite(const PosetPtr& p, RangeMode mode, int random_count,
                                       uint64_t seed, int max_indicators = 32);

// Laws per flavor (Extended mode):
//   Lower   homogeneity, subadditivity, F(1) <= 1
//   Upper   homogeneity, superadditivity, F(f + 1) <= F(f) + 1
//   Convex  endpoint homogeneity, lower end superadditive, upper end
//           subadditive, mediality lo(f+g) <= lo(f)+hi(g) <= hi(f+g),
//           hi(1) <= 1, and containment-monotonicity on interval pairs.
// In Unit mode the nonexpansiveness laws are dropped, sums are checked in
// the half-scaled form F((f+g)/2) vs (F(f)+F(g))/2 to stay inside [0,1],
// and every value must itself lie in [0,1] ("unit-range").
HealthReport check_healthiness(const Functional& f, Flavor flavor, const PosetPtr& p, RangeMode mode,
                               const HealthinessOptions& opts = {});

// ---------------------------------------------------------------------------
// Predicate transformers: the backward reading of a state transformer.
//   PT(s)(g)(x) = lambda(s(x), g)
// Lower/Upper act on plain predicates; Convex acts on interval predicates
// ([lo end of g.lower, hi end of g.upper] pointwise). Plain predicates lift
// to the diagonal interval [g, g].
// ---------------------------------------------------------------------------

Predicate pt_apply(const StateTransformer& s, const Predicate& g);               // Lower / Upper
IntervalPredicate pt_apply_interval(const StateTransformer& s, const IntervalPredicate& g);  // Convex

// Witness that x is NOT below y: a monotone predicate g with the flavor's
// lambda inequality violated (strictly, in the end the failing hull test
// corresponds to). nullopt exactly when po_leq(x, y). This is the
// order-reflection direction of the representation, made constructive by
// hull separation; every witness is re-verified by direct evaluation.
std::optional<Predicate> po_separate(const PowerElement& x, const PowerElement& y);

// Constructive injectivity: either the transformers agree everywhere (up to
// po_equal) or there is a state and a monotone predicate telling them apart.
struct TransformerWitness {
  int state;    // index into the source poset
  Predicate g;  // separating predicate over the target
};

std::optional<TransformerWitness> separate_transformers(const StateTransformer& s1,
                                                        const StateTransformer& s2);

// ---------------------------------------------------------------------------
// Lower Minkowski functional of the lower hull of F, over the ambient cone:
//   nu(a) = inf { r >= 0 : a in r * (lower hull of F) }
// computed as  min sum_i mu_i  s.t.  mu >= 0,  a(U) <= sum_i mu_i f_i(U)
// for every up-set U; infinity when no scaling works. When opt_weights is
// given and the value is finite, the optimal mu lands there (its sum is the
// returned value, and a <= sum_i mu_i f_i in the stochastic order).
// ---------------------------------------------------------------------------

ExtRat minkowski(const std::vector<Valuation>& F, const Valuation& a,
                 std::vector<Rat>* opt_weights = nullptr);

}  // namespace mpd
