#include "mpd/functional.hpp"

#include <stdexcept>

#include "mpd/hulls.hpp"

namespace mpd {

namespace {

void check_lambda_args(const PowerElement& x, const Predicate& f, Flavor want, const char* where) {
  if (x.flavor() != want)
    fail(Errc::FlavorMismatch,
         std::string(where) + ": element has flavor " + flavor_name(x.flavor()));
  require_same_poset(x.poset(), f.poset(), where);
}

ExtRat max_integral(const PowerElement& x, const Predicate& f) {
  ExtRat best = choquet_integral(f, x.gens().front());
  for (size_t i = 1; i < x.gens().size(); ++i)
    best = ext_max(best, choquet_integral(f, x.gens()[i]));
  return best;
}

ExtRat min_integral(const PowerElement& x, const Predicate& f) {
  ExtRat best = choquet_integral(f, x.gens().front());
  for (size_t i = 1; i < x.gens().size(); ++i)
    best = ext_min(best, choquet_integral(f, x.gens()[i]));
  return best;
}

}  // namespace

ExtRat lambda_lower(const PowerElement& x, const Predicate& f) {
  check_lambda_args(x, f, Flavor::Lower, "lambda_lower");
  // Down-closure only shrinks integrals and convex mixing stays between its
  // endpoints, so the supremum over the hull sits at a generator.
  return max_integral(x, f);
}

ExtRat lambda_upper(const PowerElement& x, const Predicate& f) {
  check_lambda_args(x, f, Flavor::Upper, "lambda_upper");
  return min_integral(x, f);
}

ExtInterval lambda_convex(const PowerElement& x, const Predicate& f) {
  check_lambda_args(x, f, Flavor::Convex, "lambda_convex");
  return ExtInterval{min_integral(x, f), max_integral(x, f)};
}

Functional Functional::of_power_element(const PowerElement& x) {
  Functional f;
  switch (x.flavor()) {
    case Flavor::Lower:
      f.scalar = [x](const Predicate& p) { return lambda_lower(x, p); };
      break;
    case Flavor::Upper:
      f.scalar = [x](const Predicate& p) { return lambda_upper(x, p); };
      break;
    case Flavor::Convex:
      f.interval = [x](const IntervalPredicate& p) {
        return ExtInterval{lambda_convex(x, p.lower()).lo, lambda_convex(x, p.upper()).hi};
      };
      break;
  }
  return f;
}

Predicate pt_apply(const StateTransformer& s, const Predicate& g) {
  if (s.flavor() == Flavor::Convex)
    fail(Errc::FlavorMismatch, "pt_apply: convex transformers act on interval predicates");
  require_same_poset(s.target(), g.poset(), "pt_apply");
  std::vector<ExtRat> values;
  values.reserve(static_cast<size_t>(s.source()->size()));
  for (int i = 0; i < s.source()->size(); ++i) {
    const PowerElement& img = s.at(i);
    values.push_back(s.flavor() == Flavor::Lower ? lambda_lower(img, g) : lambda_upper(img, g));
  }
  // The Predicate constructor re-checks monotonicity, which here is the
  // healthiness of the transformer's table.
  return Predicate(s.source(), std::move(values), g.mode());
}

IntervalPredicate pt_apply_interval(const StateTransformer& s, const IntervalPredicate& g) {
  if (s.flavor() != Flavor::Convex)
    fail(Errc::FlavorMismatch, "pt_apply_interval: transformer is not convex");
  require_same_poset(s.target(), g.poset(), "pt_apply_interval");
  std::vector<ExtRat> lo, hi;
  lo.reserve(static_cast<size_t>(s.source()->size()));
  hi.reserve(static_cast<size_t>(s.source()->size()));
  for (int i = 0; i < s.source()->size(); ++i) {
    ExtInterval v{lambda_convex(s.at(i), g.lower()).lo, lambda_convex(s.at(i), g.upper()).hi};
    lo.push_back(v.lo);
    hi.push_back(v.hi);
  }
  return IntervalPredicate(Predicate(s.source(), std::move(lo), g.mode()),
                           Predicate(s.source(), std::move(hi), g.mode()));
}

namespace {

// Strict comparison of the flavor-relevant lambda values, used to re-verify
// a separating predicate before it leaves the library.
bool lambda_strictly_above(const PowerElement& x, const PowerElement& y, const Predicate& g) {
  switch (x.flavor()) {
    case Flavor::Lower:
      return lambda_lower(x, g) > lambda_lower(y, g);
    case Flavor::Upper:
      return lambda_upper(x, g) > lambda_upper(y, g);
    case Flavor::Convex: {
      ExtInterval a = lambda_convex(x, g), b = lambda_convex(y, g);
      return a.lo > b.lo || a.hi > b.hi;
    }
  }
  return false;  // unreachable
}

}  // namespace

std::optional<Predicate> po_separate(const PowerElement& x, const PowerElement& y) {
  if (x.flavor() != y.flavor()) fail(Errc::FlavorMismatch, "po_separate: flavors differ");
  require_same_poset(x.poset(), y.poset(), "po_separate");

  std::optional<Predicate> g;
  // The order is a conjunction of hull memberships; the first failing one
  // yields an LP separation certificate, which is already a monotone
  // predicate with a strict integral gap.
  if (x.flavor() == Flavor::Lower || x.flavor() == Flavor::Convex) {
    for (const Valuation& f : x.gens()) {
      if (!in_lower_hull(f, y.gens())) {
        g = separate_lower(f, y.gens()).g;
        break;
      }
    }
  }
  if (!g && (x.flavor() == Flavor::Upper || x.flavor() == Flavor::Convex)) {
    for (const Valuation& h : y.gens()) {
      if (!in_upper_hull(h, x.gens())) {
        g = separate_upper(h, x.gens()).g;
        break;
      }
    }
  }
  if (!g) {
    if (!po_leq(x, y)) throw std::logic_error("po_separate: order test and hull scan disagree");
    return std::nullopt;
  }
  if (!lambda_strictly_above(x, y, *g))
    throw std::logic_error("po_separate: separating predicate failed re-verification");
  return g;
}

std::optional<TransformerWitness> separate_transformers(const StateTransformer& s1,
                                                        const StateTransformer& s2) {
  if (s1.flavor() != s2.flavor()) fail(Errc::FlavorMismatch, "separate_transformers: flavors differ");
  require_same_poset(s1.source(), s2.source(), "separate_transformers");
  require_same_poset(s1.target(), s2.target(), "separate_transformers");

  for (int i = 0; i < s1.source()->size(); ++i) {
    std::optional<Predicate> g = po_separate(s1.at(i), s2.at(i));
    if (!g) g = po_separate(s2.at(i), s1.at(i));
    if (g) return TransformerWitness{i, *g};
  }
  return std::nullopt;
}

}  // namespace mpd
