#pragma once

#include <vector>

#include "mpd/extended.hpp"
#include "mpd/poset.hpp"

namespace mpd {

enum class RangeMode { Extended, Unit };

// A monotone map from poset elements into the extended half-line (Extended
// mode) or into [0,1] (Unit mode). On a finite poset these are exactly the
// Scott-continuous nonnegative functions, so monotonicity is the whole
// well-formedness condition and is checked at construction.
class Predicate {
 public:
  Predicate(PosetPtr poset, std::vector<ExtRat> values, RangeMode mode = RangeMode::Extended);

  const PosetPtr& poset() const { return poset_; }
  RangeMode mode() const { return mode_; }
  int size() const { return static_cast<int>(values_.size()); }
  const ExtRat& at(int i) const { return values_[static_cast<size_t>(i)]; }
  const std::vector<ExtRat>& values() const { return values_; }

  static Predicate constant(PosetPtr poset, const ExtRat& v, RangeMode mode = RangeMode::Extended);
  // Indicator of an up-set: 1 inside, 0 outside. Monotone by construction.
  static Predicate indicator(PosetPtr poset, UpSet u, RangeMode mode = RangeMode::Extended);

  friend bool operator==(const Predicate& a, const Predicate& b) {
    return same_poset(a.poset_, b.poset_) && a.values_ == b.values_;
  }
  friend bool operator!=(const Predicate& a, const Predicate& b) { return !(a == b); }

 private:
  PosetPtr poset_;
  std::vector<ExtRat> values_;
  RangeMode mode_;
};

// Pointwise operations; results stay monotone so construction cannot throw.
// add may leave the unit interval, so its result is always Extended mode.
Predicate pred_add(const Predicate& f, const Predicate& g);
Predicate pred_scale(const Rat& r, const Predicate& f);
// r*f + (1-r)*g, the Kegelspitze mix; preserves Unit mode.
Predicate pred_mix(const Rat& r, const Predicate& f, const Predicate& g);
bool pred_leq(const Predicate& f, const Predicate& g);

// The pair (lower, upper) with lower <= upper pointwise: one function into
// the interval cone. Ordered two ways downstream: Egli-Milner (both ends
// rise) and interval containment.
class IntervalPredicate {
 public:
  IntervalPredicate(Predicate lower, Predicate upper);
  // Diagonal embedding g -> [g, g].
  explicit IntervalPredicate(const Predicate& diag) : IntervalPredicate(diag, diag) {}

  const Predicate& lower() const { return lower_; }
  const Predicate& upper() const { return upper_; }
  const PosetPtr& poset() const { return lower_.poset(); }
  RangeMode mode() const { return lower_.mode(); }

  friend bool operator==(const IntervalPredicate& a, const IntervalPredicate& b) {
    return a.lower_ == b.lower_ && a.upper_ == b.upper_;
  }
  friend bool operator!=(const IntervalPredicate& a, const IntervalPredicate& b) { return !(a == b); }

 private:
  Predicate lower_, upper_;
};

// Interval containment [a.lower, a.upper] ⊆ [b.lower, b.upper] pointwise.
bool interval_contained(const IntervalPredicate& a, const IntervalPredicate& b);

}  // namespace mpd
