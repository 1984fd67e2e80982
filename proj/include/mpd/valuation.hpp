#pragma once

#include <vector>

#include "mpd/predicate.hpp"
#include "mpd/rational.hpp"

namespace mpd {

// A simple valuation: a nonnegative rational mass per element. Evaluating an
// up-set sums the masses inside it, which makes strictness and modularity
// hold by construction. Subprobability = total mass <= 1; the cone-level
// ops (add, scale by r > 1) may leave that region and are allowed to.
class Valuation {
 public:
  Valuation(PosetPtr poset, std::vector<Rat> mass);

  const PosetPtr& poset() const { return poset_; }
  int size() const { return static_cast<int>(mass_.size()); }
  const Rat& mass(int i) const { return mass_[static_cast<size_t>(i)]; }
  const std::vector<Rat>& masses() const { return mass_; }

  Rat total_mass() const;
  bool is_subprobability() const { return total_mass() <= 1; }
  bool is_zero() const;

  // mu(U) = sum of masses inside U.
  Rat measure(UpSet u) const;

  static Valuation zero(PosetPtr poset);

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return same_poset(a.poset_, b.poset_) && a.mass_ == b.mass_;
  }
  friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }

 private:
  PosetPtr poset_;
  std::vector<Rat> mass_;
};

Valuation dirac(PosetPtr poset, const std::string& x);
Valuation dirac(PosetPtr poset, int index);

// r*mu + (1-r)*nu, r in [0,1].
Valuation convex_comb(const Rat& r, const Valuation& mu, const Valuation& nu);
// Cone ops: any r >= 0.
Valuation scale(const Rat& r, const Valuation& mu);
Valuation add(const Valuation& mu, const Valuation& nu);

// The stochastic order, decided by its definition: mu(U) <= nu(U) on every
// up-set. This is the oracle; the flow variant below must agree with it.
bool leq_valuation(const Valuation& mu, const Valuation& nu);

// Alternative decision procedure via a coupling: mu <= nu iff some
// w : {(x,y) | x <= y} -> Q>=0 routes all of mu (row sums = mu(x)) within
// nu's capacities (column sums <= nu(y)). Decided by Edmonds-Karp max-flow
// with exact rational capacities; validated against leq_valuation by test.
bool leq_valuation_flow(const Valuation& mu, const Valuation& nu);

// The integral of a monotone predicate. Computed two independent ways —
// directly as sum mass(x)*f(x) (with 0*inf = 0), and via the threshold
// form sum (v_i - v_{i-1}) * mu(f > v_{i-1}) — and their equality is
// asserted on every call.
ExtRat choquet_integral(const Predicate& f, const Valuation& mu);

}  // namespace mpd
