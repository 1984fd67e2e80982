#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mpd/rational.hpp"

namespace mpd {

// Finitely supported rational distributions over nonempty subsets of a
// small ground set {0, .., n-1}. This is the "random set" algebra: convex
// mixture acts pointwise on probabilities, and nondeterministic choice is
// the product-of-distributions formula
//
//   (Σ αᵢ·δ_{Aᵢ}) ∪ (Σ βⱼ·δ_{Bⱼ})  =  Σ αᵢβⱼ · δ_{Aᵢ ∪ Bⱼ}.
//
// The interest of the model is which laws it does NOT satisfy: ∪ fails to
// be idempotent (mixing first and unioning second are observably different
// experiments), and +_r does not distribute over ∪ — while the opposite
// distributivity x ∪ (y +_r z) = (x ∪ y) +_r (x ∪ z) does hold.
//
// Subsets are keyed by bitmask over the ground set, so the representation
// is canonical: equal distributions compare equal as maps.
class RandomSetElement {
 public:
  // dist maps nonzero subset bitmasks to probabilities; entries with zero
  // probability are dropped, the rest must be positive and sum to 1.
  RandomSetElement(int ground_size, std::map<uint32_t, Rat> dist);

  static RandomSetElement dirac(int ground_size, uint32_t subset_mask);

  int ground_size() const { return ground_size_; }
  const std::map<uint32_t, Rat>& dist() const { return dist_; }

  // Probability of a subset (zero when outside the support).
  Rat prob(uint32_t subset_mask) const;

  // "1/2·{a} + 1/2·{a,b}" with ground elements named a, b, c, ...
  std::string str() const;

  friend bool operator==(const RandomSetElement& x, const RandomSetElement& y) {
    return x.ground_size_ == y.ground_size_ && x.dist_ == y.dist_;
  }
  friend bool operator!=(const RandomSetElement& x, const RandomSetElement& y) {
    return !(x == y);
  }

 private:
  int ground_size_;
  std::map<uint32_t, Rat> dist_;
};

// δ_{ {x} }: the unit of the construction — a point, seen as the random set
// that is surely the singleton {x}.
RandomSetElement rs_unit(int ground_size, int element);

// r·d1 + (1-r)·d2, pointwise on probabilities. r ∈ [0,1].
RandomSetElement rs_convex(const Rat& r, const RandomSetElement& d1, const RandomSetElement& d2);

// Product-union: sample independently from both, take the set union.
RandomSetElement rs_union(const RandomSetElement& d1, const RandomSetElement& d2);

// The multiset analogue: distributions over nonempty finite multisets of
// ground elements, keys are count vectors of length ground_size. Union is
// multiset sum (counts add), so it is never idempotent: self-union doubles
// every count and moves the whole support, whence p ≠ p∪p for every p — the
// observation that rules out freeness for the set-based algebra.
class MultisetElement {
 public:
  MultisetElement(int ground_size, std::map<std::vector<int>, Rat> dist);

  static MultisetElement dirac(int ground_size, std::vector<int> counts);

  int ground_size() const { return ground_size_; }
  const std::map<std::vector<int>, Rat>& dist() const { return dist_; }

  // "1/2·⟨a⟩ + 1/2·⟨a,a,b⟩" with multiset entries listed with multiplicity.
  std::string str() const;

  friend bool operator==(const MultisetElement& x, const MultisetElement& y) {
    return x.ground_size_ == y.ground_size_ && x.dist_ == y.dist_;
  }
  friend bool operator!=(const MultisetElement& x, const MultisetElement& y) {
    return !(x == y);
  }

 private:
  int ground_size_;
  std::map<std::vector<int>, Rat> dist_;
};

MultisetElement ms_unit(int ground_size, int element);
MultisetElement ms_convex(const Rat& r, const MultisetElement& d1, const MultisetElement& d2);
MultisetElement ms_union(const MultisetElement& d1, const MultisetElement& d2);

}  // namespace mpd
