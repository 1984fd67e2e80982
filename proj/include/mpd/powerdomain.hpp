#pragma once

#include <string>
#include <vector>

#include "mpd/hulls.hpp"
#include "mpd/valuation.hpp"

namespace mpd {

// The three mixed powerdomains over the subprobability valuations of a
// finite poset, represented by finite generator sets:
//
//   Lower   ↓conv F   ordered by inclusion        join-semilattice
//   Upper   ↑conv F   ordered by reverse inclusion meet-semilattice
//   Convex  the lens  ↓conv F ∩ ↑conv F            Egli-Milner order
//
// Only finitely generated elements are representable; that family is a basis
// and it is closed under every operation here. Structural equality of
// generator lists means nothing — semantic equality is po_equal.

enum class Flavor { Lower, Upper, Convex };

const char* flavor_name(Flavor f);
Flavor flavor_from_string(const std::string& s);

class PowerElement {
 public:
  PowerElement(Flavor flavor, PosetPtr poset, std::vector<Valuation> gens);

  Flavor flavor() const { return flavor_; }
  const PosetPtr& poset() const { return poset_; }
  const std::vector<Valuation>& gens() const { return gens_; }

 private:
  Flavor flavor_;
  PosetPtr poset_;
  std::vector<Valuation> gens_;
};

// Units and least elements. In every flavor the unit of x is generated by
// the Dirac valuation at x; bottom is generated by the zero valuation (for
// Upper that denotes the whole space, which is the least element under ⊇).
PowerElement eta(Flavor flavor, PosetPtr poset, const std::string& x);
PowerElement bottom(Flavor flavor, PosetPtr poset);

// The flavor's order: ⊆ / ⊇ / Egli-Milner, decided by hull membership of
// generators. po_equal is mutual po_leq — the only legitimate equality.
bool po_leq(const PowerElement& x, const PowerElement& y);
bool po_equal(const PowerElement& x, const PowerElement& y);

// Kegelspitze structure: X +_r Y (pairwise generator combination), the
// semilattice operation (generator union; join / meet / formal union), and
// the induced scalar action r·X = X +_r bottom. All results canonicalized.
PowerElement convex_comb_pd(const Rat& r, const PowerElement& x, const PowerElement& y);
PowerElement combine(const PowerElement& x, const PowerElement& y);
PowerElement scale_pd(const Rat& r, const PowerElement& x);

// Drops generators that lie in the hull of the remaining ones, scanning in
// the fixed list order (Convex flavor only drops a generator when both hulls
// survive, i.e. the result stays po_equal). Minimality of the result is not
// claimed, only po_equality with the input.
PowerElement canonicalize(const PowerElement& x);

// A Kleisli map P -> T(Q): one power element over the target per source
// element, all of one flavor. The table must be monotone (x <= y implies
// po_leq of the entries) — state transformers are continuous maps, and the
// Kleisli laws below are false without it.
class StateTransformer {
 public:
  StateTransformer(Flavor flavor, PosetPtr source, PosetPtr target, std::vector<PowerElement> table);

  Flavor flavor() const { return flavor_; }
  const PosetPtr& source() const { return source_; }
  const PosetPtr& target() const { return target_; }
  const PowerElement& at(int i) const { return table_[static_cast<size_t>(i)]; }
  const PowerElement& at(const std::string& x) const { return at(source_->index_of(x)); }
  const std::vector<PowerElement>& table() const { return table_; }

 private:
  Flavor flavor_;
  PosetPtr source_, target_;
  std::vector<PowerElement> table_;
};

// The state transformer x ↦ eta(x): the identity program.
StateTransformer eta_transformer(Flavor flavor, PosetPtr poset);

// Free extension s†. For a generator μ = Σ_x r_x δ_x the linear part s̄(μ)
// is Σ_x r_x · s(x) with any missing mass sent to bottom, built by a left
// fold of binary convex combinations with re-normalized weights (skew
// associativity makes the fold order immaterial up to po_equal). s†(X) then
// folds s̄ over the generators with the semilattice operation.
PowerElement kleisli_extend(const StateTransformer& s, const PowerElement& x);

// Kleisli composition: x ↦ kleisli_extend(t, s.at(x)), for s: P -> T(Q) and
// t: Q -> T(R).
StateTransformer kleisli_compose(const StateTransformer& t, const StateTransformer& s);

}  // namespace mpd
