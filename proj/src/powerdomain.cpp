#include "mpd/powerdomain.hpp"

#include <algorithm>

namespace mpd {

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Lower: return "lower";
    case Flavor::Upper: return "upper";
    case Flavor::Convex: return "convex";
  }
  return "?";
}

Flavor flavor_from_string(const std::string& s) {
  if (s == "lower") return Flavor::Lower;
  if (s == "upper") return Flavor::Upper;
  if (s == "convex") return Flavor::Convex;
  fail(Errc::MalformedInput, "unknown flavor '" + s + "' (expected lower|upper|convex)");
}

PowerElement::PowerElement(Flavor flavor, PosetPtr poset, std::vector<Valuation> gens)
    : flavor_(flavor), poset_(std::move(poset)), gens_(std::move(gens)) {
  if (gens_.empty()) fail(Errc::EmptyGeneratorSet, "power element needs at least one generator");
  for (const auto& g : gens_) {
    require_same_poset(poset_, g.poset(), "PowerElement");
    if (!g.is_subprobability())
      fail(Errc::MalformedInput, "generator has total mass " + rat_to_string(g.total_mass()) + " > 1");
  }
}

PowerElement eta(Flavor flavor, PosetPtr poset, const std::string& x) {
  auto d = dirac(poset, x);
  return PowerElement(flavor, std::move(poset), {std::move(d)});
}

PowerElement bottom(Flavor flavor, PosetPtr poset) {
  auto z = Valuation::zero(poset);
  return PowerElement(flavor, std::move(poset), {std::move(z)});
}

static void require_compatible(const PowerElement& x, const PowerElement& y, const char* where) {
  if (x.flavor() != y.flavor())
    fail(Errc::FlavorMismatch, std::string(where) + ": mixing " + flavor_name(x.flavor()) + " with " +
                                   flavor_name(y.flavor()));
  require_same_poset(x.poset(), y.poset(), where);
}

bool po_leq(const PowerElement& x, const PowerElement& y) {
  require_compatible(x, y, "po_leq");
  // Down-closures compare by inclusion ↓X ⊆ ↓Y, up-closures by reverse
  // inclusion ↑Y ⊆ ↑X; both reduce to hull membership of generators.
  auto lower_part = [&] {
    return std::all_of(x.gens().begin(), x.gens().end(),
                       [&](const Valuation& f) { return in_lower_hull(f, y.gens()); });
  };
  auto upper_part = [&] {
    return std::all_of(y.gens().begin(), y.gens().end(),
                       [&](const Valuation& g) { return in_upper_hull(g, x.gens()); });
  };
  switch (x.flavor()) {
    case Flavor::Lower: return lower_part();
    case Flavor::Upper: return upper_part();
    case Flavor::Convex: return lower_part() && upper_part();
  }
  return false;
}

bool po_equal(const PowerElement& x, const PowerElement& y) { return po_leq(x, y) && po_leq(y, x); }

PowerElement canonicalize(const PowerElement& x) {
  std::vector<Valuation> gens = x.gens();
  size_t i = 0;
  while (gens.size() > 1 && i < gens.size()) {
    std::vector<Valuation> rest;
    rest.reserve(gens.size() - 1);
    for (size_t j = 0; j < gens.size(); ++j)
      if (j != i) rest.push_back(gens[j]);

    bool removable = false;
    switch (x.flavor()) {
      case Flavor::Lower: removable = in_lower_hull(gens[i], rest); break;
      case Flavor::Upper: removable = in_upper_hull(gens[i], rest); break;
      case Flavor::Convex:
        // A lens generator may only go if BOTH closures survive without it.
        removable = po_equal(PowerElement(Flavor::Convex, x.poset(), gens),
                             PowerElement(Flavor::Convex, x.poset(), rest));
        break;
    }
    if (removable)
      gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return PowerElement(x.flavor(), x.poset(), std::move(gens));
}

PowerElement convex_comb_pd(const Rat& r, const PowerElement& x, const PowerElement& y) {
  require_compatible(x, y, "convex_comb_pd");
  require_unit_scalar(r, "convex_comb_pd");
  std::vector<Valuation> gens;
  gens.reserve(x.gens().size() * y.gens().size());
  for (const auto& f : x.gens())
    for (const auto& g : y.gens()) gens.push_back(convex_comb(r, f, g));
  return canonicalize(PowerElement(x.flavor(), x.poset(), std::move(gens)));
}

PowerElement combine(const PowerElement& x, const PowerElement& y) {
  require_compatible(x, y, "combine");
  std::vector<Valuation> gens = x.gens();
  gens.insert(gens.end(), y.gens().begin(), y.gens().end());
  return canonicalize(PowerElement(x.flavor(), x.poset(), std::move(gens)));
}

PowerElement scale_pd(const Rat& r, const PowerElement& x) {
  require_unit_scalar(r, "scale_pd");
  return convex_comb_pd(r, x, bottom(x.flavor(), x.poset()));
}

StateTransformer::StateTransformer(Flavor flavor, PosetPtr source, PosetPtr target,
                                   std::vector<PowerElement> table)
    : flavor_(flavor), source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
  if (static_cast<int>(table_.size()) != source_->size())
    fail(Errc::MalformedInput, "state transformer needs one entry per source element");
  for (const auto& e : table_) {
    if (e.flavor() != flavor_)
      fail(Errc::FlavorMismatch, "state transformer entry has the wrong flavor");
    require_same_poset(e.poset(), target_, "StateTransformer");
  }
  // A state transformer is a continuous map, so the table must be monotone.
  // Without this the Kleisli extension would depend on how its argument's
  // generators are presented, and the monad laws would fail.
  for (int i = 0; i < source_->size(); ++i)
    for (int j = 0; j < source_->size(); ++j)
      if (i != j && source_->leq(i, j) &&
          !po_leq(table_[static_cast<size_t>(i)], table_[static_cast<size_t>(j)]))
        fail(Errc::MalformedInput, "state transformer table is not monotone: " + source_->name(i) +
                                       " <= " + source_->name(j) + " but the entries are not ordered");
}

StateTransformer eta_transformer(Flavor flavor, PosetPtr poset) {
  std::vector<PowerElement> table;
  table.reserve(static_cast<size_t>(poset->size()));
  for (int i = 0; i < poset->size(); ++i) table.push_back(eta(flavor, poset, poset->name(i)));
  return StateTransformer(flavor, poset, poset, std::move(table));
}

// s̄(μ) = Σ_x μ(x)·s(x) + (1 - |μ|)·bottom, as a left fold of binary +_r.
static PowerElement linear_part(const StateTransformer& s, const Valuation& mu) {
  std::vector<std::pair<Rat, const PowerElement*>> terms;
  for (int i = 0; i < mu.size(); ++i)
    if (mu.mass(i) > 0) terms.push_back({mu.mass(i), &s.at(i)});

  // Missing mass goes to bottom; for the zero valuation this is everything,
  // so the term list is never empty.
  PowerElement bot = bottom(s.flavor(), s.target());
  const Rat deficiency = Rat(1) - mu.total_mass();
  if (deficiency > 0) terms.push_back({deficiency, &bot});

  PowerElement acc = *terms.front().second;
  Rat weight = terms.front().first;
  for (size_t k = 1; k < terms.size(); ++k) {
    const auto& [w, pe] = terms[k];
    acc = convex_comb_pd(weight / (weight + w), acc, *pe);
    weight += w;
  }
  return acc;
}

PowerElement kleisli_extend(const StateTransformer& s, const PowerElement& x) {
  if (s.flavor() != x.flavor()) fail(Errc::FlavorMismatch, "kleisli_extend: flavor of map and argument differ");
  require_same_poset(s.source(), x.poset(), "kleisli_extend");

  PowerElement acc = linear_part(s, x.gens().front());
  for (size_t i = 1; i < x.gens().size(); ++i) acc = combine(acc, linear_part(s, x.gens()[i]));
  return canonicalize(acc);
}

StateTransformer kleisli_compose(const StateTransformer& t, const StateTransformer& s) {
  if (s.flavor() != t.flavor()) fail(Errc::FlavorMismatch, "kleisli_compose: flavors differ");
  require_same_poset(s.target(), t.source(), "kleisli_compose");
  std::vector<PowerElement> table;
  table.reserve(s.table().size());
  for (const auto& e : s.table()) table.push_back(kleisli_extend(t, e));
  return StateTransformer(s.flavor(), s.source(), t.target(), std::move(table));
}

}  // namespace mpd
