#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "mpd/powerdomain.hpp"
#include "mpd/rng.hpp"

using namespace mpd;

namespace {

PosetPtr chain2() {
  return std::make_shared<FinitePoset>(std::vector<std::string>{"a", "b"},
                                       std::vector<std::pair<std::string, std::string>>{{"a", "b"}});
}

PosetPtr antichain2() {
  return std::make_shared<FinitePoset>(std::vector<std::string>{"a", "b"},
                                       std::vector<std::pair<std::string, std::string>>{});
}

PosetPtr chain3() {
  return std::make_shared<FinitePoset>(std::vector<std::string>{"a", "b", "c"},
                                       std::vector<std::pair<std::string, std::string>>{{"a", "b"}, {"b", "c"}});
}

Valuation val2(const PosetPtr& p, Rat a, Rat b) { return Valuation(p, {std::move(a), std::move(b)}); }

Valuation random_subprob(Rng& rng, const PosetPtr& p) {
  std::vector<Rat> mass;
  for (int i = 0; i < p->size(); ++i) mass.push_back(rng.unit_rat(4));
  Rat total = 0;
  for (const auto& m : mass) total += m;
  if (total > 1)
    for (auto& m : mass) m /= total;
  return Valuation(p, mass);
}

PowerElement random_pe(Rng& rng, Flavor f, const PosetPtr& p) {
  std::vector<Valuation> gens;
  const size_t n = 1 + rng.below(3);
  for (size_t i = 0; i < n; ++i) gens.push_back(random_subprob(rng, p));
  return PowerElement(f, p, std::move(gens));
}

// Transformer tables must be monotone, so they are built from monotone
// ingredients: random monotone self-maps pushed through eta (an order
// embedding), mixed with operations that are monotone in every argument.
std::vector<int> random_monotone_endo(Rng& rng, const PosetPtr& p) {
  for (;;) {
    std::vector<int> h;
    for (int i = 0; i < p->size(); ++i) h.push_back(static_cast<int>(rng.below(static_cast<uint64_t>(p->size()))));
    bool mono = true;
    for (int i = 0; i < p->size() && mono; ++i)
      for (int j = 0; j < p->size() && mono; ++j)
        if (p->leq(i, j) && !p->leq(h[static_cast<size_t>(i)], h[static_cast<size_t>(j)])) mono = false;
    if (mono) return h;
  }
}

StateTransformer random_transformer(Rng& rng, Flavor f, const PosetPtr& p) {
  auto h1 = random_monotone_endo(rng, p), h2 = random_monotone_endo(rng, p),
       h3 = random_monotone_endo(rng, p);
  const Rat r = rng.unit_rat(4), s = rng.unit_rat(4);
  const bool with_combine = rng.coin(), with_scale = rng.coin();
  std::vector<PowerElement> table;
  for (int i = 0; i < p->size(); ++i) {
    PowerElement e = convex_comb_pd(r, eta(f, p, p->name(h1[static_cast<size_t>(i)])),
                                    eta(f, p, p->name(h2[static_cast<size_t>(i)])));
    if (with_combine) e = combine(e, eta(f, p, p->name(h3[static_cast<size_t>(i)])));
    if (with_scale) e = scale_pd(s, e);
    table.push_back(std::move(e));
  }
  return StateTransformer(f, p, p, std::move(table));
}

constexpr Flavor kFlavors[] = {Flavor::Lower, Flavor::Upper, Flavor::Convex};

}  // namespace

TEST_CASE("eta and construction") {
  auto p = chain2();
  auto e = eta(Flavor::Lower, p, "a");
  CHECK(e.gens().size() == 1);
  CHECK(e.gens()[0] == dirac(p, "a"));
  CHECK_THROWS_AS(eta(Flavor::Lower, p, "zzz"), Error);

  CHECK_THROWS_AS(PowerElement(Flavor::Lower, p, {}), Error);
  CHECK_THROWS_AS(PowerElement(Flavor::Lower, p, {Valuation(p, {Rat(1), Rat(1)})}), Error);
}

TEST_CASE("units are order embeddings in every flavor") {
  auto p = chain3();
  for (Flavor f : kFlavors)
    for (int i = 0; i < p->size(); ++i)
      for (int j = 0; j < p->size(); ++j)
        CHECK(po_leq(eta(f, p, p->name(i)), eta(f, p, p->name(j))) == p->leq(i, j));
}

TEST_CASE("convex unit is a singleton lens") {
  auto p = chain2();
  auto e = eta(Flavor::Convex, p, "b");
  // Down-closure contains scaled copies, up-closure contains nothing below.
  CHECK(in_lower_hull(scale(Rat(1) / 2, dirac(p, "b")), e.gens()));
  CHECK(in_upper_hull(dirac(p, "b"), e.gens()));
  CHECK(!in_upper_hull(dirac(p, "a"), e.gens()));
}

TEST_CASE("bottom is least; semilattice action of bottom") {
  Rng rng(61);
  for (Flavor f : kFlavors)
    for (int trial = 0; trial < 12; ++trial) {
      auto p = rng.coin() ? chain2() : antichain2();
      auto x = random_pe(rng, f, p);
      CHECK(po_leq(bottom(f, p), x));
      if (f == Flavor::Lower) CHECK(po_equal(combine(bottom(f, p), x), x));  // join with least
      if (f == Flavor::Upper) CHECK(po_equal(combine(bottom(f, p), x), bottom(f, p)));  // meet with least
    }
}

TEST_CASE("po_leq and po_equal basics") {
  auto p = antichain2();
  auto da = dirac(p, "a"), db = dirac(p, "b");

  for (Flavor f : kFlavors) {
    PowerElement x(f, p, {da, db});
    CHECK(po_leq(x, x));
    CHECK(po_equal(PowerElement(f, p, {da, db}), PowerElement(f, p, {db, da})));
  }
  // 0 is redundant in a lower set.
  CHECK(po_equal(PowerElement(Flavor::Lower, p, {da, Valuation::zero(p)}),
                 PowerElement(Flavor::Lower, p, {da})));
  // Lower refutation through the hull test.
  CHECK(!po_leq(PowerElement(Flavor::Lower, p, {da}),
                PowerElement(Flavor::Lower, p, {val2(p, Rat(1) / 2, Rat(1) / 2)})));

  CHECK_THROWS_AS(po_leq(PowerElement(Flavor::Lower, p, {da}), PowerElement(Flavor::Upper, p, {da})), Error);
}

TEST_CASE("lens equality is equality of both closures") {
  Rng rng(67);
  for (int trial = 0; trial < 25; ++trial) {
    auto p = rng.coin() ? chain2() : antichain2();
    auto x = random_pe(rng, Flavor::Convex, p);
    auto y = random_pe(rng, Flavor::Convex, p);
    const bool lens_eq = po_equal(x, y);
    const bool lower_eq = po_equal(PowerElement(Flavor::Lower, p, x.gens()),
                                   PowerElement(Flavor::Lower, p, y.gens()));
    const bool upper_eq = po_equal(PowerElement(Flavor::Upper, p, x.gens()),
                                   PowerElement(Flavor::Upper, p, y.gens()));
    CHECK(lens_eq == (lower_eq && upper_eq));
  }
}

TEST_CASE("convex_comb_pd: lifted barycentric laws and a pinned value") {
  Rng rng(71);
  for (Flavor f : kFlavors)
    for (int trial = 0; trial < 10; ++trial) {
      auto p = rng.coin() ? chain2() : antichain2();
      auto x = random_pe(rng, f, p), y = random_pe(rng, f, p), z = random_pe(rng, f, p);
      Rat r = rng.unit_rat(4), s = rng.unit_rat(4);

      CHECK(po_equal(convex_comb_pd(1, x, y), x));                                  // (B1)
      CHECK(po_equal(convex_comb_pd(r, x, x), x));                                  // (B2)
      CHECK(po_equal(convex_comb_pd(r, x, y), convex_comb_pd(1 - r, y, x)));        // (SC)
      if (s * r < 1) {                                                              // (SA)
        auto lhs = convex_comb_pd(r, convex_comb_pd(s, x, y), z);
        auto rhs = convex_comb_pd(s * r, x, convex_comb_pd((r - s * r) / (1 - s * r), y, z));
        CHECK(po_equal(lhs, rhs));
      }
    }

  auto p = antichain2();
  auto mix = convex_comb_pd(Rat(1) / 2, eta(Flavor::Lower, p, "a"), eta(Flavor::Lower, p, "b"));
  CHECK(po_equal(mix, PowerElement(Flavor::Lower, p, {val2(p, Rat(1) / 2, Rat(1) / 2)})));
}

TEST_CASE("combine: semilattice laws and distributivity") {
  Rng rng(73);
  for (Flavor f : kFlavors)
    for (int trial = 0; trial < 8; ++trial) {
      auto p = rng.coin() ? chain2() : antichain2();
      auto x = random_pe(rng, f, p), y = random_pe(rng, f, p), z = random_pe(rng, f, p);
      Rat r = rng.unit_rat(4);

      CHECK(po_equal(combine(x, x), x));
      CHECK(po_equal(combine(x, y), combine(y, x)));
      CHECK(po_equal(combine(combine(x, y), z), combine(x, combine(y, z))));
      // +_r distributes over the semilattice operation.
      CHECK(po_equal(convex_comb_pd(r, x, combine(y, z)),
                     combine(convex_comb_pd(r, x, y), convex_comb_pd(r, x, z))));
      // Convexity identity: x ∪ (x +_r y) ∪ y = x ∪ y.
      CHECK(po_equal(combine(combine(x, convex_comb_pd(r, x, y)), y), combine(x, y)));
    }
}

TEST_CASE("combine is join for Lower, meet for Upper") {
  Rng rng(79);
  for (int trial = 0; trial < 15; ++trial) {
    auto p = rng.coin() ? chain2() : antichain2();
    for (Flavor f : {Flavor::Lower, Flavor::Upper}) {
      auto x = random_pe(rng, f, p), y = random_pe(rng, f, p), w = random_pe(rng, f, p);
      auto xy = combine(x, y);
      if (f == Flavor::Lower) {
        CHECK(po_leq(x, xy));
        CHECK(po_leq(y, xy));
        if (po_leq(x, w) && po_leq(y, w)) CHECK(po_leq(xy, w));  // least among upper bounds
      } else {
        CHECK(po_leq(xy, x));
        CHECK(po_leq(xy, y));
        if (po_leq(w, x) && po_leq(w, y)) CHECK(po_leq(w, xy));  // greatest among lower bounds
      }
    }
  }
}

TEST_CASE("scale_pd endpoints and the OC3-failure fact") {
  Rng rng(83);
  for (Flavor f : kFlavors) {
    auto p = antichain2();
    auto x = random_pe(rng, f, p);
    CHECK(po_equal(scale_pd(1, x), x));
    CHECK(po_equal(scale_pd(0, x), bottom(f, p)));
  }

  // Over the discrete two-point poset, with coordinates (mass at a, mass at b):
  // X' = ↑conv{(0,1),(1/2,0)} sits below (1/2)·↑{(1,0)} in the Smyth order,
  // yet no subprobability x satisfies (1/2)·x = (0,1): that x must be (0,2),
  // of total mass 2. So scalar division by 1/2 is impossible inside X'.
  auto p = antichain2();
  PowerElement xprime(Flavor::Upper, p, {val2(p, Rat(0), Rat(1)), val2(p, Rat(1) / 2, Rat(0))});
  PowerElement y(Flavor::Upper, p, {val2(p, Rat(1), Rat(0))});
  CHECK(po_leq(xprime, scale_pd(Rat(1) / 2, y)));
  auto required = scale(2, val2(p, Rat(0), Rat(1)));  // the unique x with x/2 = (0,1)
  CHECK(required.total_mass() == 2);
  CHECK(!required.is_subprobability());
}

TEST_CASE("scale_pd is monotone in the scalar and the argument") {
  Rng rng(89);
  for (Flavor f : kFlavors)
    for (int trial = 0; trial < 10; ++trial) {
      auto p = rng.coin() ? chain2() : antichain2();
      auto x = random_pe(rng, f, p);
      Rat r = rng.unit_rat(4), s = rng.unit_rat(4);
      if (r > s) std::swap(r, s);
      CHECK(po_leq(scale_pd(r, x), scale_pd(s, x)));
    }
}

TEST_CASE("canonicalize") {
  auto p = chain2();
  auto da = dirac(p, "a");

  auto c = canonicalize(PowerElement(Flavor::Lower, p, {da, scale(Rat(1) / 2, da)}));
  CHECK(c.gens().size() == 1);
  CHECK(c.gens()[0] == da);

  Rng rng(97);
  for (Flavor f : kFlavors)
    for (int trial = 0; trial < 12; ++trial) {
      auto q = rng.coin() ? chain2() : antichain2();
      auto x = random_pe(rng, f, q);
      auto cx = canonicalize(x);
      CHECK(po_equal(cx, x));
      auto ccx = canonicalize(cx);
      CHECK(ccx.gens().size() == cx.gens().size());  // idempotent
    }
}

TEST_CASE("operations are monotone with respect to po_leq") {
  Rng rng(101);
  int hits = 0;
  for (Flavor f : kFlavors)
    for (int trial = 0; trial < 30; ++trial) {
      auto p = rng.coin() ? chain2() : antichain2();
      auto x = random_pe(rng, f, p), x2 = random_pe(rng, f, p);
      auto y = random_pe(rng, f, p), y2 = random_pe(rng, f, p);
      Rat r = rng.unit_rat(4);
      if (po_leq(x, x2) && po_leq(y, y2)) {
        ++hits;
        CHECK(po_leq(convex_comb_pd(r, x, y), convex_comb_pd(r, x2, y2)));
        CHECK(po_leq(combine(x, y), combine(x2, y2)));
      }
    }
  CHECK(hits > 5);
}

TEST_CASE("representation soundness: sampled set members pass the hull tests") {
  // Members of X +_r Y produced from the defining set operation (mix a member
  // of X with a member of Y, then move down/up as the flavor allows) must be
  // accepted by the generator representation.
  Rng rng(103);
  for (auto p : {chain2(), antichain2()}) {
    for (int trial = 0; trial < 12; ++trial) {
      auto gens_of = [&](int k) {
        std::vector<Valuation> g;
        for (int i = 0; i < k; ++i) g.push_back(random_subprob(rng, p));
        return g;
      };
      auto X = gens_of(2), Y = gens_of(2);
      Rat r = rng.unit_rat(4);

      // A member of conv F: a random two-point mixture of generators.
      auto member = [&](const std::vector<Valuation>& F) {
        Rat t = rng.unit_rat(4);
        return convex_comb(t, F[0], F[1]);
      };
      auto a = member(X), b = member(Y);
      auto mixed = convex_comb(r, a, b);

      PowerElement lower_sum = convex_comb_pd(r, PowerElement(Flavor::Lower, p, X),
                                              PowerElement(Flavor::Lower, p, Y));
      PowerElement upper_sum = convex_comb_pd(r, PowerElement(Flavor::Upper, p, X),
                                              PowerElement(Flavor::Upper, p, Y));
      // Down-scaled copies stay in the lower set; the raw mix is in both.
      CHECK(in_lower_hull(scale(rng.unit_rat(4), mixed), lower_sum.gens()));
      CHECK(in_upper_hull(mixed, upper_sum.gens()));

      // Necessary condition for lower membership, straight from the
      // definition: no up-set measure may exceed the best generator's. A
      // bumped-up point that breaks it anywhere must be rejected.
      auto bumped = add(mixed, scale(Rat(1) / 4, dirac(p, "a")));
      if (bumped.is_subprobability()) {
        bool dominated = true;
        for (auto u : p->upsets()) {
          Rat best = 0;
          for (const auto& g : lower_sum.gens()) best = std::max(best, g.measure(u));
          if (bumped.measure(u) > best) dominated = false;
        }
        if (!dominated) CHECK(!in_lower_hull(bumped, lower_sum.gens()));
      }
    }
  }
}

TEST_CASE("kleisli_extend: units and the pinned example") {
  Rng rng(107);
  for (Flavor f : kFlavors)
    for (auto p : {chain2(), antichain2()}) {
      auto s_id = eta_transformer(f, p);
      // Extension of the unit is the identity.
      for (int trial = 0; trial < 4; ++trial) {
        auto x = random_pe(rng, f, p);
        CHECK(po_equal(kleisli_extend(s_id, x), x));
      }
      // Extension applied to a unit is application.
      auto s = random_transformer(rng, f, p);
      for (int i = 0; i < p->size(); ++i)
        CHECK(po_equal(kleisli_extend(s, eta(f, p, p->name(i))), s.at(i)));
    }

  // Lower flavor over the discrete two-point poset:
  //   s(a) = ↓conv{δ_a},  s(b) = ↓conv{δ_a, δ_b},  X = ↓conv{δ_b}
  // s†(X) folds the single generator δ_b through s, giving s(b).
  auto p = antichain2();
  auto da = dirac(p, "a"), db = dirac(p, "b");
  StateTransformer s(Flavor::Lower, p, p,
                     {PowerElement(Flavor::Lower, p, {da}), PowerElement(Flavor::Lower, p, {da, db})});
  auto result = kleisli_extend(s, PowerElement(Flavor::Lower, p, {db}));
  CHECK(po_equal(result, PowerElement(Flavor::Lower, p, {da, db})));
}

TEST_CASE("kleisli fold order does not matter") {
  // Recompute the linear part of the extension with the terms folded in the
  // opposite order, using only public operations, and compare.
  Rng rng(109);
  for (Flavor f : kFlavors)
    for (int trial = 0; trial < 6; ++trial) {
      auto p = antichain2();
      std::vector<PowerElement> table{random_pe(rng, f, p), random_pe(rng, f, p)};
      StateTransformer s(f, p, p, table);
      auto mu = random_subprob(rng, p);
      PowerElement via_lib = kleisli_extend(s, PowerElement(f, p, {mu}));

      // Reverse-order fold: terms (mass_i, s(i)) plus the deficiency at bottom.
      std::vector<std::pair<Rat, PowerElement>> terms;
      const Rat deficiency = Rat(1) - mu.total_mass();
      if (deficiency > 0) terms.push_back({deficiency, bottom(f, p)});
      for (int i = p->size() - 1; i >= 0; --i)
        if (mu.mass(i) > 0) terms.push_back({mu.mass(i), s.at(i)});
      if (terms.empty()) terms.push_back({Rat(1), bottom(f, p)});

      PowerElement acc = terms[0].second;
      Rat w = terms[0].first;
      for (size_t k = 1; k < terms.size(); ++k) {
        acc = convex_comb_pd(w / (w + terms[k].first), acc, terms[k].second);
        w += terms[k].first;
      }
      CHECK(po_equal(via_lib, acc));
    }
}

TEST_CASE("kleisli composition: unit laws and associativity") {
  Rng rng(113);
  for (Flavor f : kFlavors)
    for (int trial = 0; trial < 5; ++trial) {
      auto p = rng.coin() ? chain2() : antichain2();
      auto s = random_transformer(rng, f, p);
      auto t = random_transformer(rng, f, p);
      auto u = random_transformer(rng, f, p);
      auto id = eta_transformer(f, p);

      auto point_equal = [&](const StateTransformer& a, const StateTransformer& b) {
        for (int i = 0; i < p->size(); ++i)
          if (!po_equal(a.at(i), b.at(i))) return false;
        return true;
      };
      CHECK(point_equal(kleisli_compose(id, s), s));  // left unit
      CHECK(point_equal(kleisli_compose(s, id), s));  // right unit
      CHECK(point_equal(kleisli_compose(u, kleisli_compose(t, s)),
                        kleisli_compose(kleisli_compose(u, t), s)));
    }
}

TEST_CASE("kleisli_extend is monotone") {
  Rng rng(127);
  int hits = 0;
  for (Flavor f : kFlavors)
    for (int trial = 0; trial < 15; ++trial) {
      auto p = antichain2();
      std::vector<PowerElement> table{random_pe(rng, f, p), random_pe(rng, f, p)};
      StateTransformer s(f, p, p, table);
      auto x = random_pe(rng, f, p), y = random_pe(rng, f, p);
      if (po_leq(x, y)) {
        ++hits;
        CHECK(po_leq(kleisli_extend(s, x), kleisli_extend(s, y)));
      }
    }
  CHECK(hits > 3);
}

TEST_CASE("transformer construction errors") {
  auto p = chain2();
  auto q = antichain2();
  CHECK_THROWS_AS(StateTransformer(Flavor::Lower, p, p, {eta(Flavor::Lower, p, "a")}), Error);
  CHECK_THROWS_AS(StateTransformer(Flavor::Lower, p, p,
                                   {eta(Flavor::Upper, p, "a"), eta(Flavor::Upper, p, "b")}),
                  Error);
  StateTransformer ok = eta_transformer(Flavor::Lower, p);
  CHECK_THROWS_AS(kleisli_extend(ok, PowerElement(Flavor::Upper, p, {dirac(p, "a")})), Error);
  CHECK_THROWS_AS(kleisli_extend(ok, eta(Flavor::Lower, q, "a")), Error);

  // Non-monotone tables are not state transformers: over the chain a <= b,
  // sending a strictly higher than b must be rejected.
  CHECK_THROWS_AS(StateTransformer(Flavor::Lower, p, p,
                                   {eta(Flavor::Lower, p, "b"), eta(Flavor::Lower, p, "a")}),
                  Error);
}
