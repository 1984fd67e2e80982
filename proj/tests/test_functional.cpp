#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "mpd/functional.hpp"
#include "mpd/hulls.hpp"
#include "mpd/rng.hpp"

using namespace mpd;

namespace {

PosetPtr point1() {
  return std::make_shared<FinitePoset>(std::vector<std::string>{"a"},
                                       std::vector<std::pair<std::string, std::string>>{});
}

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

Predicate pred2(const PosetPtr& p, ExtRat a, ExtRat b) {
  return Predicate(p, {std::move(a), std::move(b)});
}

// Flavor-appropriate "lambda of x is pointwise below lambda of y at f".
bool lambda_leq_at(const PowerElement& x, const PowerElement& y, const Predicate& f) {
  switch (x.flavor()) {
    case Flavor::Lower:
      return lambda_lower(x, f) <= lambda_lower(y, f);
    case Flavor::Upper:
      return lambda_upper(x, f) <= lambda_upper(y, f);
    case Flavor::Convex: {
      ExtInterval a = lambda_convex(x, f), b = lambda_convex(y, f);
      return a.lo <= b.lo && a.hi <= b.hi;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("lambda on the two-chain") {
  auto p = chain2();
  PowerElement lo(Flavor::Lower, p, {Valuation(p, {1, 0}), val2(p, 0, 1)});
  PowerElement up(Flavor::Upper, p, {Valuation(p, {1, 0}), val2(p, 0, 1)});
  PowerElement cv(Flavor::Convex, p, {Valuation(p, {1, 0}), val2(p, 0, 1)});
  Predicate f = pred2(p, 1, 3);

  CHECK(lambda_lower(lo, f) == ExtRat(Rat(3)));
  CHECK(lambda_upper(up, f) == ExtRat(Rat(1)));
  CHECK((lambda_convex(cv, f) == ExtInterval{ExtRat(Rat(1)), ExtRat(Rat(3))}));

  // Infinite predicate values flow through: a generator putting mass on b
  // sees f(b) = inf, the one concentrated on a does not.
  Predicate g = pred2(p, Rat(1) / 2, ExtRat::infinity());
  CHECK(lambda_lower(lo, g) == ExtRat::infinity());
  CHECK(lambda_upper(up, g) == ExtRat(Rat(1) / 2));

  CHECK_THROWS_AS(lambda_lower(up, f), Error);
  CHECK_THROWS_AS(lambda_upper(lo, f), Error);
  CHECK_THROWS_AS(lambda_convex(lo, f), Error);
  auto q = antichain2();
  CHECK_THROWS_AS(lambda_lower(lo, pred2(q, 1, 1)), Error);
}

TEST_CASE("lambda respects units and bottoms") {
  Rng rng(2026);
  for (const auto& p : {chain2(), antichain2(), chain3()}) {
    std::vector<Predicate> suite = predicate_suite(p, RangeMode::Extended, 4, 7);
    for (Flavor fl : kFlavors) {
      for (const Predicate& f : suite) {
        for (int i = 0; i < p->size(); ++i) {
          PowerElement e = eta(fl, p, p->name(i));
          switch (fl) {
            case Flavor::Lower:
              CHECK(lambda_lower(e, f) == f.at(i));
              break;
            case Flavor::Upper:
              CHECK(lambda_upper(e, f) == f.at(i));
              break;
            case Flavor::Convex:
              CHECK((lambda_convex(e, f) == ExtInterval{f.at(i), f.at(i)}));
              break;
          }
        }
        PowerElement b = bottom(fl, p);
        if (fl == Flavor::Lower) CHECK(lambda_lower(b, f) == ExtRat(Rat(0)));
        if (fl == Flavor::Upper) CHECK(lambda_upper(b, f) == ExtRat(Rat(0)));
        if (fl == Flavor::Convex) CHECK(lambda_convex(b, f).hi == ExtRat(Rat(0)));
      }
    }
  }
  (void)rng;
}

TEST_CASE("lambda is a semilattice morphism and respects mixes") {
  Rng rng(31);
  for (const auto& p : {chain2(), antichain2(), chain3()}) {
    std::vector<Predicate> suite = predicate_suite(p, RangeMode::Extended, 3, 11);
    for (Flavor fl : kFlavors) {
      for (int trial = 0; trial < 12; ++trial) {
        PowerElement x = random_pe(rng, fl, p), y = random_pe(rng, fl, p);
        Rat r = rng.unit_rat(4);
        PowerElement u = combine(x, y);
        PowerElement m = convex_comb_pd(r, x, y);
        PowerElement s = scale_pd(r, x);
        for (const Predicate& f : suite) {
          switch (fl) {
            case Flavor::Lower: {
              ExtRat vx = lambda_lower(x, f), vy = lambda_lower(y, f);
              CHECK(lambda_lower(u, f) == ext_max(vx, vy));
              CHECK(lambda_lower(m, f) == r * vx + (Rat(1) - r) * vy);
              CHECK(lambda_lower(s, f) == r * vx);
              break;
            }
            case Flavor::Upper: {
              ExtRat vx = lambda_upper(x, f), vy = lambda_upper(y, f);
              CHECK(lambda_upper(u, f) == ext_min(vx, vy));
              CHECK(lambda_upper(m, f) == r * vx + (Rat(1) - r) * vy);
              CHECK(lambda_upper(s, f) == r * vx);
              break;
            }
            case Flavor::Convex: {
              ExtInterval vx = lambda_convex(x, f), vy = lambda_convex(y, f);
              ExtInterval vu = lambda_convex(u, f);
              CHECK(vu.lo == ext_min(vx.lo, vy.lo));
              CHECK(vu.hi == ext_max(vx.hi, vy.hi));
              ExtInterval vm = lambda_convex(m, f);
              CHECK(vm.lo == r * vx.lo + (Rat(1) - r) * vy.lo);
              CHECK(vm.hi == r * vx.hi + (Rat(1) - r) * vy.hi);
              ExtInterval vs = lambda_convex(s, f);
              CHECK(vs.lo == r * vx.lo);
              CHECK(vs.hi == r * vx.hi);
              break;
            }
          }
        }
      }
    }
  }
}

TEST_CASE("lambda does not depend on the presentation") {
  Rng rng(47);
  auto p = chain3();
  std::vector<Predicate> suite = predicate_suite(p, RangeMode::Extended, 3, 13);
  for (Flavor fl : kFlavors) {
    for (int trial = 0; trial < 10; ++trial) {
      PowerElement x = random_pe(rng, fl, p);
      // Pad with a mixture of existing generators: same hull, more gens.
      std::vector<Valuation> padded = x.gens();
      padded.push_back(convex_comb(rng.unit_rat(4), padded.front(), padded.back()));
      PowerElement y(fl, p, padded);
      REQUIRE(po_equal(x, y));
      for (const Predicate& f : suite) {
        if (fl == Flavor::Lower) CHECK(lambda_lower(x, f) == lambda_lower(y, f));
        if (fl == Flavor::Upper) CHECK(lambda_upper(x, f) == lambda_upper(y, f));
        if (fl == Flavor::Convex) CHECK(lambda_convex(x, f) == lambda_convex(y, f));
      }
    }
  }
}

TEST_CASE("lambda reflects the order, with separating witnesses") {
  Rng rng(59);
  int below = 0, apart = 0;
  for (const auto& p : {chain2(), antichain2(), chain3()}) {
    std::vector<Predicate> suite = predicate_suite(p, RangeMode::Extended, 4, 17);
    for (Flavor fl : kFlavors) {
      for (int trial = 0; trial < 25; ++trial) {
        PowerElement x = random_pe(rng, fl, p), y = random_pe(rng, fl, p);
        auto witness = po_separate(x, y);
        if (po_leq(x, y)) {
          ++below;
          CHECK(!witness.has_value());
          for (const Predicate& f : suite) CHECK(lambda_leq_at(x, y, f));
        } else {
          ++apart;
          REQUIRE(witness.has_value());
          // Strictly violated at the witness, in the flavor's reading.
          CHECK(!lambda_leq_at(x, y, *witness));
        }
      }
    }
  }
  CHECK(below > 20);
  CHECK(apart > 20);
}

TEST_CASE("healthiness passes for functionals of power elements") {
  Rng rng(71);
  for (const auto& p : {chain2(), antichain2(), chain3()}) {
    for (Flavor fl : kFlavors) {
      for (RangeMode mode : {RangeMode::Extended, RangeMode::Unit}) {
        PowerElement x = random_pe(rng, fl, p);
        HealthinessOptions opts;
        opts.random_predicates = 4;
        opts.seed = 97;
        HealthReport rep = check_healthiness(Functional::of_power_element(x), fl, p, mode, opts);
        if (!rep.passed) {
          const Violation& v = rep.violations.front();
          FAIL_CHECK("healthiness violated: " << v.law << " on " << v.inputs << " : " << v.lhs
                                              << " vs " << v.rhs);
        }
        CHECK(rep.passed);
      }
    }
  }
}

TEST_CASE("healthiness rejects the three standard mutants") {
  auto p = antichain2();
  std::vector<Valuation> spread{Valuation(p, {1, 0}), val2(p, 0, 1)};
  HealthinessOptions opts;
  opts.random_predicates = 3;
  opts.seed = 5;

  for (RangeMode mode : {RangeMode::Extended, RangeMode::Unit}) {
    for (Flavor fl : kFlavors) {
      PowerElement x(fl, p, spread);
      Functional base = Functional::of_power_element(x);

      // Constant shift: breaks homogeneity at r = 0 (and unit-range).
      Functional shifted;
      if (fl == Flavor::Convex)
        shifted.interval = [base](const IntervalPredicate& g) {
          ExtInterval v = base.interval(g);
          return ExtInterval{v.lo + ExtRat(Rat(1)), v.hi + ExtRat(Rat(1))};
        };
      else
        shifted.scalar = [base](const Predicate& g) { return base.scalar(g) + ExtRat(Rat(1)); };
      HealthReport rep = check_healthiness(shifted, fl, p, mode, opts);
      CHECK(!rep.passed);
      REQUIRE(!rep.violations.empty());
      CHECK(!rep.violations.front().inputs.empty());

      // Polarity flip: the wrong extremum over the generators.
      Functional flipped;
      if (fl == Flavor::Convex)
        flipped.interval = [x](const IntervalPredicate& g) {
          return ExtInterval{lambda_convex(x, g.lower()).hi, lambda_convex(x, g.upper()).lo};
        };
      else if (fl == Flavor::Lower)
        flipped.scalar = [x, p](const Predicate& g) {
          return lambda_upper(PowerElement(Flavor::Upper, p, x.gens()), g);
        };
      else
        flipped.scalar = [x, p](const Predicate& g) {
          return lambda_lower(PowerElement(Flavor::Lower, p, x.gens()), g);
        };
      rep = check_healthiness(flipped, fl, p, mode, opts);
      CHECK(!rep.passed);
      REQUIRE(!rep.violations.empty());

      // Mass above one: a linear functional of an over-unit valuation.
      // Every linearity law holds, so only the range laws can catch it.
      Valuation heavy(p, {Rat(3) / 4, Rat(1) / 2});
      Functional mass;
      if (fl == Flavor::Convex)
        mass.interval = [heavy](const IntervalPredicate& g) {
          return ExtInterval{choquet_integral(g.lower(), heavy), choquet_integral(g.upper(), heavy)};
        };
      else
        mass.scalar = [heavy](const Predicate& g) { return choquet_integral(g, heavy); };
      rep = check_healthiness(mass, fl, p, mode, opts);
      CHECK(!rep.passed);
      REQUIRE(!rep.violations.empty());
      if (mode == RangeMode::Unit) CHECK(rep.violations.front().law == "unit-range");
    }
  }
}

TEST_CASE("predicate transformers: unit, pointwise reading, naturality") {
  Rng rng(83);
  for (const auto& p : {chain2(), chain3()}) {
    std::vector<Predicate> ext = predicate_suite(p, RangeMode::Extended, 3, 19);
    for (Flavor fl : kFlavors) {
      StateTransformer id = eta_transformer(fl, p);
      for (const Predicate& g : ext) {
        if (fl == Flavor::Convex) {
          IntervalPredicate lifted(g);
          CHECK(pt_apply_interval(id, lifted) == lifted);
        } else {
          CHECK(pt_apply(id, g) == g);
        }
      }

      for (int trial = 0; trial < 8; ++trial) {
        StateTransformer s = random_transformer(rng, fl, p);
        StateTransformer t = random_transformer(rng, fl, p);
        StateTransformer st = kleisli_compose(t, s);  // run s, then t
        for (const Predicate& g : ext) {
          if (fl == Flavor::Convex) {
            IntervalPredicate lifted(g);
            IntervalPredicate via_comp = pt_apply_interval(st, lifted);
            IntervalPredicate via_steps = pt_apply_interval(s, pt_apply_interval(t, lifted));
            CHECK(via_comp == via_steps);
            for (int i = 0; i < p->size(); ++i) {
              ExtInterval v = lambda_convex(st.at(i), g);
              CHECK(via_comp.lower().at(i) == v.lo);
              CHECK(via_comp.upper().at(i) == v.hi);
            }
          } else {
            Predicate via_comp = pt_apply(st, g);
            CHECK(via_comp == pt_apply(s, pt_apply(t, g)));
            for (int i = 0; i < p->size(); ++i) {
              ExtRat v = fl == Flavor::Lower ? lambda_lower(st.at(i), g) : lambda_upper(st.at(i), g);
              CHECK(via_comp.at(i) == v);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("separating transformers finds a state and a predicate") {
  Rng rng(101);
  auto p = chain3();
  int equal_seen = 0, witness_seen = 0;
  for (Flavor fl : kFlavors) {
    for (int trial = 0; trial < 15; ++trial) {
      StateTransformer s = random_transformer(rng, fl, p);

      // A re-presentation of s: pad one entry with a redundant generator.
      std::vector<PowerElement> padded = s.table();
      std::vector<Valuation> gens = padded[0].gens();
      gens.push_back(convex_comb(Rat(1) / 3, gens.front(), gens.back()));
      padded[0] = PowerElement(fl, p, gens);
      StateTransformer same(fl, p, p, padded);
      CHECK(!separate_transformers(s, same).has_value());
      ++equal_seen;

      StateTransformer t = random_transformer(rng, fl, p);
      auto w = separate_transformers(s, t);
      bool tables_equal = true;
      for (int i = 0; i < p->size(); ++i)
        if (!po_equal(s.at(i), t.at(i))) tables_equal = false;
      CHECK(w.has_value() == !tables_equal);
      if (w) {
        ++witness_seen;
        // The witness must make the two backward readings disagree.
        if (fl == Flavor::Convex) {
          IntervalPredicate lifted(w->g);
          IntervalPredicate a = pt_apply_interval(s, lifted), b = pt_apply_interval(t, lifted);
          bool differ = a.lower().at(w->state) != b.lower().at(w->state) ||
                        a.upper().at(w->state) != b.upper().at(w->state);
          CHECK(differ);
        } else {
          CHECK(pt_apply(s, w->g).at(w->state) != pt_apply(t, w->g).at(w->state));
        }
      }
    }
  }
  CHECK(equal_seen > 10);
  CHECK(witness_seen > 10);
}

TEST_CASE("minkowski functional: pinned values") {
  auto p1 = point1();
  std::vector<Valuation> f1{Valuation(p1, {Rat(1)})};
  CHECK(minkowski(f1, Valuation(p1, {Rat(0)})) == ExtRat(Rat(0)));
  CHECK(minkowski(f1, Valuation(p1, {Rat(1) / 2})) == ExtRat(Rat(1) / 2));
  CHECK(minkowski(f1, Valuation(p1, {Rat(5) / 4})) == ExtRat(Rat(5) / 4));

  // No scaling of delta_a ever dominates mass sitting on an incomparable b.
  auto pa = antichain2();
  std::vector<Valuation> fa{Valuation(pa, {1, 0})};
  CHECK(minkowski(fa, val2(pa, 0, Rat(1) / 2)) == ExtRat::infinity());

  // On the chain a < b, delta_a <= delta_b so one copy of delta_b suffices;
  // the reverse direction is impossible at any scale.
  auto pc = chain2();
  std::vector<Valuation> top{val2(pc, 0, 1)};
  std::vector<Valuation> bot{Valuation(pc, {1, 0})};
  CHECK(minkowski(top, Valuation(pc, {1, 0})) == ExtRat(Rat(1)));
  CHECK(minkowski(bot, val2(pc, 0, 1)) == ExtRat::infinity());

  CHECK_THROWS_AS(minkowski({}, Valuation(p1, {Rat(0)})), Error);
}

TEST_CASE("minkowski functional: sublinearity, unit ball, attainment") {
  Rng rng(113);
  for (const auto& p : {chain2(), antichain2()}) {
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<Valuation> F;
      const size_t n = 1 + rng.below(3);
      for (size_t i = 0; i < n; ++i) F.push_back(random_subprob(rng, p));
      Valuation a = random_subprob(rng, p), b = random_subprob(rng, p);

      ExtRat na = minkowski(F, a), nb = minkowski(F, b);
      CHECK(minkowski(F, add(a, b)) <= na + nb);
      for (const Rat& r : {Rat(0), Rat(1) / 4, Rat(2)}) {
        CHECK(minkowski(F, scale(r, a)) == r * na);
      }

      // The unit ball of nu is exactly the lower hull.
      CHECK((na <= ExtRat(Rat(1))) == in_lower_hull(a, F));

      if (na > ExtRat(Rat(0)) && !na.is_infinite()) {
        std::vector<Rat> w;
        ExtRat again = minkowski(F, a, &w);
        CHECK(again == na);
        Rat total = 0;
        Valuation combo = Valuation::zero(p);
        for (size_t i = 0; i < F.size(); ++i) {
          total += w[i];
          combo = add(combo, scale(w[i], F[i]));
        }
        CHECK(ExtRat(total) == na);
        CHECK(leq_valuation(a, combo));
        // Scaling a back into the hull realizes the infimum.
        CHECK(in_lower_hull(scale(Rat(1) / na.finite(), a), F));
      }
    }
  }
}

TEST_CASE("functional plumbing rejects malformed requests") {
  auto p = chain2();
  PowerElement lo(Flavor::Lower, p, {val2(p, 0, 1)});
  Functional empty;
  CHECK_THROWS_AS(check_healthiness(empty, Flavor::Lower, p, RangeMode::Extended), Error);
  CHECK_THROWS_AS(check_healthiness(empty, Flavor::Convex, p, RangeMode::Extended), Error);

  StateTransformer cv = eta_transformer(Flavor::Convex, p);
  StateTransformer lw = eta_transformer(Flavor::Lower, p);
  Predicate g = pred2(p, 0, 1);
  CHECK_THROWS_AS(pt_apply(cv, g), Error);
  CHECK_THROWS_AS(pt_apply_interval(lw, IntervalPredicate(g)), Error);

  PowerElement up(Flavor::Upper, p, {val2(p, 0, 1)});
  CHECK_THROWS_AS(po_separate(lo, up), Error);
}
