#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mpd/functional.hpp"

namespace mpd {

namespace {

std::string pred_str(const Predicate& f) {
  std::string s = "{";
  for (int i = 0; i < f.size(); ++i) {
    if (i) s += ", ";
    s += f.poset()->name(i) + ":" + f.at(i).str();
  }
  return s + "}";
}

std::string ival_str(const ExtInterval& v) { return "[" + v.lo.str() + ", " + v.hi.str() + "]"; }

}  // namespace

std::vector<Predicate> predicate_suite(const PosetPtr& p, RangeMode mode, int random_count,
                                       uint64_t seed, int max_indicators) {
  std::vector<Predicate> suite;
  const std::vector<UpSet>& us = p->upsets();

  if (static_cast<int>(us.size()) <= max_indicators) {
    for (const UpSet& u : us) suite.push_back(Predicate::indicator(p, u, mode));
  } else {
    // Too many up-sets to sweep them all: keep the structurally important
    // ones (empty, full, every principal up-set) and stride-sample the rest
    // of the enumeration so the selection stays deterministic.
    std::set<uint32_t> picked{0u, p->full_mask()};
    for (int i = 0; i < p->size(); ++i) picked.insert(p->up_mask(i));
    size_t room = static_cast<size_t>(max_indicators) - std::min(picked.size(), static_cast<size_t>(max_indicators));
    size_t stride = room ? std::max<size_t>(1, us.size() / (room + 1)) : us.size();
    for (size_t k = 0; k < us.size() && static_cast<int>(picked.size()) < max_indicators; k += stride)
      picked.insert(us[k].bits);
    for (uint32_t bits : picked) suite.push_back(Predicate::indicator(p, UpSet{bits}, mode));
  }

  suite.push_back(Predicate::constant(p, ExtRat(Rat(0)), mode));
  suite.push_back(Predicate::constant(p, ExtRat(Rat(1) / 2), mode));
  suite.push_back(Predicate::constant(p, ExtRat(Rat(1)), mode));

  std::mt19937_64 rng(seed);
  for (int t = 0; t < random_count; ++t) {
    std::vector<ExtRat> values(static_cast<size_t>(p->size()), ExtRat(Rat(0)));
    Rat total = 0;
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < terms; ++k) {
      const UpSet& u = us[static_cast<size_t>(rng() % us.size())];
      Rat w(1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 4));
      total += w;
      for (int i = 0; i < p->size(); ++i)
        if (u.contains(i)) values[static_cast<size_t>(i)] = values[static_cast<size_t>(i)] + ExtRat(w);
    }
    if (mode == RangeMode::Unit) {
      if (total > 1)
        for (ExtRat& v : values) v = (Rat(1) / total) * v;
    } else if (rng() % 4 == 0) {
      // Occasionally place infinity on a principal up-set; still monotone,
      // and it exercises the 0 * inf = 0 and inf-absorbing branches.
      uint32_t top = p->up_mask(static_cast<int>(rng() % static_cast<uint64_t>(p->size())));
      for (int i = 0; i < p->size(); ++i)
        if ((top >> i) & 1u) values[static_cast<size_t>(i)] = ExtRat::infinity();
    }
    suite.push_back(Predicate(p, std::move(values), mode));
  }
  return suite;
}

namespace {

struct Checker {
  HealthReport report;

  // Records the first violation and flips the report; callers bail out once
  // ok() goes false so the counterexample stays the earliest one found.
  void violate(const std::string& law, const std::string& inputs, const std::string& lhs,
               const std::string& rhs) {
    if (!report.passed) return;
    report.passed = false;
    report.violations.push_back(Violation{law, inputs, lhs, rhs});
  }
  bool ok() const { return report.passed; }
};

using EvalFn = std::function<ExtInterval(const Predicate&)>;

// The scalar and convex paths share every law below by treating a scalar
// functional as the degenerate interval [F(f), F(f)]; `endpoints` tells the
// loop whether the two ends are genuinely distinct (Convex) or one value.
struct LawSuite {
  EvalFn eval;
  bool endpoints;  // convex: report lo/hi separately
  Flavor flavor;
  RangeMode mode;
};

std::string val_str(const LawSuite& ls, const ExtInterval& v) {
  return ls.endpoints ? ival_str(v) : v.lo.str();
}

void check_unary(const LawSuite& ls, const std::vector<Predicate>& unary,
                 const std::vector<Rat>& scalars, Checker& ck) {
  for (const Predicate& f : unary) {
    if (!ck.ok()) return;
    ExtInterval vf = ls.eval(f);
    if (ls.endpoints && vf.lo > vf.hi)
      ck.violate("interval-wellformedness", "f=" + pred_str(f), ival_str(vf), "lo <= hi");
    if (ls.mode == RangeMode::Unit) {
      bool in_range = ExtRat(Rat(0)) <= vf.lo && vf.hi <= ExtRat(Rat(1));
      if (!in_range)
        ck.violate("unit-range", "f=" + pred_str(f), val_str(ls, vf), "within [0, 1]");
    }
    for (const Rat& r : scalars) {
      if (!ck.ok()) return;
      ExtInterval scaled = ls.eval(pred_scale(r, f));
      ExtInterval want{r * vf.lo, r * vf.hi};
      if (scaled != want)
        ck.violate(ls.endpoints ? "endpoint-homogeneity" : "homogeneity",
                   "f=" + pred_str(f) + ", r=" + rat_to_string(r), val_str(ls, scaled),
                   val_str(ls, want));
    }
  }
}

void check_pair(const LawSuite& ls, const Predicate& f, const Predicate& g, const ExtInterval& vf,
                const ExtInterval& vg, Checker& ck) {
  // In Unit mode f+g can leave [0,1], so the sum laws are checked in the
  // half-scaled form F((f+g)/2) vs (F(f)+F(g))/2 — equivalent under the
  // homogeneity the same run verifies.
  bool half = ls.mode == RangeMode::Unit;
  Predicate s = half ? pred_mix(Rat(1) / 2, f, g) : pred_add(f, g);
  ExtInterval vs = ls.eval(s);
  Rat h = half ? Rat(1) / 2 : Rat(1);
  ExtRat lo_sum = h * vf.lo + h * vg.lo;
  ExtRat hi_sum = h * vf.hi + h * vg.hi;
  std::string tag = half ? " (half-scaled)" : "";
  std::string in = "f=" + pred_str(f) + ", g=" + pred_str(g);

  switch (ls.flavor) {
    case Flavor::Lower:
      if (!(vs.hi <= hi_sum))
        ck.violate("subadditivity" + tag, in, val_str(ls, vs), "<= " + hi_sum.str());
      break;
    case Flavor::Upper:
      if (!(vs.lo >= lo_sum))
        ck.violate("superadditivity" + tag, in, val_str(ls, vs), ">= " + lo_sum.str());
      break;
    case Flavor::Convex: {
      if (!(vs.lo >= lo_sum)) {
        ck.violate("lower-superadditivity" + tag, in, vs.lo.str(), ">= " + lo_sum.str());
        return;
      }
      if (!(vs.hi <= hi_sum)) {
        ck.violate("upper-subadditivity" + tag, in, vs.hi.str(), "<= " + hi_sum.str());
        return;
      }
      ExtRat mid = h * vf.lo + h * vg.hi;  // F_lo(f) + F_hi(g), scaled
      if (!(vs.lo <= mid && mid <= vs.hi))
        ck.violate("mediality" + tag, in,
                   vs.lo.str() + " <= " + mid.str() + " <= " + vs.hi.str(), "chain must hold");
      break;
    }
  }
}

void check_containment(const Functional& f, const std::vector<Predicate>& suite, Checker& ck) {
  // Interval predicates assembled from comparable suite pairs; containment
  // of arguments must give containment of values.
  std::vector<IntervalPredicate> ivals;
  for (size_t i = 0; i < suite.size() && ivals.size() < 48; ++i)
    for (size_t j = 0; j < suite.size() && ivals.size() < 48; ++j)
      if (pred_leq(suite[i], suite[j])) ivals.emplace_back(suite[i], suite[j]);

  std::vector<ExtInterval> vals;
  vals.reserve(ivals.size());
  for (const IntervalPredicate& ip : ivals) vals.push_back(f.interval(ip));

  for (size_t i = 0; i < ivals.size() && ck.ok(); ++i)
    for (size_t j = 0; j < ivals.size() && ck.ok(); ++j) {
      if (!interval_contained(ivals[i], ivals[j])) continue;
      bool ok = vals[j].lo <= vals[i].lo && vals[i].hi <= vals[j].hi;
      if (!ok)
        ck.violate("containment-monotonicity",
                   "a=[" + pred_str(ivals[i].lower()) + ", " + pred_str(ivals[i].upper()) +
                       "], b=[" + pred_str(ivals[j].lower()) + ", " + pred_str(ivals[j].upper()) + "]",
                   ival_str(vals[i]), "contained in " + ival_str(vals[j]));
    }
}

}  // namespace

HealthReport check_healthiness(const Functional& f, Flavor flavor, const PosetPtr& p,
                               RangeMode mode, const HealthinessOptions& opts) {
  bool convex = flavor == Flavor::Convex;
  if (convex && !f.interval)
    fail(Errc::MalformedInput, "check_healthiness: convex functional needs an interval part");
  if (!convex && !f.scalar)
    fail(Errc::MalformedInput, "check_healthiness: functional needs a scalar part");

  LawSuite ls;
  ls.flavor = flavor;
  ls.mode = mode;
  ls.endpoints = convex;
  if (convex)
    ls.eval = [&f](const Predicate& g) { return f.interval(IntervalPredicate(g)); };
  else
    ls.eval = [&f](const Predicate& g) {
      ExtRat v = f.scalar(g);
      return ExtInterval{v, v};
    };

  std::vector<Predicate> suite =
      predicate_suite(p, mode, opts.random_predicates, opts.seed, opts.max_indicators);
  for (const auto& pr : opts.extra_pairs) {
    suite.push_back(pr.first);
    suite.push_back(pr.second);
  }

  Checker ck;

  // Binary laws over suite pairs; the sums f+g these build are the
  // "pairwise sums" part of the test family, so feed them back through the
  // unary laws as well (capped to keep large posets in budget).
  std::vector<ExtInterval> vals;
  vals.reserve(suite.size());
  for (const Predicate& g : suite) vals.push_back(ls.eval(g));

  std::vector<Predicate> unary = suite;
  int pair_budget = 2000;
  for (size_t i = 0; i < suite.size() && ck.ok(); ++i)
    for (size_t j = i; j < suite.size() && ck.ok(); ++j) {
      if (--pair_budget < 0) break;
      check_pair(ls, suite[i], suite[j], vals[i], vals[j], ck);
      if (convex && i != j && ck.ok())  // mediality is not symmetric in (f, g)
        check_pair(ls, suite[j], suite[i], vals[j], vals[i], ck);
      if (static_cast<int>(unary.size()) < static_cast<int>(suite.size()) + 200)
        unary.push_back(mode == RangeMode::Unit ? pred_mix(Rat(1) / 2, suite[i], suite[j])
                                                : pred_add(suite[i], suite[j]));
    }

  if (ck.ok()) check_unary(ls, unary, opts.scalars, ck);

  if (ck.ok() && mode == RangeMode::Extended) {
    Predicate one = Predicate::constant(p, ExtRat(Rat(1)), mode);
    switch (flavor) {
      case Flavor::Lower: {
        ExtInterval v = ls.eval(one);
        if (!(v.hi <= ExtRat(Rat(1))))
          ck.violate("nonexpansiveness", "f=1", v.hi.str(), "<= 1");
        break;
      }
      case Flavor::Upper:
        for (size_t i = 0; i < suite.size() && ck.ok(); ++i) {
          ExtInterval v = ls.eval(pred_add(suite[i], one));
          if (!(v.lo <= vals[i].lo + ExtRat(Rat(1))))
            ck.violate("strong-nonexpansiveness", "f=" + pred_str(suite[i]), v.lo.str(),
                       "<= " + (vals[i].lo + ExtRat(Rat(1))).str());
        }
        break;
      case Flavor::Convex: {
        ExtInterval v = ls.eval(one);
        if (!(v.hi <= ExtRat(Rat(1))))
          ck.violate("nonexpansiveness", "f=1", v.hi.str(), "<= 1");
        break;
      }
    }
  }

  if (ck.ok() && convex) check_containment(f, suite, ck);

  return ck.report;
}

}  // namespace mpd
