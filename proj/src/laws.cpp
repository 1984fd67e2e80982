#include "mpd/laws.hpp"

#include <algorithm>

namespace mpd {

Term Term::var(int slot) {
  Term t;
  t.kind = Kind::Var;
  t.index = slot;
  return t;
}

Term Term::zero() {
  Term t;
  t.kind = Kind::Zero;
  return t;
}

Term Term::plus(int scalar_slot, Term a, Term b) {
  Term t;
  t.kind = Kind::Plus;
  t.index = scalar_slot;
  t.kids.push_back(std::move(a));
  t.kids.push_back(std::move(b));
  return t;
}

Term Term::cup(Term a, Term b) {
  Term t;
  t.kind = Kind::Cup;
  t.kids.push_back(std::move(a));
  t.kids.push_back(std::move(b));
  return t;
}

Term Term::scaled(int scalar_slot, Term a) {
  Term t;
  t.kind = Kind::Scale;
  t.index = scalar_slot;
  t.kids.push_back(std::move(a));
  return t;
}

void term_requirements(const Term& t, bool& needs_zero, bool& needs_cup, bool& needs_scale) {
  switch (t.kind) {
    case Term::Kind::Zero: needs_zero = true; break;
    case Term::Kind::Cup: needs_cup = true; break;
    case Term::Kind::Scale: needs_scale = true; break;
    default: break;
  }
  for (const Term& k : t.kids) term_requirements(k, needs_zero, needs_cup, needs_scale);
}

std::vector<std::vector<Rat>> boundary_scalar_vectors(int slots) {
  const std::vector<Rat> edge{Rat(0), Rat(1), Rat(1, 2)};
  std::vector<std::vector<Rat>> out{{}};
  for (int k = 0; k < slots; ++k) {
    std::vector<std::vector<Rat>> next;
    for (const auto& v : out)
      for (const Rat& e : edge) {
        auto w = v;
        w.push_back(e);
        next.push_back(std::move(w));
      }
    out = std::move(next);
    if (out.size() > 27) {  // enough boundary coverage for any realistic law
      out.resize(27);
      break;
    }
  }
  return out;
}

std::string instance_str(const std::vector<std::string>& vars, const std::vector<Rat>& scalars) {
  static const char* kVarNames[] = {"x", "y", "z", "w"};
  std::string out;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (!out.empty()) out += ", ";
    out += (i < 4 ? std::string(kVarNames[i]) : "v" + std::to_string(i)) + " = " + vars[i];
  }
  for (size_t i = 0; i < scalars.size(); ++i) {
    if (!out.empty()) out += ", ";
    out += "r" + std::to_string(i) + " = " + rat_to_string(scalars[i]);
  }
  return out;
}

namespace {

const Term X = Term::var(0);
const Term Y = Term::var(1);
const Term Z = Term::var(2);
const Term W = Term::var(3);

Law make_law(std::string id, std::string display, int vars, int scalars, Term lhs, Term rhs,
             std::function<bool(std::vector<Rat>&)> prepare = nullptr) {
  Law law;
  law.id = std::move(id);
  law.display = std::move(display);
  law.vars = vars;
  law.scalars = scalars;
  law.lhs = std::move(lhs);
  law.rhs = std::move(rhs);
  law.prepare = std::move(prepare);
  return law;
}

bool push_one(std::vector<Rat>& s) {
  s.push_back(Rat(1));
  return true;
}

bool push_zero(std::vector<Rat>& s) {
  s.push_back(Rat(0));
  return true;
}

bool push_complement(std::vector<Rat>& s) {
  s.push_back(Rat(1) - s[0]);
  return true;
}

bool push_product(std::vector<Rat>& s) {
  s.push_back(s[0] * s[1]);
  return true;
}

// (SA) derives pr and the right-nested weight (r-pr)/(1-pr); pr = 1 makes
// the derived weight meaningless, so those draws are rejected.
bool prepare_sa(std::vector<Rat>& s) {
  Rat pr = s[0] * s[1];
  if (pr == 1) return false;
  s.push_back(pr);
  s.push_back((s[1] - pr) / (Rat(1) - pr));
  return true;
}

}  // namespace

std::vector<Law> barycentric_laws() {
  std::vector<Law> out;
  out.push_back(make_law("B1", "x +_1 y = x", 2, 0, Term::plus(0, X, Y), X, push_one));
  out.push_back(make_law("B2", "x +_r x = x", 1, 1, Term::plus(0, X, X), X));
  out.push_back(make_law("SC", "x +_r y = y +_{1-r} x", 2, 1, Term::plus(0, X, Y),
                         Term::plus(1, Y, X), push_complement));
  out.push_back(make_law("SA", "(x +_p y) +_r z = x +_{pr} (y +_{(r-pr)/(1-pr)} z)", 3, 2,
                         Term::plus(1, Term::plus(0, X, Y), Z),
                         Term::plus(2, X, Term::plus(3, Y, Z)), prepare_sa));
  out.push_back(make_law("E", "(x +_r y) +_s (z +_r w) = (x +_s z) +_r (y +_s w)", 4, 2,
                         Term::plus(1, Term::plus(0, X, Y), Term::plus(0, Z, W)),
                         Term::plus(0, Term::plus(1, X, Z), Term::plus(1, Y, W))));
  out.push_back(make_law("D", "(x +_r y) +_s z = (x +_s z) +_r (y +_s z)", 3, 2,
                         Term::plus(1, Term::plus(0, X, Y), Z),
                         Term::plus(0, Term::plus(1, X, Z), Term::plus(1, Y, Z))));
  return out;
}

std::vector<Law> semilattice_laws() {
  std::vector<Law> out;
  out.push_back(make_law("cup-assoc", "(x ∪ y) ∪ z = x ∪ (y ∪ z)", 3, 0,
                         Term::cup(Term::cup(X, Y), Z), Term::cup(X, Term::cup(Y, Z))));
  out.push_back(make_law("cup-comm", "x ∪ y = y ∪ x", 2, 0, Term::cup(X, Y), Term::cup(Y, X)));
  out.push_back(make_law("cup-idem", "x ∪ x = x", 1, 0, Term::cup(X, X), X));
  return out;
}

std::vector<Law> scalar_action_laws() {
  std::vector<Law> out;
  out.push_back(make_law("scale-def", "r·x = x +_r 0", 1, 1, Term::scaled(0, X),
                         Term::plus(0, X, Term::zero())));
  out.push_back(make_law("scale-one", "1·x = x", 1, 0, Term::scaled(0, X), X, push_one));
  out.push_back(
      make_law("scale-strict", "0·x = 0", 1, 0, Term::scaled(0, X), Term::zero(), push_zero));
  out.push_back(make_law("scale-comp", "r·(s·x) = (rs)·x", 1, 2,
                         Term::scaled(0, Term::scaled(1, X)), Term::scaled(2, X), push_product));
  out.push_back(make_law("scale-mix", "r·(x +_s y) = r·x +_s r·y", 2, 2,
                         Term::scaled(0, Term::plus(1, X, Y)),
                         Term::plus(1, Term::scaled(0, X), Term::scaled(0, Y))));
  return out;
}

Law convexity_identity() {
  return make_law("CI", "x ∪ y = (x ∪ y) ∪ (x +_r y)", 2, 1, Term::cup(X, Y),
                  Term::cup(Term::cup(X, Y), Term::plus(0, X, Y)));
}

Law mix_over_cup() {
  return make_law("mix-over-cup", "x +_r (y ∪ z) = (x +_r y) ∪ (x +_r z)", 3, 1,
                  Term::plus(0, X, Term::cup(Y, Z)),
                  Term::cup(Term::plus(0, X, Y), Term::plus(0, X, Z)));
}

Law cup_over_mix() {
  return make_law("cup-over-mix", "x ∪ (y +_r z) = (x ∪ y) +_r (x ∪ z)", 3, 1,
                  Term::cup(X, Term::plus(0, Y, Z)),
                  Term::plus(0, Term::cup(X, Y), Term::cup(X, Z)));
}

std::vector<Law> kegelspitze_semilattice_suite() {
  std::vector<Law> out = barycentric_laws();
  for (Law& law : semilattice_laws()) out.push_back(std::move(law));
  out.push_back(convexity_identity());
  out.push_back(mix_over_cup());
  for (Law& law : scalar_action_laws()) out.push_back(std::move(law));
  return out;
}

namespace {

Valuation sample_subprob(Rng& rng, const PosetPtr& p) {
  std::vector<Rat> mass;
  for (int i = 0; i < p->size(); ++i) mass.push_back(rng.unit_rat(4));
  Rat total = 0;
  for (const Rat& m : mass) total += m;
  if (total > 1)
    for (Rat& m : mass) m /= total;
  return Valuation(p, mass);
}

std::string valuation_str(const Valuation& v) {
  std::string out = "(";
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v.poset()->name(i) + ":" + rat_to_string(v.mass(i));
  }
  return out + ")";
}

std::string power_str(const PowerElement& x) {
  std::string out = "{";
  for (size_t i = 0; i < x.gens().size(); ++i) {
    if (i) out += ", ";
    out += valuation_str(x.gens()[i]);
  }
  return out + "}";
}

}  // namespace

ModelBinding<Valuation> valuation_model(PosetPtr poset) {
  ModelBinding<Valuation> m;
  m.name = "valuation";
  m.sample = [poset](Rng& rng) { return sample_subprob(rng, poset); };
  m.equal = [](const Valuation& a, const Valuation& b) { return a == b; };
  m.show = valuation_str;
  m.plus = [](const Rat& r, const Valuation& a, const Valuation& b) {
    return convex_comb(r, a, b);
  };
  m.zero = [poset]() { return Valuation::zero(poset); };
  m.scale = [](const Rat& r, const Valuation& a) { return scale(r, a); };
  m.leq = [](const Valuation& a, const Valuation& b) { return leq_valuation(a, b); };
  return m;
}

ModelBinding<PowerElement> power_model(Flavor flavor, PosetPtr poset) {
  ModelBinding<PowerElement> m;
  m.name = std::string("power-") + flavor_name(flavor);
  // One or two generators with small denominators: the suite's terms build
  // wider generator sets on their own (every ∪ doubles them), and each
  // extra generator costs hull LPs in canonicalization.
  m.sample = [flavor, poset](Rng& rng) {
    std::vector<Valuation> gens;
    int count = 1 + static_cast<int>(rng.below(2));
    for (int i = 0; i < count; ++i) {
      std::vector<Rat> mass;
      for (int k = 0; k < poset->size(); ++k) mass.push_back(rng.unit_rat(3));
      Rat total = 0;
      for (const Rat& v : mass) total += v;
      if (total > 1)
        for (Rat& v : mass) v /= total;
      gens.emplace_back(poset, std::move(mass));
    }
    return PowerElement(flavor, poset, std::move(gens));
  };
  m.equal = [](const PowerElement& a, const PowerElement& b) { return po_equal(a, b); };
  m.show = power_str;
  m.plus = [](const Rat& r, const PowerElement& a, const PowerElement& b) {
    return convex_comb_pd(r, a, b);
  };
  m.cup = [](const PowerElement& a, const PowerElement& b) { return combine(a, b); };
  m.zero = [flavor, poset]() { return bottom(flavor, poset); };
  m.scale = [](const Rat& r, const PowerElement& a) { return scale_pd(r, a); };
  m.leq = [](const PowerElement& a, const PowerElement& b) { return po_leq(a, b); };
  return m;
}

ModelBinding<RandomSetElement> randomset_model(int ground_size) {
  ModelBinding<RandomSetElement> m;
  m.name = "randomset";
  m.sample = [ground_size](Rng& rng) {
    const uint32_t subsets = (1u << ground_size) - 1;
    std::map<uint32_t, Rat> weight;
    Rat total = 0;
    for (uint32_t mask = 1; mask <= subsets; ++mask) {
      // Thin the support so products stay readable; weights are exact.
      if (rng.coin()) continue;
      Rat w = rng.unit_rat(4);
      if (w == 0) continue;
      weight[mask] = w;
      total += w;
    }
    if (total == 0) return RandomSetElement::dirac(ground_size, subsets);
    for (auto& [mask, w] : weight) w /= total;
    return RandomSetElement(ground_size, std::move(weight));
  };
  m.equal = [](const RandomSetElement& a, const RandomSetElement& b) { return a == b; };
  m.show = [](const RandomSetElement& a) { return a.str(); };
  m.plus = [](const Rat& r, const RandomSetElement& a, const RandomSetElement& b) {
    return rs_convex(r, a, b);
  };
  m.cup = [](const RandomSetElement& a, const RandomSetElement& b) { return rs_union(a, b); };
  return m;
}

ModelBinding<int> chain_semilattice_model() {
  ModelBinding<int> m;
  m.name = "chain-semilattice";
  m.sample = [](Rng& rng) { return static_cast<int>(rng.below(3)); };
  m.equal = [](int a, int b) { return a == b; };
  m.show = [](int a) { return std::to_string(a); };
  m.plus = [](const Rat& r, int a, int b) {
    require_unit_scalar(r, "chain-semilattice +_r");
    if (r == 1) return a;
    if (r == 0) return b;
    return std::max(a, b);
  };
  m.cup = [](int a, int b) { return std::max(a, b); };
  m.leq = [](int a, int b) { return a <= b; };
  return m;
}

std::string report_str(const SuiteReport& rep) {
  std::string out = "law suite: " + std::to_string(rep.laws.size()) + " laws, " +
                    std::to_string(rep.samples) + " samples, seed " + std::to_string(rep.seed) +
                    "\n";
  for (const LawResult& res : rep.laws) {
    out += std::string("  [") + (res.passed ? "PASS" : "FAIL") + "] " + res.id + ": " +
           res.display + " (" + std::to_string(res.checked) + " instances)\n";
    if (res.counterexample) {
      out += "      at " + res.counterexample->inputs + "\n";
      out += "      lhs = " + res.counterexample->lhs + "\n";
      out += "      rhs = " + res.counterexample->rhs + "\n";
    }
  }
  out += std::string("overall: ") + (rep.passed ? "PASS" : "FAIL") + "\n";
  return out;
}

namespace {

// Every nonempty count vector over {0,1,2}^n — the Dirac multisets the
// p ≠ p∪p sweep must include.
std::vector<std::vector<int>> small_count_vectors(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> counts(static_cast<size_t>(n), 0);
  for (;;) {
    int i = 0;
    while (i < n && counts[static_cast<size_t>(i)] == 2) counts[static_cast<size_t>(i++)] = 0;
    if (i == n) break;
    ++counts[static_cast<size_t>(i)];
    out.push_back(counts);
  }
  return out;
}

MultisetElement sample_multiset(Rng& rng, int n, const std::vector<std::vector<int>>& diracs) {
  MultisetElement acc = MultisetElement::dirac(n, diracs[rng.index(diracs.size())]);
  int extra = static_cast<int>(rng.below(3));
  for (int i = 0; i < extra; ++i) {
    MultisetElement next = MultisetElement::dirac(n, diracs[rng.index(diracs.size())]);
    acc = ms_convex(rng.open_unit_rat(4), acc, next);
  }
  return acc;
}

}  // namespace

WitnessReport appendixA_witnesses(int ground_size, int samples, uint64_t seed) {
  if (ground_size < 1)
    fail(Errc::MalformedInput, "appendix witnesses: ground set must be nonempty");
  if (ground_size > 3)
    fail(Errc::TooLarge, "appendix witnesses: ground sets above 3 elements are not supported");
  if (samples < 1) fail(Errc::MalformedInput, "appendix witnesses: samples must be positive");

  WitnessReport rep;
  rep.ground_size = ground_size;
  rep.passed = true;
  const int n = ground_size;

  // (i) ∪ is not idempotent: mixing first and unioning second are different
  // experiments. The canonical witness needs two ground elements.
  if (n >= 2) {
    RandomSetElement mu = rs_convex(Rat(1, 2), rs_unit(n, 0), rs_unit(n, 1));
    RandomSetElement sq = rs_union(mu, mu);
    if (sq != mu) {
      rep.idem_witness = Violation{"cup-idem", "x = " + mu.str(), sq.str(), mu.str()};
      rep.notes.push_back("∪-idempotence FAILS: x ∪ x ≠ x at x = " + mu.str() +
                          "; x ∪ x = " + sq.str());
    } else {
      rep.passed = false;
      rep.notes.push_back("∪-idempotence unexpectedly held at x = " + mu.str());
    }
  } else {
    rep.notes.push_back(
        "∪-idempotence holds over a single ground element (only one nonempty subset); the "
        "failure witness needs n ≥ 2");
  }

  // (ii) +_r does not distribute over ∪. Same two-element witness family.
  if (n >= 2) {
    RandomSetElement x = rs_convex(Rat(1, 2), rs_unit(n, 0), rs_unit(n, 1));
    RandomSetElement y = rs_unit(n, 0), z = rs_unit(n, 1);
    Rat r(1, 2);
    RandomSetElement lhs = rs_convex(r, x, rs_union(y, z));
    RandomSetElement rhs = rs_union(rs_convex(r, x, y), rs_convex(r, x, z));
    if (lhs != rhs) {
      rep.distrib_witness =
          Violation{"mix-over-cup",
                    "x = " + x.str() + ", y = " + y.str() + ", z = " + z.str() + ", r = 1/2",
                    lhs.str(), rhs.str()};
      rep.notes.push_back("x +_r (y ∪ z) = (x +_r y) ∪ (x +_r z) FAILS: lhs = " + lhs.str() +
                          "; rhs = " + rhs.str());
    } else {
      rep.passed = false;
      rep.notes.push_back("+_r-over-∪ distributivity unexpectedly held at the canonical witness");
    }
  } else {
    rep.notes.push_back(
        "+_r-over-∪ holds over a single ground element (the algebra is a single point)");
  }

  // (iii) What the model does satisfy: ∪ commutative and associative, ∪
  // distributes over +_r, and the barycentric axioms.
  std::vector<Law> ccsa = barycentric_laws();
  ccsa.push_back(semilattice_laws()[0]);  // cup-assoc
  ccsa.push_back(semilattice_laws()[1]);  // cup-comm
  ccsa.push_back(cup_over_mix());
  rep.ccsa = run_suite(randomset_model(n), ccsa, samples, seed);
  if (rep.ccsa.passed) {
    rep.notes.push_back("CCSA suite (barycentric, ∪ assoc/comm, ∪-over-+_r) PASSES on " +
                        std::to_string(samples) + " samples");
  } else {
    rep.passed = false;
    rep.notes.push_back("CCSA suite unexpectedly FAILED — see the law report");
  }

  // (iv) In the multiset analogue even p = p∪p fails, for every p: union
  // is multiset sum, so self-union doubles every count.
  const auto diracs = small_count_vectors(n);
  Rng rng(seed + 17);
  std::vector<MultisetElement> pool;
  for (const auto& counts : diracs) pool.push_back(MultisetElement::dirac(n, counts));
  for (int i = 0; i < samples / 4; ++i) pool.push_back(sample_multiset(rng, n, diracs));
  for (const MultisetElement& p : pool) {
    ++rep.multiset_checked;
    if (ms_union(p, p) == p) {
      rep.passed = false;
      rep.notes.push_back("multiset model: p = p ∪ p unexpectedly held at p = " + p.str());
      break;
    }
  }
  if (rep.multiset_checked == static_cast<int>(pool.size()))
    rep.notes.push_back("multiset model: p ≠ p ∪ p for all " + std::to_string(rep.multiset_checked) +
                        " sampled p (all Dirac multisets with counts ≤ 2 included)");

  return rep;
}

std::string report_str(const WitnessReport& rep) {
  std::string ground = "{";
  for (int i = 0; i < rep.ground_size; ++i) {
    if (i) ground += ",";
    ground += static_cast<char>('a' + i);
  }
  ground += "}";
  std::string out = "random-set witnesses over ground set " + ground + "\n";
  for (const std::string& note : rep.notes) out += "  - " + note + "\n";
  out += report_str(rep.ccsa);
  out += std::string("overall: ") + (rep.passed ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace mpd
