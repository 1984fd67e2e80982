#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpd/randomset.hpp"

#include "mpd/errors.hpp"
#include "mpd/rng.hpp"

using namespace mpd;

namespace {

Errc code_of(const std::function<void()>& thunk) {
  try {
    thunk();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error to be thrown");
  return Errc::MalformedInput;
}

// Masks over ground set {a,b,..}: element i is bit i.
constexpr uint32_t A = 1u, B = 2u, AB = 3u, C = 4u;

RandomSetElement random_rs(Rng& rng, int n) {
  const uint32_t subsets = (1u << n) - 1;
  std::map<uint32_t, Rat> w;
  Rat total = 0;
  for (uint32_t mask = 1; mask <= subsets; ++mask) {
    if (rng.coin()) continue;
    Rat v = rng.unit_rat(4);
    if (v == 0) continue;
    w[mask] = v;
    total += v;
  }
  if (total == 0) return RandomSetElement::dirac(n, subsets);
  for (auto& [mask, v] : w) v /= total;
  return RandomSetElement(n, std::move(w));
}

MultisetElement random_ms(Rng& rng, int n) {
  auto random_counts = [&] {
    std::vector<int> counts(static_cast<size_t>(n), 0);
    int total = 0;
    for (int& c : counts) total += (c = static_cast<int>(rng.below(3)));
    if (total == 0) counts[rng.index(counts.size())] = 1;
    return counts;
  };
  MultisetElement acc = MultisetElement::dirac(n, random_counts());
  for (int i = 0, extra = static_cast<int>(rng.below(3)); i < extra; ++i)
    acc = ms_convex(rng.open_unit_rat(4), acc, MultisetElement::dirac(n, random_counts()));
  return acc;
}

}  // namespace

TEST_CASE("random sets: construction, canonical form, rejection") {
  // Zero-probability entries are dropped, so presentations with dead
  // support compare equal to the trimmed distribution.
  RandomSetElement x(2, {{A, Rat(1, 2)}, {B, Rat(1, 2)}, {AB, Rat(0)}});
  CHECK(x.dist().size() == 2);
  CHECK(x == RandomSetElement(2, {{A, Rat(1, 2)}, {B, Rat(1, 2)}}));
  CHECK(x != RandomSetElement(2, {{A, Rat(1, 4)}, {B, Rat(3, 4)}}));
  CHECK(x.prob(A) == Rat(1, 2));
  CHECK(x.prob(AB) == 0);
  CHECK(x.str() == "1/2·{a} + 1/2·{b}");
  CHECK(RandomSetElement(2, {{AB, Rat(1)}}).str() == "1·{a,b}");

  CHECK(code_of([] { RandomSetElement(0, {{A, Rat(1)}}); }) == Errc::MalformedInput);
  CHECK(code_of([] { RandomSetElement(21, {{A, Rat(1)}}); }) == Errc::TooLarge);
  CHECK(code_of([] { RandomSetElement(2, {{0u, Rat(1)}}); }) == Errc::MalformedInput);
  CHECK(code_of([] { RandomSetElement(2, {{C, Rat(1)}}); }) == Errc::MalformedInput);
  CHECK(code_of([] { RandomSetElement(2, {{A, Rat(1, 2)}}); }) == Errc::MalformedInput);
  CHECK(code_of([] { RandomSetElement(2, {{A, Rat(-1, 2)}, {B, Rat(3, 2)}}); }) ==
        Errc::MalformedInput);
  CHECK(code_of([] { rs_unit(2, 2); }) == Errc::MalformedInput);
}

TEST_CASE("random sets: unit, mixture, product union") {
  RandomSetElement da = rs_unit(2, 0), db = rs_unit(2, 1);
  CHECK(da == RandomSetElement::dirac(2, A));

  // Diracs at singletons are ∪-idempotent: {a} ∪ {a} = {a}.
  CHECK(rs_union(da, da) == da);
  CHECK(rs_union(da, db) == RandomSetElement::dirac(2, AB));

  RandomSetElement mu = rs_convex(Rat(1, 2), da, db);
  CHECK(mu == RandomSetElement(2, {{A, Rat(1, 2)}, {B, Rat(1, 2)}}));
  CHECK(rs_convex(Rat(1), da, db) == da);
  CHECK(rs_convex(Rat(0), da, db) == db);

  // The product formula in full: two independent draws from mu, unioned.
  RandomSetElement sq = rs_union(mu, mu);
  CHECK(sq == RandomSetElement(2, {{A, Rat(1, 4)}, {AB, Rat(1, 2)}, {B, Rat(1, 4)}}));
  CHECK(sq != mu);  // ∪ is not idempotent

  // A three-element instance, computed by hand from the product formula.
  RandomSetElement u(3, {{A, Rat(1, 3)}, {C, Rat(2, 3)}});
  RandomSetElement v(3, {{B, Rat(1, 4)}, {AB, Rat(3, 4)}});
  RandomSetElement uv = rs_union(u, v);
  CHECK(uv == RandomSetElement(3, {{AB, Rat(1, 12) + Rat(3, 12)},
                                   {B | C, Rat(2, 12)},
                                   {AB | C, Rat(6, 12)}}));

  CHECK(code_of([&] { rs_union(u, da); }) == Errc::GroundSetMismatch);
  CHECK(code_of([&] { rs_convex(Rat(1, 2), u, da); }) == Errc::GroundSetMismatch);
  CHECK(code_of([&] { rs_convex(Rat(5, 4), da, db); }) == Errc::ScalarOutOfRange);
}

TEST_CASE("random sets: the two laws that fail and the one that holds") {
  RandomSetElement da = rs_unit(2, 0), db = rs_unit(2, 1);
  RandomSetElement x = rs_convex(Rat(1, 2), da, db);

  // +_r does not distribute over ∪: mixing x into the sure union {a,b}
  // keeps the mix visible, while unioning two mixes correlates the draws.
  RandomSetElement lhs = rs_convex(Rat(1, 2), x, rs_union(da, db));
  RandomSetElement rhs = rs_union(rs_convex(Rat(1, 2), x, da), rs_convex(Rat(1, 2), x, db));
  CHECK(lhs == RandomSetElement(2, {{A, Rat(1, 4)}, {B, Rat(1, 4)}, {AB, Rat(1, 2)}}));
  CHECK(rhs == RandomSetElement(2, {{A, Rat(3, 16)}, {B, Rat(3, 16)}, {AB, Rat(10, 16)}}));
  CHECK(lhs != rhs);

  // ∪ does distribute over +_r: both sides draw once from x and once from
  // the y-or-z experiment. Random sweep over both ground sizes.
  Rng rng(101);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 2 + trial % 2;
    RandomSetElement p = random_rs(rng, n), q = random_rs(rng, n), r = random_rs(rng, n);
    Rat t = rng.unit_rat(6);
    CHECK(rs_union(p, rs_convex(t, q, r)) ==
          rs_convex(t, rs_union(p, q), rs_union(p, r)));
  }

  // ∪ stays commutative and associative even though it is not idempotent.
  for (int trial = 0; trial < 100; ++trial) {
    RandomSetElement p = random_rs(rng, 3), q = random_rs(rng, 3), r = random_rs(rng, 3);
    CHECK(rs_union(p, q) == rs_union(q, p));
    CHECK(rs_union(rs_union(p, q), r) == rs_union(p, rs_union(q, r)));
  }
}

TEST_CASE("multisets: union is multiset sum, so nothing is ∪-idempotent") {
  MultisetElement pa = ms_unit(2, 0);
  CHECK(pa == MultisetElement::dirac(2, {1, 0}));
  CHECK(pa.str() == "1·⟨a⟩");

  // Counts add under union: ⟨a⟩ ∪ ⟨a⟩ = ⟨a,a⟩ ≠ ⟨a⟩, already over a single
  // ground element — the sharpest form of the non-idempotence observation.
  CHECK(ms_union(pa, pa) == MultisetElement::dirac(2, {2, 0}));
  CHECK(ms_union(pa, pa) != pa);
  MultisetElement one = ms_unit(1, 0);
  CHECK(ms_union(one, one) != one);
  CHECK(ms_union(one, one).str() == "1·⟨a,a⟩");

  MultisetElement q = ms_convex(Rat(1, 3), pa, MultisetElement::dirac(2, {0, 2}));
  CHECK(q.dist().size() == 2);
  CHECK(ms_union(q, q) ==
        MultisetElement(2, {{{2, 0}, Rat(1, 9)}, {{1, 2}, Rat(4, 9)}, {{0, 4}, Rat(4, 9)}}));

  // p ≠ p ∪ p for every sampled p, Diracs included: self-union doubles the
  // total count of every multiset in the support.
  Rng rng(77);
  for (int trial = 0; trial < 120; ++trial) {
    MultisetElement p = random_ms(rng, 1 + trial % 3);
    CHECK(ms_union(p, p) != p);
  }

  CHECK(code_of([] { MultisetElement(2, {{{0, 0}, Rat(1)}}); }) == Errc::MalformedInput);
  CHECK(code_of([] { MultisetElement(2, {{{1}, Rat(1)}}); }) == Errc::MalformedInput);
  CHECK(code_of([] { MultisetElement(2, {{{1, -1}, Rat(1)}}); }) == Errc::MalformedInput);
  CHECK(code_of([&] { ms_union(pa, one); }) == Errc::GroundSetMismatch);
  CHECK(code_of([&] { ms_convex(Rat(2), pa, pa); }) == Errc::ScalarOutOfRange);
}
