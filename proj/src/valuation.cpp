#include "mpd/valuation.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace mpd {

Valuation::Valuation(PosetPtr poset, std::vector<Rat> mass)
    : poset_(std::move(poset)), mass_(std::move(mass)) {
  if (static_cast<int>(mass_.size()) != poset_->size())
    fail(Errc::MalformedInput, "valuation needs one mass per element");
  for (const auto& m : mass_)
    if (m < 0) fail(Errc::MalformedInput, "negative mass in valuation");
}

Rat Valuation::total_mass() const {
  Rat t = 0;
  for (const auto& m : mass_) t += m;
  return t;
}

bool Valuation::is_zero() const {
  return std::all_of(mass_.begin(), mass_.end(), [](const Rat& m) { return m == 0; });
}

Rat Valuation::measure(UpSet u) const {
  Rat t = 0;
  for (int i = 0; i < size(); ++i)
    if (u.contains(i)) t += mass(i);
  return t;
}

Valuation Valuation::zero(PosetPtr poset) {
  const int n = poset->size();
  return Valuation(std::move(poset), std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
}

Valuation dirac(PosetPtr poset, int index) {
  if (index < 0 || index >= poset->size()) fail(Errc::UnknownElement, "dirac: index out of range");
  std::vector<Rat> mass(static_cast<size_t>(poset->size()), Rat(0));
  mass[static_cast<size_t>(index)] = 1;
  return Valuation(std::move(poset), std::move(mass));
}

Valuation dirac(PosetPtr poset, const std::string& x) {
  const int i = poset->index_of(x);
  return dirac(std::move(poset), i);
}

Valuation convex_comb(const Rat& r, const Valuation& mu, const Valuation& nu) {
  require_unit_scalar(r, "convex_comb");
  require_same_poset(mu.poset(), nu.poset(), "convex_comb");
  std::vector<Rat> mass;
  mass.reserve(static_cast<size_t>(mu.size()));
  const Rat rbar = Rat(1) - r;
  for (int i = 0; i < mu.size(); ++i) mass.push_back(r * mu.mass(i) + rbar * nu.mass(i));
  return Valuation(mu.poset(), std::move(mass));
}

Valuation scale(const Rat& r, const Valuation& mu) {
  if (r < 0) fail(Errc::ScalarOutOfRange, "scale: negative scalar");
  std::vector<Rat> mass;
  mass.reserve(static_cast<size_t>(mu.size()));
  for (int i = 0; i < mu.size(); ++i) mass.push_back(r * mu.mass(i));
  return Valuation(mu.poset(), std::move(mass));
}

Valuation add(const Valuation& mu, const Valuation& nu) {
  require_same_poset(mu.poset(), nu.poset(), "add");
  std::vector<Rat> mass;
  mass.reserve(static_cast<size_t>(mu.size()));
  for (int i = 0; i < mu.size(); ++i) mass.push_back(mu.mass(i) + nu.mass(i));
  return Valuation(mu.poset(), std::move(mass));
}

bool leq_valuation(const Valuation& mu, const Valuation& nu) {
  require_same_poset(mu.poset(), nu.poset(), "leq_valuation");
  for (const UpSet& u : mu.poset()->upsets())
    if (mu.measure(u) > nu.measure(u)) return false;
  return true;
}

// Max-flow formulation (see header). Nodes: 0 = source, 1..n = mu side,
// n+1..2n = nu side, 2n+1 = sink. Capacity mu(x) on source->x, nu(y) on
// y->sink, and mu(x) (a safe finite stand-in for infinity: no more can
// enter x) on x->y whenever x <= y. mu <= nu iff max flow = |mu|.
bool leq_valuation_flow(const Valuation& mu, const Valuation& nu) {
  require_same_poset(mu.poset(), nu.poset(), "leq_valuation_flow");
  const int n = mu.size();
  const int source = 0, sink = 2 * n + 1, nodes = 2 * n + 2;

  std::vector<std::vector<Rat>> cap(static_cast<size_t>(nodes),
                                    std::vector<Rat>(static_cast<size_t>(nodes), Rat(0)));
  for (int x = 0; x < n; ++x) {
    cap[0][static_cast<size_t>(1 + x)] = mu.mass(x);
    for (int y = 0; y < n; ++y)
      if (mu.poset()->leq(x, y)) cap[static_cast<size_t>(1 + x)][static_cast<size_t>(1 + n + y)] = mu.mass(x);
  }
  for (int y = 0; y < n; ++y) cap[static_cast<size_t>(1 + n + y)][static_cast<size_t>(sink)] = nu.mass(y);

  Rat flow = 0;
  for (;;) {
    // BFS for a shortest augmenting path in the residual graph.
    std::vector<int> prev(static_cast<size_t>(nodes), -1);
    prev[0] = source;
    std::deque<int> queue{source};
    while (!queue.empty() && prev[static_cast<size_t>(sink)] < 0) {
      int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < nodes; ++v)
        if (prev[static_cast<size_t>(v)] < 0 && cap[static_cast<size_t>(u)][static_cast<size_t>(v)] > 0) {
          prev[static_cast<size_t>(v)] = u;
          queue.push_back(v);
        }
    }
    if (prev[static_cast<size_t>(sink)] < 0) break;

    Rat bottleneck;
    bool first = true;
    for (int v = sink; v != source; v = prev[static_cast<size_t>(v)]) {
      const Rat& c = cap[static_cast<size_t>(prev[static_cast<size_t>(v)])][static_cast<size_t>(v)];
      if (first || c < bottleneck) bottleneck = c;
      first = false;
    }
    for (int v = sink; v != source; v = prev[static_cast<size_t>(v)]) {
      int u = prev[static_cast<size_t>(v)];
      cap[static_cast<size_t>(u)][static_cast<size_t>(v)] -= bottleneck;
      cap[static_cast<size_t>(v)][static_cast<size_t>(u)] += bottleneck;
    }
    flow += bottleneck;
  }
  return flow == mu.total_mass();
}

ExtRat choquet_integral(const Predicate& f, const Valuation& mu) {
  require_same_poset(f.poset(), mu.poset(), "choquet_integral");
  const int n = mu.size();

  // Route 1: directly against the point masses, 0 * inf = 0.
  ExtRat direct(Rat(0));
  for (int i = 0; i < n; ++i) direct = direct + mu.mass(i) * f.at(i);

  // Route 2: layer-cake over the distinct finite values 0 = v0 < v1 < ... .
  ExtRat threshold(Rat(0));
  Rat inf_mass = 0;
  for (int i = 0; i < n; ++i)
    if (f.at(i).is_infinite()) inf_mass += mu.mass(i);
  if (inf_mass > 0) {
    threshold = ExtRat::infinity();
  } else {
    std::set<Rat> values{Rat(0)};
    for (int i = 0; i < n; ++i)
      if (!f.at(i).is_infinite()) values.insert(f.at(i).finite());
    Rat acc = 0, prev = 0;
    for (const Rat& v : values) {
      if (v == 0) continue;
      // mu({x : f(x) > prev}); an up-set because f is monotone.
      Rat layer = 0;
      for (int i = 0; i < n; ++i)
        if (f.at(i).is_infinite() || f.at(i).finite() > prev) layer += mu.mass(i);
      acc += (v - prev) * layer;
      prev = v;
    }
    threshold = ExtRat(acc);
  }

  if (direct != threshold)
    throw std::logic_error("choquet_integral: direct and threshold routes disagree");
  return direct;
}

}  // namespace mpd
