#include "mpd/hulls.hpp"

#include <algorithm>

namespace mpd {

namespace {

void check_inputs(const Valuation& mu, const std::vector<Valuation>& F, const char* where) {
  if (F.empty()) fail(Errc::EmptyGeneratorSet, std::string(where) + ": generator set is empty");
  for (const auto& f : F) require_same_poset(mu.poset(), f.poset(), where);
}

// Membership LP over a chosen set of up-set rows:
//   variables lambda_i >= 0, one per generator
//   row 0:       sum_i lambda_i = 1
//   row 1 + k:   sum_i lambda_i f_i(U_k)  >= mu(U_k)   (lower; <= for upper)
LpResult solve_membership(const Valuation& mu, const std::vector<Valuation>& F,
                          const std::vector<UpSet>& upsets, bool lower) {
  LinearSystem sys;
  sys.num_vars = static_cast<int>(F.size());
  sys.add(std::vector<Rat>(F.size(), Rat(1)), Rel::EQ, Rat(1));
  for (UpSet u : upsets) {
    std::vector<Rat> row;
    row.reserve(F.size());
    for (const auto& f : F) row.push_back(f.measure(u));
    sys.add(std::move(row), lower ? Rel::GE : Rel::LE, mu.measure(u));
  }
  return lp_solve(sys);
}

struct MembershipOutcome {
  bool member = false;
  std::vector<Rat> multipliers;  // per active up-set row, when not member
  std::vector<UpSet> active;
};

// On big posets the LP is built lazily: solve against the rows collected so
// far, look for an up-set the candidate mixture still violates, add it, and
// repeat. Each round adds one row, so the loop is finite, and an infeasible
// sub-system is already a valid refutation of the full one. The threshold is
// low because the dense exact simplex scales with row count much worse than
// the violation scan does: membership typically settles after a handful of
// rows even when the poset has hundreds of up-sets.
constexpr size_t kLazyThreshold = 24;

MembershipOutcome membership(const Valuation& mu, const std::vector<Valuation>& F, bool lower,
                             HullStrategy strategy) {
  const auto& all = mu.poset()->upsets();
  const bool lazy =
      strategy == HullStrategy::Lazy || (strategy == HullStrategy::Auto && all.size() > kLazyThreshold);

  MembershipOutcome out;
  std::vector<UpSet> active;
  if (!lazy) active = all;

  for (;;) {
    LpResult res = solve_membership(mu, F, active, lower);
    if (res.status == LpStatus::Infeasible) {
      out.member = false;
      out.active = active;
      // Multiplier of up-set row k sits at farkas[1 + k]; row 0 is the
      // convexity equation. GE rows carry y >= 0, LE rows y <= 0; flip the
      // latter so callers always see nonnegative indicator weights.
      out.multipliers.reserve(active.size());
      for (size_t k = 0; k < active.size(); ++k) {
        Rat y = res.farkas[1 + k];
        out.multipliers.push_back(lower ? y : -y);
      }
      return out;
    }
    if (res.status == LpStatus::Unbounded)
      throw std::logic_error("hull membership LP cannot be unbounded");

    if (!lazy) {
      out.member = true;
      return out;
    }
    // Find the first violated up-set in enumeration order.
    bool found = false;
    for (UpSet u : all) {
      Rat mix = 0;
      for (size_t i = 0; i < F.size(); ++i) mix += res.assignment[i] * F[i].measure(u);
      const Rat target = mu.measure(u);
      if (lower ? (mix < target) : (mix > target)) {
        active.push_back(u);
        found = true;
        break;
      }
    }
    if (!found) {
      out.member = true;
      return out;
    }
  }
}

SeparationCertificate certificate_from(const Valuation& mu, const std::vector<Valuation>& F,
                                       const MembershipOutcome& mo, bool lower) {
  // g = sum_U y_U * indicator(U), rescaled so the largest weight is 1 (any
  // positive rescaling of a Farkas certificate is one too, and this keeps
  // hand-sized examples tidy).
  Rat top = 0;
  for (const auto& y : mo.multipliers) top = std::max(top, y);
  if (top <= 0) throw std::logic_error("separation: certificate has no up-set weight");

  const PosetPtr& p = mu.poset();
  std::vector<ExtRat> vals(static_cast<size_t>(p->size()), ExtRat(Rat(0)));
  for (size_t k = 0; k < mo.active.size(); ++k) {
    const Rat w = mo.multipliers[k] / top;
    if (w == 0) continue;
    for (int i = 0; i < p->size(); ++i)
      if (mo.active[k].contains(i)) vals[static_cast<size_t>(i)] = vals[static_cast<size_t>(i)] + w * ExtRat(Rat(1));
  }
  Predicate g(p, vals);

  const Rat at_mu = choquet_integral(g, mu).finite();
  Rat support;
  bool first = true;
  for (const auto& f : F) {
    const Rat v = choquet_integral(g, f).finite();
    if (first || (lower ? v > support : v < support)) support = v;
    first = false;
  }
  const Rat gap = lower ? at_mu - support : support - at_mu;
  if (gap <= 0) throw std::logic_error("separation: emitted certificate fails verification");
  return SeparationCertificate{std::move(g), gap};
}

}  // namespace

bool in_lower_hull(const Valuation& mu, const std::vector<Valuation>& F, HullStrategy strategy) {
  check_inputs(mu, F, "in_lower_hull");
  return membership(mu, F, /*lower=*/true, strategy).member;
}

bool in_upper_hull(const Valuation& mu, const std::vector<Valuation>& F, HullStrategy strategy) {
  check_inputs(mu, F, "in_upper_hull");
  return membership(mu, F, /*lower=*/false, strategy).member;
}

SeparationCertificate separate_lower(const Valuation& mu, const std::vector<Valuation>& F) {
  check_inputs(mu, F, "separate_lower");
  auto mo = membership(mu, F, /*lower=*/true, HullStrategy::Auto);
  if (mo.member) fail(Errc::NotSeparable, "separate_lower: valuation is inside the lower hull");
  return certificate_from(mu, F, mo, /*lower=*/true);
}

SeparationCertificate separate_upper(const Valuation& mu, const std::vector<Valuation>& F) {
  check_inputs(mu, F, "separate_upper");
  auto mo = membership(mu, F, /*lower=*/false, HullStrategy::Auto);
  if (mo.member) fail(Errc::NotSeparable, "separate_upper: valuation is inside the upper hull");
  return certificate_from(mu, F, mo, /*lower=*/false);
}

}  // namespace mpd
