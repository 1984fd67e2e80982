#include <stdexcept>

#include "mpd/functional.hpp"
#include "mpd/lp.hpp"

namespace mpd {

// nu(a) = inf { r >= 0 : a <= r * (convex combination of F) }. Substituting
// mu_i = r * lambda_i turns the scaled convex combination into a free
// nonnegative combination with sum r, so the infimum is the LP
//   min sum mu_i   s.t.  mu >= 0,  sum_i mu_i f_i(U) >= a(U)  for all U.
// Infeasible means no scaling of the hull ever dominates a: nu(a) = inf.
ExtRat minkowski(const std::vector<Valuation>& F, const Valuation& a,
                 std::vector<Rat>* opt_weights) {
  if (F.empty()) fail(Errc::EmptyGeneratorSet, "minkowski: no generators");
  for (const Valuation& f : F) require_same_poset(f.poset(), a.poset(), "minkowski");

  const PosetPtr& p = a.poset();
  LinearSystem sys;
  sys.num_vars = static_cast<int>(F.size());
  for (const UpSet& u : p->upsets()) {
    std::vector<Rat> row;
    row.reserve(F.size());
    for (const Valuation& f : F) row.push_back(f.measure(u));
    sys.add(std::move(row), Rel::GE, a.measure(u));
  }
  sys.objective = std::vector<Rat>(F.size(), Rat(1));
  sys.maximize = false;

  LpResult res = lp_solve(sys);
  if (res.status == LpStatus::Infeasible) return ExtRat::infinity();
  if (res.status != LpStatus::Feasible)
    throw std::logic_error("minkowski: objective bounded below by zero cannot be unbounded");
  if (opt_weights) *opt_weights = res.assignment;
  return ExtRat(res.objective_value);
}

}  // namespace mpd
