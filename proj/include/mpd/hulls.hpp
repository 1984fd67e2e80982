#pragma once

#include <vector>

#include "mpd/lp.hpp"
#include "mpd/predicate.hpp"
#include "mpd/valuation.hpp"

namespace mpd {

// Membership and separation for the two hulls of a finite generator set F:
//
//   lower hull:  down-closure of conv F in the stochastic order
//                mu in it  iff  exists lambda >= 0, sum 1, with
//                mu(U) <= sum_i lambda_i f_i(U) for every up-set U
//   upper hull:  up-closure of conv F, same with the inequality reversed.
//
// When membership fails, the LP's Farkas certificate is by construction a
// nonnegative combination of up-set rows, i.e. directly a monotone predicate
// g separating mu from the hull. Certificates are re-verified by direct
// integration before they are returned.

struct SeparationCertificate {
  Predicate g;  // monotone; a nonnegative combination of up-set indicators
  Rat gap;      // integral of g against mu minus the hull's support value; > 0
};

// How the membership LP enumerates its up-set constraints. Auto switches to
// lazy row generation on posets with many up-sets; Direct and Lazy force one
// route (used by tests to cross-validate the two).
enum class HullStrategy { Auto, Direct, Lazy };

bool in_lower_hull(const Valuation& mu, const std::vector<Valuation>& F,
                   HullStrategy strategy = HullStrategy::Auto);
bool in_upper_hull(const Valuation& mu, const std::vector<Valuation>& F,
                   HullStrategy strategy = HullStrategy::Auto);

// Precondition: mu is outside the respective hull (errors NotSeparable otherwise).
SeparationCertificate separate_lower(const Valuation& mu, const std::vector<Valuation>& F);
SeparationCertificate separate_upper(const Valuation& mu, const std::vector<Valuation>& F);

}  // namespace mpd
