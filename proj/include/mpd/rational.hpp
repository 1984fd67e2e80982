#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "mpd/errors.hpp"

namespace mpd {

// Exact rational scalar. cpp_rational keeps the canonical reduced form
// (gcd 1, denominator > 0) after every operation, which the zero-tolerance
// equality tests rely on.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Parses "p", "-p", or "p/q". Throws MalformedInput on anything else.
Rat rat_from_string(const std::string& s);

// Reduced form, "p/q", or plain "p" when the denominator is 1.
std::string rat_to_string(const Rat& r);

inline bool in_unit_range(const Rat& r) { return r >= 0 && r <= 1; }

// Guard used by every +_r operation.
inline void require_unit_scalar(const Rat& r, const char* where) {
  if (!in_unit_range(r)) fail(Errc::ScalarOutOfRange, std::string(where) + ": scalar " + rat_to_string(r) + " outside [0,1]");
}

}  // namespace mpd
