#pragma once

#include <string>

#include "mpd/rational.hpp"

namespace mpd {

// A value in the extended half-line: a nonnegative-or-any rational, or +inf.
// Arithmetic follows the d-cone conventions: x + inf = inf, and 0 * inf = 0
// (so scaling by zero is strict even on infinite predicates).
class ExtRat {
 public:
  ExtRat() : inf_(false), v_(0) {}
  ExtRat(const Rat& v) : inf_(false), v_(v) {}  // NOLINT: implicit by design
  ExtRat(int v) : inf_(false), v_(v) {}         // NOLINT
  static ExtRat infinity() {
    ExtRat e;
    e.inf_ = true;
    return e;
  }

  bool is_infinite() const { return inf_; }
  // Only meaningful when finite.
  const Rat& finite() const { return v_; }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.v_ == b.v_;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return a == b || a < b; }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return b <= a; }

  friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtRat(a.v_ + b.v_);
  }

  // r * x with 0 * inf = 0; r must be a finite rational >= 0.
  friend ExtRat operator*(const Rat& r, const ExtRat& x) {
    if (r < 0) fail(Errc::ScalarOutOfRange, "negative scalar on extended value");
    if (r == 0) return ExtRat(Rat(0));
    if (x.inf_) return infinity();
    return ExtRat(r * x.v_);
  }

  std::string str() const { return inf_ ? "inf" : rat_to_string(v_); }

  static ExtRat from_string(const std::string& s) {
    if (s == "inf") return infinity();
    return ExtRat(rat_from_string(s));
  }

 private:
  bool inf_;
  Rat v_;
};

inline const ExtRat& ext_min(const ExtRat& a, const ExtRat& b) { return a <= b ? a : b; }
inline const ExtRat& ext_max(const ExtRat& a, const ExtRat& b) { return a >= b ? a : b; }

}  // namespace mpd
