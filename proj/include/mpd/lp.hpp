#pragma once

#include <optional>
#include <vector>

#include "mpd/errors.hpp"
#include "mpd/rational.hpp"

namespace mpd {

// Exact rational LP over nonnegative variables:
//
//   find / optimize c.x   subject to   row_i . x  (<= | = | >=)  rhs_i,  x >= 0
//
// Small and deterministic rather than fast: dense two-phase simplex with
// Bland's rule on a fixed column order. That is all the hull-membership and
// Minkowski problems in this project need, and it keeps infeasibility
// certificates exact.

enum class Rel { LE, EQ, GE };

struct LinearSystem {
  int num_vars = 0;
  std::vector<std::vector<Rat>> rows;
  std::vector<Rel> rels;
  std::vector<Rat> rhs;

  // Optional objective c.x; direction is maximize when `maximize` is set.
  std::optional<std::vector<Rat>> objective;
  bool maximize = true;

  void add(std::vector<Rat> row, Rel rel, Rat b) {
    rows.push_back(std::move(row));
    rels.push_back(rel);
    rhs.push_back(std::move(b));
  }
};

enum class LpStatus { Feasible, Infeasible, Unbounded };

// On Infeasible, `farkas` holds one multiplier per ORIGINAL constraint with
//   y_i <= 0 for <= rows, y_i >= 0 for >= rows, y_i free for = rows,
//   sum_i y_i * row_i <= 0 componentwise, and sum_i y_i * rhs_i > 0,
// which refutes feasibility over x >= 0 (verified before returning).
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rat> assignment;    // x, when Feasible
  Rat objective_value = 0;        // c.x, when Feasible and objective given
  std::vector<Rat> farkas;        // when Infeasible
};

LpResult lp_solve(const LinearSystem& sys);

}  // namespace mpd
