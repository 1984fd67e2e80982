#include "mpd/lp.hpp"

#include <algorithm>

namespace mpd {

namespace {

// Dense simplex tableau for  min cost.z  s.t.  M z = d, z >= 0, d >= 0.
// Column order is fixed (structural, then slack, then artificial) and both
// pivot choices follow Bland's rule, so runs are deterministic and finite.
struct Tableau {
  int rows = 0, cols = 0;                  // constraint rows, variable columns
  std::vector<std::vector<Rat>> a;         // rows x (cols+1), last column = rhs
  std::vector<Rat> cost;                   // cols+1, last entry = -objective
  std::vector<int> basis;                  // basic variable of each row
  std::vector<bool> allowed;               // columns that may enter the basis

  Rat& rhs(int r) { return a[static_cast<size_t>(r)][static_cast<size_t>(cols)]; }
  Rat& at(int r, int c) { return a[static_cast<size_t>(r)][static_cast<size_t>(c)]; }

  void pivot(int pr, int pc) {
    auto& prow = a[static_cast<size_t>(pr)];
    const Rat inv = Rat(1) / prow[static_cast<size_t>(pc)];
    for (auto& v : prow) v *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == pr) continue;
      const Rat f = at(r, pc);
      if (f == 0) continue;
      auto& row = a[static_cast<size_t>(r)];
      for (int c = 0; c <= cols; ++c)
        row[static_cast<size_t>(c)] -= f * prow[static_cast<size_t>(c)];
    }
    const Rat f = cost[static_cast<size_t>(pc)];
    if (f != 0)
      for (int c = 0; c <= cols; ++c) cost[static_cast<size_t>(c)] -= f * prow[static_cast<size_t>(c)];
    basis[static_cast<size_t>(pr)] = pc;
  }

  // Returns false when the problem is unbounded below.
  bool run_simplex() {
    for (;;) {
      int enter = -1;
      for (int c = 0; c < cols; ++c)
        if (allowed[static_cast<size_t>(c)] && cost[static_cast<size_t>(c)] < 0) {
          enter = c;
          break;  // Bland: first improving column
        }
      if (enter < 0) return true;

      int leave = -1;
      Rat best;
      for (int r = 0; r < rows; ++r) {
        const Rat& coef = at(r, enter);
        if (coef <= 0) continue;
        Rat ratio = rhs(r) / coef;
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[static_cast<size_t>(r)] < basis[static_cast<size_t>(leave)])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult lp_solve(const LinearSystem& sys) {
  const int n = sys.num_vars;
  const size_t m_orig = sys.rows.size();
  if (n < 0) fail(Errc::MalformedSystem, "negative variable count");
  if (sys.rels.size() != m_orig || sys.rhs.size() != m_orig)
    fail(Errc::MalformedSystem, "constraint lists have mismatched lengths");
  for (const auto& row : sys.rows)
    if (static_cast<int>(row.size()) != n)
      fail(Errc::MalformedSystem, "constraint row has wrong arity");
  if (sys.objective && static_cast<int>(sys.objective->size()) != n)
    fail(Errc::MalformedSystem, "objective has wrong arity");

  // Normalize everything to <=; an equality becomes a pair of opposite rows.
  // norm_of[j] = (original index, sign), used to fold the Farkas multipliers
  // of the normalized rows back onto the original constraints.
  std::vector<std::vector<Rat>> arows;
  std::vector<Rat> brhs;
  std::vector<std::pair<size_t, int>> norm_of;
  for (size_t i = 0; i < m_orig; ++i) {
    auto push = [&](int sign) {
      std::vector<Rat> row = sys.rows[i];
      Rat b = sys.rhs[i];
      if (sign < 0) {
        for (auto& v : row) v = -v;
        b = -b;
      }
      arows.push_back(std::move(row));
      brhs.push_back(std::move(b));
      norm_of.emplace_back(i, sign);
    };
    switch (sys.rels[i]) {
      case Rel::LE: push(+1); break;
      case Rel::GE: push(-1); break;
      case Rel::EQ: push(+1); push(-1); break;
    }
  }
  const int m = static_cast<int>(arows.size());

  // Equation form: (+-row).x (+-)slack (+artificial) = |b|. Rows with b < 0
  // are flipped so every right-hand side is nonnegative; those rows get an
  // artificial basic variable, the rest start basic in their slack.
  std::vector<int> art_col(static_cast<size_t>(m), -1);
  int n_art = 0;
  for (int j = 0; j < m; ++j)
    if (brhs[static_cast<size_t>(j)] < 0) art_col[static_cast<size_t>(j)] = n + m + n_art++;

  Tableau t;
  t.rows = m;
  t.cols = n + m + n_art;
  t.a.assign(static_cast<size_t>(m), std::vector<Rat>(static_cast<size_t>(t.cols) + 1, Rat(0)));
  t.basis.assign(static_cast<size_t>(m), -1);
  t.allowed.assign(static_cast<size_t>(t.cols), true);

  for (int j = 0; j < m; ++j) {
    const bool flip = art_col[static_cast<size_t>(j)] >= 0;
    for (int c = 0; c < n; ++c)
      t.at(j, c) = flip ? -arows[static_cast<size_t>(j)][static_cast<size_t>(c)]
                        : arows[static_cast<size_t>(j)][static_cast<size_t>(c)];
    t.at(j, n + j) = flip ? Rat(-1) : Rat(1);
    t.rhs(j) = flip ? -brhs[static_cast<size_t>(j)] : brhs[static_cast<size_t>(j)];
    if (flip) {
      t.at(j, art_col[static_cast<size_t>(j)]) = 1;
      t.basis[static_cast<size_t>(j)] = art_col[static_cast<size_t>(j)];
    } else {
      t.basis[static_cast<size_t>(j)] = n + j;
    }
  }

  LpResult out;

  if (n_art > 0) {
    // Phase 1: minimize the sum of artificials.
    t.cost.assign(static_cast<size_t>(t.cols) + 1, Rat(0));
    for (int c = n + m; c < t.cols; ++c) t.cost[static_cast<size_t>(c)] = 1;
    for (int j = 0; j < m; ++j)
      if (t.basis[static_cast<size_t>(j)] >= n + m)
        for (int c = 0; c <= t.cols; ++c) t.cost[static_cast<size_t>(c)] -= t.at(j, c);

    if (!t.run_simplex())
      throw std::logic_error("lp_solve: phase 1 cannot be unbounded");

    const Rat infeas = -t.cost[static_cast<size_t>(t.cols)];
    if (infeas > 0) {
      // Infeasible. The phase-1 reduced cost of slack column j equals the
      // Farkas multiplier of normalized row j (nonnegative at optimality);
      // fold them onto the original rows and re-verify before returning.
      out.status = LpStatus::Infeasible;
      out.farkas.assign(m_orig, Rat(0));
      for (int j = 0; j < m; ++j) {
        const Rat& yj = t.cost[static_cast<size_t>(n + j)];
        if (yj < 0) throw std::logic_error("lp_solve: negative phase-1 reduced cost");
        auto [orig, sign] = norm_of[static_cast<size_t>(j)];
        out.farkas[orig] -= Rat(sign) * yj;
      }
      std::vector<Rat> combo(static_cast<size_t>(n), Rat(0));
      Rat combo_rhs = 0;
      for (size_t i = 0; i < m_orig; ++i) {
        for (int c = 0; c < n; ++c)
          combo[static_cast<size_t>(c)] += out.farkas[i] * sys.rows[i][static_cast<size_t>(c)];
        combo_rhs += out.farkas[i] * sys.rhs[i];
        if (sys.rels[i] == Rel::LE && out.farkas[i] > 0)
          throw std::logic_error("lp_solve: bad certificate sign on <= row");
        if (sys.rels[i] == Rel::GE && out.farkas[i] < 0)
          throw std::logic_error("lp_solve: bad certificate sign on >= row");
      }
      for (const auto& v : combo)
        if (v > 0) throw std::logic_error("lp_solve: certificate combination not <= 0");
      if (combo_rhs <= 0) throw std::logic_error("lp_solve: certificate rhs not positive");
      return out;
    }

    // Feasible: drive leftover basic artificials out (they sit at level 0),
    // dropping any row that has become redundant, then freeze the columns.
    for (int j = 0; j < m; ++j) {
      if (t.basis[static_cast<size_t>(j)] < n + m) continue;
      int pc = -1;
      for (int c = 0; c < n + m; ++c)
        if (t.at(j, c) != 0) {
          pc = c;
          break;
        }
      if (pc >= 0) t.pivot(j, pc);
    }
    for (int c = n + m; c < t.cols; ++c) t.allowed[static_cast<size_t>(c)] = false;
  }

  out.status = LpStatus::Feasible;

  if (sys.objective) {
    // Phase 2: minimize -c.x for maximization, c.x otherwise.
    t.cost.assign(static_cast<size_t>(t.cols) + 1, Rat(0));
    for (int c = 0; c < n; ++c) {
      const Rat& oc = (*sys.objective)[static_cast<size_t>(c)];
      t.cost[static_cast<size_t>(c)] = sys.maximize ? -oc : oc;
    }
    for (int j = 0; j < t.rows; ++j) {
      const int b = t.basis[static_cast<size_t>(j)];
      const Rat f = t.cost[static_cast<size_t>(b)];
      if (f != 0)
        for (int c = 0; c <= t.cols; ++c) t.cost[static_cast<size_t>(c)] -= f * t.at(j, c);
    }
    if (!t.run_simplex()) {
      out.status = LpStatus::Unbounded;
      return out;
    }
  }

  out.assignment.assign(static_cast<size_t>(n), Rat(0));
  for (int j = 0; j < t.rows; ++j)
    if (t.basis[static_cast<size_t>(j)] < n)
      out.assignment[static_cast<size_t>(t.basis[static_cast<size_t>(j)])] = t.rhs(j);
  if (sys.objective) {
    out.objective_value = 0;
    for (int c = 0; c < n; ++c)
      out.objective_value += (*sys.objective)[static_cast<size_t>(c)] * out.assignment[static_cast<size_t>(c)];
  }
  return out;
}

}  // namespace mpd
