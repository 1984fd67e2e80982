#pragma once

#include <string>
#include <vector>

#include "mpd/powerdomain.hpp"
#include "mpd/predicate.hpp"

namespace mpd {

// ---------------------------------------------------------------------------
// A small imperative language over boolean variables with probabilistic
// choice s1 [r] s2, demonic choice s1 [] s2, and explicit divergence.
//
//   program := ("var" IDENT ";")* stmt
//   stmt    := "skip" | "diverge" | IDENT ":=" bexp | stmt ";" stmt
//            | stmt "[" RAT "]" stmt | stmt "[]" stmt
//            | "if" bexp "then" stmt "else" stmt
//            | "while" bexp "do" stmt | "{" stmt "}"
//   bexp    := "true" | "false" | IDENT | "!" bexp
//            | bexp "&" bexp | bexp "|" bexp | "(" bexp ")"
//
// Precedence: ";" binds loosest, then "[]", then "[r]"; all three are
// right-associative. "if"/"while" bodies extend through "[]" and "[r]" but
// stop at ";" — brace a sequence to put it inside a branch or a loop.
// "#" starts a comment running to end of line.
// ---------------------------------------------------------------------------

struct BExp {
  enum class Kind { True, False, Var, Not, And, Or };
  Kind kind = Kind::True;
  int var = -1;            // Kind::Var: index into Program::vars
  std::vector<BExp> kids;  // Not: one child; And/Or: two

  static BExp constant(bool b) {
    BExp e;
    e.kind = b ? Kind::True : Kind::False;
    return e;
  }
};

struct Stmt {
  enum class Kind { Skip, Diverge, Assign, Seq, ProbChoice, DemonicChoice, If, While };
  Kind kind = Kind::Skip;
  int var = -1;            // Assign: target variable
  BExp exp;                // Assign: right-hand side; If/While: the guard
  Rat prob;                // ProbChoice
  std::vector<Stmt> kids;  // Seq/choices: two; If: two; While: one (body)
  int line = 0, col = 0;
};

struct Program {
  std::vector<std::string> vars;  // declaration order
  Stmt body;
};

// Throws SyntaxError (with line/col), UndeclaredVariable, DuplicateElement,
// ProbabilityOutOfRange, or TooLarge (more than cap_vars variables).
Program parse_program(const std::string& text, int cap_vars = 4);

// The discrete poset of all 2^n assignments. State names are bitstrings,
// most significant bit = first declared variable, enumerated in binary
// counting order; zero variables give the single state "".
PosetPtr state_space(const std::vector<std::string>& vars);

bool beval(const BExp& e, uint32_t state_bits, int nvars);

// Forward semantics: one power element per start state. Loops unroll `fuel`
// times; start states whose guard still holds afterwards contribute their
// mass to divergence (the subprobability reading of nontermination).
StateTransformer denote(const Program& prog, Flavor flavor, int fuel);

// Backward semantics, structurally mirroring denote with the same fuel, so
// wp(prog, g) and lambda(denote(prog)(sigma), g) agree exactly. The scalar
// form serves Lower (demonic choice = pointwise max) and Upper (min);
// convex transformers act on interval predicates.
Predicate wp(const Program& prog, Flavor flavor, const Predicate& post, int fuel);
IntervalPredicate wp_interval(const Program& prog, const IntervalPredicate& post, int fuel);

}  // namespace mpd
