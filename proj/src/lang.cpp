#include "mpd/lang.hpp"

#include <cctype>
#include <map>
#include <utility>

namespace mpd {

namespace {

// --- lexer ------------------------------------------------------------

struct Token {
  enum class Kind {
    Ident, Number,
    KwVar, KwSkip, KwDiverge, KwIf, KwThen, KwElse, KwWhile, KwDo, KwTrue, KwFalse,
    Assign, Semi, LBracket, RBracket, LBrace, RBrace, LParen, RParen,
    Bang, Amp, Pipe, Slash, End,
  };
  Kind kind;
  std::string text;
  int line, col;
};

std::string at(const Token& t) {
  return "line " + std::to_string(t.line) + ", col " + std::to_string(t.col);
}

const std::map<std::string, Token::Kind>& keywords() {
  static const std::map<std::string, Token::Kind> kw = {
      {"var", Token::Kind::KwVar},     {"skip", Token::Kind::KwSkip},
      {"diverge", Token::Kind::KwDiverge}, {"if", Token::Kind::KwIf},
      {"then", Token::Kind::KwThen},   {"else", Token::Kind::KwElse},
      {"while", Token::Kind::KwWhile}, {"do", Token::Kind::KwDo},
      {"true", Token::Kind::KwTrue},   {"false", Token::Kind::KwFalse},
  };
  return kw;
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Token::Kind k, std::string s, int l, int c) {
    out.push_back(Token{k, std::move(s), l, c});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string word = text.substr(i, j - i);
      auto kw = keywords().find(word);
      push(kw == keywords().end() ? Token::Kind::Ident : kw->second, word, l, cl);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Token::Kind::Number, text.substr(i, j - i), l, cl);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    switch (c) {
      case ';': push(Token::Kind::Semi, ";", l, cl); break;
      case '[': push(Token::Kind::LBracket, "[", l, cl); break;
      case ']': push(Token::Kind::RBracket, "]", l, cl); break;
      case '{': push(Token::Kind::LBrace, "{", l, cl); break;
      case '}': push(Token::Kind::RBrace, "}", l, cl); break;
      case '(': push(Token::Kind::LParen, "(", l, cl); break;
      case ')': push(Token::Kind::RParen, ")", l, cl); break;
      case '!': push(Token::Kind::Bang, "!", l, cl); break;
      case '&': push(Token::Kind::Amp, "&", l, cl); break;
      case '|': push(Token::Kind::Pipe, "|", l, cl); break;
      case '/': push(Token::Kind::Slash, "/", l, cl); break;
      case ':':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          push(Token::Kind::Assign, ":=", l, cl);
          ++i;
          ++col;
          break;
        }
        fail(Errc::SyntaxError, "line " + std::to_string(l) + ", col " + std::to_string(cl) +
                                    ": expected '=' after ':'");
      default:
        fail(Errc::SyntaxError, "line " + std::to_string(l) + ", col " + std::to_string(cl) +
                                    ": unexpected character '" + std::string(1, c) + "'");
    }
    ++i;
    ++col;
  }
  out.push_back(Token{Token::Kind::End, "", line, col});
  return out;
}

// --- parser -----------------------------------------------------------

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;
  std::map<std::string, int> vars;

  const Token& peek(size_t ahead = 0) const {
    size_t k = pos + ahead;
    return k < toks.size() ? toks[k] : toks.back();
  }
  Token take() { return toks[std::min(pos++, toks.size() - 1)]; }
  Token expect(Token::Kind k, const char* what) {
    if (peek().kind != k)
      fail(Errc::SyntaxError, at(peek()) + ": expected " + what + ", found '" + peek().text + "'");
    return take();
  }

  int var_index(const Token& t) {
    auto it = vars.find(t.text);
    if (it == vars.end())
      fail(Errc::UndeclaredVariable, "variable '" + t.text + "' at " + at(t) + " is not declared");
    return it->second;
  }

  Rat rational() {
    Token p = expect(Token::Kind::Number, "a number");
    Int num(p.text);
    if (peek().kind != Token::Kind::Slash) return Rat(num);
    take();
    Token q = expect(Token::Kind::Number, "a denominator");
    Int den(q.text);
    if (den == 0) fail(Errc::SyntaxError, at(q) + ": zero denominator");
    return Rat(num, den);
  }

  BExp bexp() { return b_or(); }
  BExp b_or() {
    BExp left = b_and();
    if (peek().kind != Token::Kind::Pipe) return left;
    take();
    BExp node;
    node.kind = BExp::Kind::Or;
    node.kids = {std::move(left), b_or()};
    return node;
  }
  BExp b_and() {
    BExp left = b_atom();
    if (peek().kind != Token::Kind::Amp) return left;
    take();
    BExp node;
    node.kind = BExp::Kind::And;
    node.kids = {std::move(left), b_and()};
    return node;
  }
  BExp b_atom() {
    Token t = take();
    switch (t.kind) {
      case Token::Kind::KwTrue:
        return BExp::constant(true);
      case Token::Kind::KwFalse:
        return BExp::constant(false);
      case Token::Kind::Bang: {
        BExp node;
        node.kind = BExp::Kind::Not;
        node.kids = {b_atom()};
        return node;
      }
      case Token::Kind::Ident: {
        BExp node;
        node.kind = BExp::Kind::Var;
        node.var = var_index(t);
        return node;
      }
      case Token::Kind::LParen: {
        BExp inner = bexp();
        expect(Token::Kind::RParen, "')'");
        return inner;
      }
      default:
        fail(Errc::SyntaxError, at(t) + ": expected a boolean expression, found '" + t.text + "'");
    }
  }

  // stmt levels, loosest first: seq (";") > demon ("[]") > prob ("[r]") > atom.
  Stmt stmt() { return seq(); }
  Stmt seq() {
    Stmt left = demon();
    if (peek().kind != Token::Kind::Semi) return left;
    Token t = take();
    Stmt node;
    node.kind = Stmt::Kind::Seq;
    node.line = t.line;
    node.col = t.col;
    node.kids = {std::move(left), seq()};
    return node;
  }
  Stmt demon() {
    Stmt left = prob();
    if (peek().kind != Token::Kind::LBracket || peek(1).kind != Token::Kind::RBracket) return left;
    Token t = take();
    take();  // ']'
    Stmt node;
    node.kind = Stmt::Kind::DemonicChoice;
    node.line = t.line;
    node.col = t.col;
    node.kids = {std::move(left), demon()};
    return node;
  }
  Stmt prob() {
    Stmt left = atom();
    if (peek().kind != Token::Kind::LBracket || peek(1).kind != Token::Kind::Number) return left;
    Token t = take();
    Rat r = rational();
    if (!in_unit_range(r))
      fail(Errc::ProbabilityOutOfRange,
           "probability " + rat_to_string(r) + " at " + at(t) + " outside [0,1]");
    expect(Token::Kind::RBracket, "']'");
    Stmt node;
    node.kind = Stmt::Kind::ProbChoice;
    node.prob = std::move(r);
    node.line = t.line;
    node.col = t.col;
    node.kids = {std::move(left), prob()};
    return node;
  }
  Stmt atom() {
    Token t = peek();
    switch (t.kind) {
      case Token::Kind::KwSkip: {
        take();
        Stmt s;
        s.kind = Stmt::Kind::Skip;
        s.line = t.line;
        s.col = t.col;
        return s;
      }
      case Token::Kind::KwDiverge: {
        take();
        Stmt s;
        s.kind = Stmt::Kind::Diverge;
        s.line = t.line;
        s.col = t.col;
        return s;
      }
      case Token::Kind::Ident: {
        take();
        Stmt s;
        s.kind = Stmt::Kind::Assign;
        s.var = var_index(t);
        s.line = t.line;
        s.col = t.col;
        expect(Token::Kind::Assign, "':='");
        s.exp = bexp();
        return s;
      }
      case Token::Kind::KwIf: {
        take();
        Stmt s;
        s.kind = Stmt::Kind::If;
        s.line = t.line;
        s.col = t.col;
        s.exp = bexp();
        expect(Token::Kind::KwThen, "'then'");
        Stmt yes = demon();
        expect(Token::Kind::KwElse, "'else'");
        s.kids = {std::move(yes), demon()};
        return s;
      }
      case Token::Kind::KwWhile: {
        take();
        Stmt s;
        s.kind = Stmt::Kind::While;
        s.line = t.line;
        s.col = t.col;
        s.exp = bexp();
        expect(Token::Kind::KwDo, "'do'");
        s.kids = {demon()};
        return s;
      }
      case Token::Kind::LBrace: {
        take();
        Stmt inner = stmt();
        expect(Token::Kind::RBrace, "'}'");
        return inner;
      }
      default:
        fail(Errc::SyntaxError, at(t) + ": expected a statement, found '" + t.text + "'");
    }
  }
};

}  // namespace

Program parse_program(const std::string& text, int cap_vars) {
  Parser p;
  p.toks = lex(text);
  Program prog;
  while (p.peek().kind == Token::Kind::KwVar) {
    p.take();
    Token name = p.expect(Token::Kind::Ident, "a variable name");
    if (p.vars.count(name.text))
      fail(Errc::DuplicateElement, "variable '" + name.text + "' re-declared at " + at(name));
    p.vars[name.text] = static_cast<int>(prog.vars.size());
    prog.vars.push_back(name.text);
    p.expect(Token::Kind::Semi, "';'");
  }
  if (static_cast<int>(prog.vars.size()) > cap_vars)
    fail(Errc::TooLarge, "program declares " + std::to_string(prog.vars.size()) +
                             " variables; cap is " + std::to_string(cap_vars));
  prog.body = p.stmt();
  if (p.peek().kind != Token::Kind::End)
    fail(Errc::SyntaxError, at(p.peek()) + ": trailing input '" + p.peek().text + "'");
  return prog;
}

PosetPtr state_space(const std::vector<std::string>& vars) {
  const int n = static_cast<int>(vars.size());
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(1) << n);
  for (uint32_t bits = 0; bits < (1u << n); ++bits) {
    std::string s(static_cast<size_t>(n), '0');
    for (int k = 0; k < n; ++k)
      if ((bits >> (n - 1 - k)) & 1u) s[static_cast<size_t>(k)] = '1';
    names.push_back(std::move(s));
  }
  return std::make_shared<FinitePoset>(std::move(names),
                                       std::vector<std::pair<std::string, std::string>>{});
}

bool beval(const BExp& e, uint32_t state_bits, int nvars) {
  switch (e.kind) {
    case BExp::Kind::True:
      return true;
    case BExp::Kind::False:
      return false;
    case BExp::Kind::Var:
      return (state_bits >> (nvars - 1 - e.var)) & 1u;
    case BExp::Kind::Not:
      return !beval(e.kids[0], state_bits, nvars);
    case BExp::Kind::And:
      return beval(e.kids[0], state_bits, nvars) && beval(e.kids[1], state_bits, nvars);
    case BExp::Kind::Or:
      return beval(e.kids[0], state_bits, nvars) || beval(e.kids[1], state_bits, nvars);
  }
  return false;  // unreachable
}

namespace {

struct Denoter {
  Flavor flavor;
  PosetPtr p;
  int nvars;
  int fuel;

  std::vector<PowerElement> eval(const Stmt& s) const {
    const int states = p->size();
    std::vector<PowerElement> table;
    table.reserve(static_cast<size_t>(states));
    switch (s.kind) {
      case Stmt::Kind::Skip:
        for (int i = 0; i < states; ++i) table.push_back(eta(flavor, p, p->name(i)));
        return table;
      case Stmt::Kind::Diverge:
        for (int i = 0; i < states; ++i) table.push_back(bottom(flavor, p));
        return table;
      case Stmt::Kind::Assign: {
        uint32_t bit = 1u << (nvars - 1 - s.var);
        for (int i = 0; i < states; ++i) {
          uint32_t sigma = static_cast<uint32_t>(i);
          uint32_t next = beval(s.exp, sigma, nvars) ? (sigma | bit) : (sigma & ~bit);
          table.push_back(eta(flavor, p, p->name(static_cast<int>(next))));
        }
        return table;
      }
      case Stmt::Kind::Seq: {
        StateTransformer first(flavor, p, p, eval(s.kids[0]));
        StateTransformer second(flavor, p, p, eval(s.kids[1]));
        StateTransformer comp = kleisli_compose(second, first);
        for (int i = 0; i < states; ++i) table.push_back(comp.at(i));
        return table;
      }
      case Stmt::Kind::ProbChoice: {
        std::vector<PowerElement> a = eval(s.kids[0]), b = eval(s.kids[1]);
        for (int i = 0; i < states; ++i)
          table.push_back(convex_comb_pd(s.prob, a[static_cast<size_t>(i)], b[static_cast<size_t>(i)]));
        return table;
      }
      case Stmt::Kind::DemonicChoice: {
        std::vector<PowerElement> a = eval(s.kids[0]), b = eval(s.kids[1]);
        for (int i = 0; i < states; ++i)
          table.push_back(combine(a[static_cast<size_t>(i)], b[static_cast<size_t>(i)]));
        return table;
      }
      case Stmt::Kind::If: {
        std::vector<PowerElement> a = eval(s.kids[0]), b = eval(s.kids[1]);
        for (int i = 0; i < states; ++i)
          table.push_back(beval(s.exp, static_cast<uint32_t>(i), nvars) ? a[static_cast<size_t>(i)]
                                                                        : b[static_cast<size_t>(i)]);
        return table;
      }
      case Stmt::Kind::While: {
        // Unroll: W_0 sends still-guarded states to bottom; each round
        // prepends one body step on guarded states. Exactly `fuel` body
        // executions are allowed before the residue diverges.
        std::vector<PowerElement> body = eval(s.kids[0]);
        StateTransformer body_st(flavor, p, p, body);
        std::vector<PowerElement> cur;
        for (int i = 0; i < states; ++i)
          cur.push_back(beval(s.exp, static_cast<uint32_t>(i), nvars) ? bottom(flavor, p)
                                                                      : eta(flavor, p, p->name(i)));
        for (int round = 0; round < fuel; ++round) {
          StateTransformer w(flavor, p, p, cur);
          std::vector<PowerElement> next;
          next.reserve(static_cast<size_t>(states));
          for (int i = 0; i < states; ++i)
            next.push_back(beval(s.exp, static_cast<uint32_t>(i), nvars)
                               ? kleisli_extend(w, body_st.at(i))
                               : eta(flavor, p, p->name(i)));
          cur = std::move(next);
        }
        return cur;
      }
    }
    fail(Errc::MalformedInput, "denote: malformed statement");
  }
};

}  // namespace

StateTransformer denote(const Program& prog, Flavor flavor, int fuel) {
  if (fuel < 0) fail(Errc::FuelNegative, "denote: fuel " + std::to_string(fuel));
  Denoter d{flavor, state_space(prog.vars), static_cast<int>(prog.vars.size()), fuel};
  return StateTransformer(flavor, d.p, d.p, d.eval(prog.body));
}

namespace {

// The backward pass is one structural recursion for all three flavors: a
// scalar predicate is the degenerate interval [g, g], and Lower/Upper read
// off the end that their lambda tracks (max for Lower, min for Upper).
struct PredPair {
  std::vector<ExtRat> lo, hi;
};

struct WpEval {
  Flavor flavor;
  PosetPtr p;
  int nvars;
  int fuel;

  PredPair eval(const Stmt& s, const PredPair& post) const {
    const int states = p->size();
    switch (s.kind) {
      case Stmt::Kind::Skip:
        return post;
      case Stmt::Kind::Diverge:
        return PredPair{std::vector<ExtRat>(static_cast<size_t>(states), ExtRat(Rat(0))),
                        std::vector<ExtRat>(static_cast<size_t>(states), ExtRat(Rat(0)))};
      case Stmt::Kind::Assign: {
        uint32_t bit = 1u << (nvars - 1 - s.var);
        PredPair out;
        out.lo.reserve(static_cast<size_t>(states));
        out.hi.reserve(static_cast<size_t>(states));
        for (int i = 0; i < states; ++i) {
          uint32_t sigma = static_cast<uint32_t>(i);
          size_t next = beval(s.exp, sigma, nvars) ? (sigma | bit) : (sigma & ~bit);
          out.lo.push_back(post.lo[next]);
          out.hi.push_back(post.hi[next]);
        }
        return out;
      }
      case Stmt::Kind::Seq:
        return eval(s.kids[0], eval(s.kids[1], post));
      case Stmt::Kind::ProbChoice: {
        PredPair a = eval(s.kids[0], post), b = eval(s.kids[1], post);
        PredPair out;
        const Rat& r = s.prob;
        for (int i = 0; i < states; ++i) {
          size_t k = static_cast<size_t>(i);
          out.lo.push_back(r * a.lo[k] + (Rat(1) - r) * b.lo[k]);
          out.hi.push_back(r * a.hi[k] + (Rat(1) - r) * b.hi[k]);
        }
        return out;
      }
      case Stmt::Kind::DemonicChoice: {
        PredPair a = eval(s.kids[0], post), b = eval(s.kids[1], post);
        PredPair out;
        for (int i = 0; i < states; ++i) {
          size_t k = static_cast<size_t>(i);
          switch (flavor) {
            case Flavor::Lower:
              out.lo.push_back(ext_max(a.lo[k], b.lo[k]));
              out.hi.push_back(ext_max(a.hi[k], b.hi[k]));
              break;
            case Flavor::Upper:
              out.lo.push_back(ext_min(a.lo[k], b.lo[k]));
              out.hi.push_back(ext_min(a.hi[k], b.hi[k]));
              break;
            case Flavor::Convex:  // interval hull of the two results
              out.lo.push_back(ext_min(a.lo[k], b.lo[k]));
              out.hi.push_back(ext_max(a.hi[k], b.hi[k]));
              break;
          }
        }
        return out;
      }
      case Stmt::Kind::If: {
        PredPair a = eval(s.kids[0], post), b = eval(s.kids[1], post);
        PredPair out;
        for (int i = 0; i < states; ++i) {
          size_t k = static_cast<size_t>(i);
          bool yes = beval(s.exp, static_cast<uint32_t>(i), nvars);
          out.lo.push_back(yes ? a.lo[k] : b.lo[k]);
          out.hi.push_back(yes ? a.hi[k] : b.hi[k]);
        }
        return out;
      }
      case Stmt::Kind::While: {
        PredPair cur;
        for (int i = 0; i < states; ++i) {
          size_t k = static_cast<size_t>(i);
          bool guarded = beval(s.exp, static_cast<uint32_t>(i), nvars);
          cur.lo.push_back(guarded ? ExtRat(Rat(0)) : post.lo[k]);
          cur.hi.push_back(guarded ? ExtRat(Rat(0)) : post.hi[k]);
        }
        for (int round = 0; round < fuel; ++round) {
          PredPair stepped = eval(s.kids[0], cur);
          PredPair next;
          for (int i = 0; i < states; ++i) {
            size_t k = static_cast<size_t>(i);
            bool guarded = beval(s.exp, static_cast<uint32_t>(i), nvars);
            next.lo.push_back(guarded ? stepped.lo[k] : post.lo[k]);
            next.hi.push_back(guarded ? stepped.hi[k] : post.hi[k]);
          }
          cur = std::move(next);
        }
        return cur;
      }
    }
    fail(Errc::MalformedInput, "wp: malformed statement");
  }
};

}  // namespace

Predicate wp(const Program& prog, Flavor flavor, const Predicate& post, int fuel) {
  if (fuel < 0) fail(Errc::FuelNegative, "wp: fuel " + std::to_string(fuel));
  if (flavor == Flavor::Convex)
    fail(Errc::ModeMismatch, "wp: the convex flavor transforms interval predicates");
  PosetPtr p = state_space(prog.vars);
  require_same_poset(p, post.poset(), "wp");
  WpEval ev{flavor, p, static_cast<int>(prog.vars.size()), fuel};
  PredPair out = ev.eval(prog.body, PredPair{post.values(), post.values()});
  return Predicate(p, flavor == Flavor::Lower ? std::move(out.hi) : std::move(out.lo), post.mode());
}

IntervalPredicate wp_interval(const Program& prog, const IntervalPredicate& post, int fuel) {
  if (fuel < 0) fail(Errc::FuelNegative, "wp_interval: fuel " + std::to_string(fuel));
  PosetPtr p = state_space(prog.vars);
  require_same_poset(p, post.poset(), "wp_interval");
  WpEval ev{Flavor::Convex, p, static_cast<int>(prog.vars.size()), fuel};
  PredPair out = ev.eval(prog.body, PredPair{post.lower().values(), post.upper().values()});
  return IntervalPredicate(Predicate(p, std::move(out.lo), post.mode()),
                           Predicate(p, std::move(out.hi), post.mode()));
}

}  // namespace mpd
