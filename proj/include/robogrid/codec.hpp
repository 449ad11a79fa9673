// Copyright 2026 The RoboGrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Surface code <-> AST for a bound grammar.
//
// linearize() renders a tree in the grammar's style and lexicon. parse() is
// a deterministic recursive-descent recognizer for the same skeleton; every
// construct starts with a keyword or punctuation token, so one or two tokens
// of lookahead always decide the production.

#ifndef ROBOGRID_CODEC_HPP_
#define ROBOGRID_CODEC_HPP_

#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "robogrid/ast.hpp"
#include "robogrid/grammar.hpp"

namespace robogrid {

// ---------------------------------------------------------------------------
// Tokens

enum class TokenKind { kKeyword, kInteger, kItem, kPunctuation, kUnknown };

struct Token {
  std::string text;
  TokenKind kind = TokenKind::kUnknown;
  std::optional<TerminalRole> role;  // set when the text is bound in the grammar
  std::size_t offset = 0;            // byte offset in the source

  bool is(TerminalRole r) const { return role == r; }
};

inline constexpr bool isSelfDelimiting(char c) {
  switch (c) {
    case '{':
    case '}':
    case '(':
    case ')':
    case '[':
    case ']':
    case ';':
    case '+':
    case '*':
      return true;
    default:
      return false;
  }
}

inline constexpr bool isSpace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

inline bool isIntegerText(std::string_view t) {
  if (t.empty()) return false;
  for (char c : t) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// Splits on whitespace; the characters {}()[];+* always form tokens of their
// own. Unknown tokens are kept and left for the parser to reject.
inline std::vector<Token> tokenize(std::string_view code, const GrammarSpec& g) {
  std::vector<Token> out;
  auto classify = [&](std::string text, std::size_t offset) {
    Token t{std::move(text), TokenKind::kUnknown, std::nullopt, offset};
    t.role = g.roleOf(t.text);
    if (t.role) {
      t.kind = isPunctuationRole(*t.role) ? TokenKind::kPunctuation : TokenKind::kKeyword;
    } else if (isIntegerText(t.text)) {
      t.kind = TokenKind::kInteger;
    } else if (ItemToken::fromString(t.text)) {
      t.kind = TokenKind::kItem;
    } else if (t.text.size() == 1 && isSelfDelimiting(t.text[0])) {
      t.kind = TokenKind::kPunctuation;
    }
    out.push_back(std::move(t));
  };
  std::size_t i = 0;
  while (i < code.size()) {
    const char c = code[i];
    if (isSpace(c)) {
      ++i;
    } else if (isSelfDelimiting(c)) {
      classify(std::string(1, c), i);
      ++i;
    } else {
      const std::size_t start = i;
      while (i < code.size() && !isSpace(code[i]) && !isSelfDelimiting(code[i])) ++i;
      classify(std::string(code.substr(start, i - start)), start);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linearization

namespace detail {

class Linearizer {
 public:
  explicit Linearizer(const GrammarSpec& g) : g_(g) {}

  std::string program(const Program& p) {
    for (const Stmt& s : p.body) stmt(s, 0);
    std::string out;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      if (i) out += '\n';
      out += lines_[i];
    }
    return out;
  }

  std::string arith(const ArithExpr& e) const {
    return std::visit(Overloaded{
                          [&](const Literal& l) { return std::to_string(l.value); },
                          [&](const BinaryArith& b) {
                            const std::string& op = tok(b.op == ArithOp::kAdd ? TerminalRole::kOpAdd : TerminalRole::kOpMul);
                            if (g_.style == Style::kSExpr) {
                              return tok(TerminalRole::kParL) + op + " " + arith(*b.lhs) + " " + arith(*b.rhs) +
                                     tok(TerminalRole::kParR);
                            }
                            return tok(TerminalRole::kParL) + arith(*b.lhs) + " " + op + " " + arith(*b.rhs) +
                                   tok(TerminalRole::kParR);
                          },
                      },
                      e.node);
  }

  std::string cond(const BoolExpr& e) const {
    const bool sexpr = g_.style == Style::kSExpr;
    const std::string& pl = tok(TerminalRole::kParL);
    const std::string& pr = tok(TerminalRole::kParR);
    return std::visit(Overloaded{
                          [&](const Holding& h) {
                            std::string s = tok(TerminalRole::kHolding) + " " + h.item.str();
                            return sexpr ? pl + s + pr : s;
                          },
                          [&](const Not& n) {
                            if (sexpr) return pl + tok(TerminalRole::kNot) + " " + cond(*n.inner) + pr;
                            return tok(TerminalRole::kNot) + " " + pl + cond(*n.inner) + pr;
                          },
                          [&](const BinaryBool& b) {
                            const std::string& op = tok(b.op == BoolOp::kAnd ? TerminalRole::kAnd : TerminalRole::kOr);
                            if (sexpr) return pl + op + " " + cond(*b.lhs) + " " + cond(*b.rhs) + pr;
                            return pl + cond(*b.lhs) + " " + op + " " + cond(*b.rhs) + pr;
                          },
                      },
                      e.node);
  }

  std::string action(const Action& a) const {
    return std::visit(Overloaded{
                          [&](const Move& m) {
                            std::string s = tok(TerminalRole::kMove) + " " +
                                            tok(m.dir == MoveDir::kForward ? TerminalRole::kDirFwd : TerminalRole::kDirBwd);
                            if (!(m.countOmitted && m.steps == lit(1))) s += " " + arith(m.steps);
                            return s;
                          },
                          [&](const Turn& t) {
                            return tok(TerminalRole::kTurn) + " " +
                                   tok(t.dir == TurnDir::kLeft ? TerminalRole::kDirLeft : TerminalRole::kDirRight);
                          },
                          [&](const Grab& gr) { return tok(TerminalRole::kGrab) + " " + gr.item.str(); },
                      },
                      a);
  }

 private:
  const std::string& tok(TerminalRole r) const { return g_.token(r); }

  void emit(int depth, std::string text) { lines_.push_back(std::string(2 * static_cast<std::size_t>(depth), ' ') + std::move(text)); }

  void block(const Block& b, int depth) {
    for (const Stmt& s : b) stmt(s, depth);
  }

  void stmt(const Stmt& s, int depth) {
    using R = TerminalRole;
    std::visit(Overloaded{
                   [&](const ActionStmt& a) {
                     switch (g_.style) {
                       case Style::kBlock: emit(depth, tok(R::kDo) + " " + action(a.action) + " " + tok(R::kEnd)); break;
                       case Style::kCStyle: emit(depth, action(a.action) + tok(R::kSemi)); break;
                       case Style::kSExpr: emit(depth, tok(R::kParL) + action(a.action) + tok(R::kParR)); break;
                     }
                   },
                   [&](const Loop& l) {
                     switch (g_.style) {
                       case Style::kBlock:
                         emit(depth, tok(R::kLoop) + " " + arith(l.count) + " " + tok(R::kTimes) + " " + tok(R::kLbr));
                         block(l.body, depth + 1);
                         emit(depth, tok(R::kRbr));
                         break;
                       case Style::kCStyle:
                         emit(depth, tok(R::kLoop) + tok(R::kParL) + arith(l.count) + tok(R::kParR) + " " + tok(R::kLbr));
                         block(l.body, depth + 1);
                         emit(depth, tok(R::kRbr));
                         break;
                       case Style::kSExpr:
                         emit(depth, tok(R::kParL) + tok(R::kLoop) + " " + arith(l.count));
                         block(l.body, depth + 1);
                         emit(depth, tok(R::kParR));
                         break;
                     }
                   },
                   [&](const If& i) {
                     switch (g_.style) {
                       case Style::kBlock:
                         emit(depth, tok(R::kIf) + " " + cond(i.cond) + " " + tok(R::kThen) + " " + tok(R::kLbr));
                         block(i.thenBlock, depth + 1);
                         if (i.elseBlock) {
                           emit(depth, tok(R::kRbr) + " " + tok(R::kElse) + " " + tok(R::kLbr));
                           block(*i.elseBlock, depth + 1);
                         }
                         emit(depth, tok(R::kRbr));
                         break;
                       case Style::kCStyle:
                         emit(depth, tok(R::kIf) + tok(R::kParL) + cond(i.cond) + tok(R::kParR) + " " + tok(R::kLbr));
                         block(i.thenBlock, depth + 1);
                         if (i.elseBlock) {
                           emit(depth, tok(R::kRbr) + " " + tok(R::kElse) + " " + tok(R::kLbr));
                           block(*i.elseBlock, depth + 1);
                         }
                         emit(depth, tok(R::kRbr));
                         break;
                       case Style::kSExpr:
                         emit(depth, tok(R::kParL) + tok(R::kIf) + " " + cond(i.cond) + " " + tok(R::kThen));
                         block(i.thenBlock, depth + 1);
                         if (i.elseBlock) {
                           emit(depth, tok(R::kElse));
                           block(*i.elseBlock, depth + 1);
                         }
                         emit(depth, tok(R::kParR));
                         break;
                     }
                   },
               },
               s.node);
  }

  const GrammarSpec& g_;
  std::vector<std::string> lines_;
};

}  // namespace detail

// One statement per line, two spaces of indentation per nesting level.
inline std::string linearize(const Program& p, const GrammarSpec& g) { return detail::Linearizer(g).program(p); }

inline std::string linearizeExpr(const ArithExpr& e, const GrammarSpec& g) { return detail::Linearizer(g).arith(e); }

inline std::string linearizeCond(const BoolExpr& e, const GrammarSpec& g) { return detail::Linearizer(g).cond(e); }

// ---------------------------------------------------------------------------
// Parsing

struct ParseError {
  std::size_t position = 0;  // token index; equals the token count at end of input
  std::string expected;
  std::string found;

  std::string message() const {
    return "parse error at token " + std::to_string(position) + ": expected " + expected + ", found " + found;
  }
  friend bool operator==(const ParseError&, const ParseError&) = default;
};

using ParseOutcome = std::variant<Program, ParseError>;

inline bool parsed(const ParseOutcome& o) { return std::holds_alternative<Program>(o); }

namespace detail {

inline constexpr int kMaxParseNesting = 2000;

class Parser {
 public:
  Parser(std::vector<Token> tokens, const GrammarSpec& g) : toks_(std::move(tokens)), g_(g) {}

  Program program() {
    Program p;
    // start: stmt+
    p.body.push_back(stmt());
    while (!atEnd()) p.body.push_back(stmt());
    return p;
  }

 private:
  using R = TerminalRole;

  struct Nest {
    explicit Nest(Parser& p) : p_(p) {
      if (++p_.nesting_ > kMaxParseNesting) p_.fail("shallower nesting");
    }
    ~Nest() { --p_.nesting_; }
    Parser& p_;
  };

  bool atEnd() const { return pos_ >= toks_.size(); }
  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? &toks_[pos_ + ahead] : nullptr;
  }
  bool peekIs(R r, std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    return t && t->is(r);
  }
  std::string describe(R r) const { return "'" + g_.token(r) + "' (" + std::string(roleName(r)) + ")"; }

  [[noreturn]] void fail(std::string expected) const {
    const Token* t = peek();
    throw ParseError{pos_, std::move(expected), t ? "'" + t->text + "'" : "end of input"};
  }

  void expect(R r) {
    if (!peekIs(r)) fail(describe(r));
    ++pos_;
  }

  bool accept(R r) {
    if (!peekIs(r)) return false;
    ++pos_;
    return true;
  }

  Stmt stmt() {
    Nest nest(*this);
    switch (g_.style) {
      case Style::kBlock: return blockStyleStmt();
      case Style::kCStyle: return cStyleStmt();
      case Style::kSExpr: return sexprStmt();
    }
    fail("statement");
  }

  bool startsAction(std::size_t ahead = 0) const {
    return peekIs(R::kMove, ahead) || peekIs(R::kTurn, ahead) || peekIs(R::kGrab, ahead);
  }

  // Block style -------------------------------------------------------------

  Stmt blockStyleStmt() {
    if (accept(R::kDo)) {
      Action a = action(R::kEnd);
      expect(R::kEnd);
      return act(std::move(a));
    }
    if (accept(R::kLoop)) {
      ArithExpr count = infixArith();
      expect(R::kTimes);
      Block body = bracketed(/*allowEmpty=*/false);
      return loopStmt(std::move(count), std::move(body));
    }
    if (accept(R::kIf)) {
      BoolExpr c = infixCond();
      expect(R::kThen);
      Block thenBlock = bracketed(false);
      std::optional<Block> elseBlock;
      if (accept(R::kElse)) elseBlock = bracketed(false);
      return ifStmt(std::move(c), std::move(thenBlock), std::move(elseBlock));
    }
    fail("statement (" + describe(R::kDo) + ", " + describe(R::kLoop) + " or " + describe(R::kIf) + ")");
  }

  // LBR stmt+ RBR, or LBR stmt* RBR when allowEmpty.
  Block bracketed(bool allowEmpty) {
    expect(R::kLbr);
    Block b;
    while (!peekIs(R::kRbr)) {
      if (atEnd()) fail(describe(R::kRbr));
      b.push_back(stmt());
    }
    if (b.empty() && !allowEmpty) fail("statement");
    expect(R::kRbr);
    return b;
  }

  // C style -----------------------------------------------------------------

  Stmt cStyleStmt() {
    if (accept(R::kLoop)) {
      expect(R::kParL);
      ArithExpr count = infixArith();
      expect(R::kParR);
      Block body = bracketed(/*allowEmpty=*/true);
      return loopStmt(std::move(count), std::move(body));
    }
    if (accept(R::kIf)) {
      expect(R::kParL);
      BoolExpr c = infixCond();
      expect(R::kParR);
      Block thenBlock = bracketed(true);
      std::optional<Block> elseBlock;
      if (accept(R::kElse)) elseBlock = bracketed(true);
      return ifStmt(std::move(c), std::move(thenBlock), std::move(elseBlock));
    }
    if (startsAction()) {
      Action a = action(R::kSemi);
      expect(R::kSemi);
      return act(std::move(a));
    }
    fail("statement");
  }

  // S-expression style ------------------------------------------------------

  Stmt sexprStmt() {
    expect(R::kParL);
    if (accept(R::kLoop)) {
      ArithExpr count = sexprArith();
      Block body = sexprStmts();
      if (body.empty()) fail("statement");
      expect(R::kParR);
      return loopStmt(std::move(count), std::move(body));
    }
    if (accept(R::kIf)) {
      BoolExpr c = sexprCond();
      expect(R::kThen);
      Block thenBlock = sexprStmts();
      if (thenBlock.empty()) fail("statement");
      std::optional<Block> elseBlock;
      if (accept(R::kElse)) {
        elseBlock = sexprStmts();
        if (elseBlock->empty()) fail("statement");
      }
      expect(R::kParR);
      return ifStmt(std::move(c), std::move(thenBlock), std::move(elseBlock));
    }
    if (startsAction()) {
      Action a = action(R::kParR);
      expect(R::kParR);
      return act(std::move(a));
    }
    fail(describe(R::kLoop) + ", " + describe(R::kIf) + " or an action");
  }

  Block sexprStmts() {
    Block b;
    while (peekIs(R::kParL)) b.push_back(stmt());
    return b;
  }

  // Shared pieces -----------------------------------------------------------

  // `terminator` is the token that may follow an action; it decides whether
  // an optional move count is present.
  Action action(R terminator) {
    if (accept(R::kMove)) {
      MoveDir dir;
      if (accept(R::kDirFwd)) {
        dir = MoveDir::kForward;
      } else if (accept(R::kDirBwd)) {
        dir = MoveDir::kBackward;
      } else {
        fail(describe(R::kDirFwd) + " or " + describe(R::kDirBwd));
      }
      if (peekIs(terminator)) return Move{dir, lit(1), true};
      ArithExpr n = g_.style == Style::kSExpr ? sexprArith() : infixArith();
      return Move{dir, std::move(n), false};
    }
    if (accept(R::kTurn)) {
      if (accept(R::kDirLeft)) return Turn{TurnDir::kLeft};
      if (accept(R::kDirRight)) return Turn{TurnDir::kRight};
      fail(describe(R::kDirLeft) + " or " + describe(R::kDirRight));
    }
    if (accept(R::kGrab)) return Grab{item()};
    fail("action");
  }

  ItemToken item() {
    const Token* t = peek();
    if (!t || t->kind != TokenKind::kItem) fail("item token");
    ++pos_;
    return *ItemToken::fromString(t->text);
  }

  ArithExpr integer() {
    const Token* t = peek();
    if (!t || t->kind != TokenKind::kInteger) fail("integer");
    ++pos_;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t->text.data(), t->text.data() + t->text.size(), v);
    if (ec == std::errc::result_out_of_range) v = std::numeric_limits<std::int64_t>::max();
    return lit(v);
  }

  ArithExpr infixArith() {
    Nest nest(*this);
    if (accept(R::kParL)) {
      ArithExpr l = infixArith();
      ArithOp op;
      if (accept(R::kOpAdd)) {
        op = ArithOp::kAdd;
      } else if (accept(R::kOpMul)) {
        op = ArithOp::kMul;
      } else {
        fail(describe(R::kOpAdd) + " or " + describe(R::kOpMul));
      }
      ArithExpr r = infixArith();
      expect(R::kParR);
      return ArithExpr{BinaryArith{op, std::move(l), std::move(r)}};
    }
    return integer();
  }

  ArithExpr sexprArith() {
    Nest nest(*this);
    if (accept(R::kParL)) {
      ArithOp op;
      if (accept(R::kOpAdd)) {
        op = ArithOp::kAdd;
      } else if (accept(R::kOpMul)) {
        op = ArithOp::kMul;
      } else {
        fail(describe(R::kOpAdd) + " or " + describe(R::kOpMul));
      }
      ArithExpr l = sexprArith();
      ArithExpr r = sexprArith();
      expect(R::kParR);
      return ArithExpr{BinaryArith{op, std::move(l), std::move(r)}};
    }
    return integer();
  }

  BoolExpr infixCond() {
    Nest nest(*this);
    if (accept(R::kHolding)) return holding(item());
    if (accept(R::kNot)) {
      expect(R::kParL);
      BoolExpr inner = infixCond();
      expect(R::kParR);
      return notOf(std::move(inner));
    }
    if (accept(R::kParL)) {
      BoolExpr l = infixCond();
      BoolOp op;
      if (accept(R::kAnd)) {
        op = BoolOp::kAnd;
      } else if (accept(R::kOr)) {
        op = BoolOp::kOr;
      } else {
        fail(describe(R::kAnd) + " or " + describe(R::kOr));
      }
      BoolExpr r = infixCond();
      expect(R::kParR);
      return BoolExpr{BinaryBool{op, std::move(l), std::move(r)}};
    }
    fail("condition");
  }

  BoolExpr sexprCond() {
    Nest nest(*this);
    expect(R::kParL);
    BoolExpr e;
    if (accept(R::kHolding)) {
      e = holding(item());
    } else if (accept(R::kNot)) {
      e = notOf(sexprCond());
    } else if (accept(R::kAnd)) {
      BoolExpr l = sexprCond();
      e = andOf(std::move(l), sexprCond());
    } else if (accept(R::kOr)) {
      BoolExpr l = sexprCond();
      e = orOf(std::move(l), sexprCond());
    } else {
      fail(describe(R::kHolding) + ", " + describe(R::kNot) + ", " + describe(R::kAnd) + " or " + describe(R::kOr));
    }
    expect(R::kParR);
    return e;
  }

  std::vector<Token> toks_;
  const GrammarSpec& g_;
  std::size_t pos_ = 0;
  int nesting_ = 0;
};

}  // namespace detail

inline ParseOutcome parse(std::string_view code, const GrammarSpec& g) {
  try {
    return detail::Parser(tokenize(code, g), g).program();
  } catch (const ParseError& e) {
    return e;
  }
}

}  // namespace robogrid

#endif  // ROBOGRID_CODEC_HPP_
