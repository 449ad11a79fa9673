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

// Abstract syntax of RoboGrid programs.
//
// Trees are plain values: copying a node deep-copies its children, and
// operator== is structural equality. Nothing is evaluated or normalized when
// comparing, so `(4 * 4) + 3` and `19` are different trees.

#ifndef ROBOGRID_AST_HPP_
#define ROBOGRID_AST_HPP_

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace robogrid {

// Owning, deep-copying pointer used to break recursion in the node variants.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(implicit)
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

// ---------------------------------------------------------------------------
// Items

enum class ItemBase { kItem, kKey, kBox, kBall, kCube };

inline constexpr std::array<ItemBase, 5> kAllItemBases = {
    ItemBase::kItem, ItemBase::kKey, ItemBase::kBox, ItemBase::kBall, ItemBase::kCube};

inline constexpr std::string_view itemBaseName(ItemBase b) {
  switch (b) {
    case ItemBase::kItem: return "item";
    case ItemBase::kKey: return "key";
    case ItemBase::kBox: return "box";
    case ItemBase::kBall: return "ball";
    case ItemBase::kCube: return "cube";
  }
  return "item";
}

inline constexpr int kMaxItemSuffix = 4;

struct ItemToken {
  ItemBase base = ItemBase::kItem;
  std::optional<int> suffix;  // in [0, 4] when present

  std::string str() const {
    std::string s(itemBaseName(base));
    if (suffix) {
      s += '_';
      s += std::to_string(*suffix);
    }
    return s;
  }

  // Accepts exactly base or base_N with N in [0, 4].
  static std::optional<ItemToken> fromString(std::string_view text) {
    for (ItemBase b : kAllItemBases) {
      const std::string_view name = itemBaseName(b);
      if (!text.starts_with(name)) continue;
      std::string_view rest = text.substr(name.size());
      if (rest.empty()) return ItemToken{b, std::nullopt};
      if (rest.size() == 2 && rest[0] == '_' && rest[1] >= '0' && rest[1] <= '0' + kMaxItemSuffix) {
        return ItemToken{b, rest[1] - '0'};
      }
    }
    return std::nullopt;
  }

  friend bool operator==(const ItemToken&, const ItemToken&) = default;
  friend auto operator<=>(const ItemToken&, const ItemToken&) = default;
};

// ---------------------------------------------------------------------------
// Expressions

enum class ArithOp { kAdd, kMul };
enum class BoolOp { kAnd, kOr };

struct ArithExpr;
struct BoolExpr;

struct Literal {
  std::int64_t value = 0;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct BinaryArith {
  ArithOp op;
  Box<ArithExpr> lhs;
  Box<ArithExpr> rhs;
  friend bool operator==(const BinaryArith&, const BinaryArith&) = default;
};

struct ArithExpr {
  std::variant<Literal, BinaryArith> node;
  friend bool operator==(const ArithExpr&, const ArithExpr&) = default;
};

struct Holding {
  ItemToken item;
  friend bool operator==(const Holding&, const Holding&) = default;
};

struct Not {
  Box<BoolExpr> inner;
  friend bool operator==(const Not&, const Not&) = default;
};

struct BinaryBool {
  BoolOp op;
  Box<BoolExpr> lhs;
  Box<BoolExpr> rhs;
  friend bool operator==(const BinaryBool&, const BinaryBool&) = default;
};

struct BoolExpr {
  std::variant<Holding, Not, BinaryBool> node;
  friend bool operator==(const BoolExpr&, const BoolExpr&) = default;
};

// Builders, mostly for tests and the canonical reader.
inline ArithExpr lit(std::int64_t v) { return ArithExpr{Literal{v}}; }
inline ArithExpr add(ArithExpr a, ArithExpr b) {
  return ArithExpr{BinaryArith{ArithOp::kAdd, std::move(a), std::move(b)}};
}
inline ArithExpr mul(ArithExpr a, ArithExpr b) {
  return ArithExpr{BinaryArith{ArithOp::kMul, std::move(a), std::move(b)}};
}
inline BoolExpr holding(ItemToken item) { return BoolExpr{Holding{item}}; }
inline BoolExpr holding(std::string_view item) {
  auto tok = ItemToken::fromString(item);
  if (!tok) throw std::invalid_argument("not an item token: " + std::string(item));
  return holding(*tok);
}
inline BoolExpr notOf(BoolExpr e) { return BoolExpr{Not{std::move(e)}}; }
inline BoolExpr andOf(BoolExpr a, BoolExpr b) {
  return BoolExpr{BinaryBool{BoolOp::kAnd, std::move(a), std::move(b)}};
}
inline BoolExpr orOf(BoolExpr a, BoolExpr b) {
  return BoolExpr{BinaryBool{BoolOp::kOr, std::move(a), std::move(b)}};
}

// ---------------------------------------------------------------------------
// Actions and statements

enum class MoveDir { kForward, kBackward };
enum class TurnDir { kLeft, kRight };

struct Move {
  MoveDir dir = MoveDir::kForward;
  ArithExpr steps = lit(1);
  // Surface detail only: the count was absent in the source text. Ignored by
  // equality so a tree has one meaning regardless of how it was written.
  bool countOmitted = false;

  friend bool operator==(const Move& a, const Move& b) {
    return a.dir == b.dir && a.steps == b.steps;
  }
};

struct Turn {
  TurnDir dir = TurnDir::kLeft;
  friend bool operator==(const Turn&, const Turn&) = default;
};

struct Grab {
  ItemToken item;
  friend bool operator==(const Grab&, const Grab&) = default;
};

using Action = std::variant<Move, Turn, Grab>;

struct Stmt;
using Block = std::vector<Stmt>;

struct ActionStmt {
  Action action;
  friend bool operator==(const ActionStmt&, const ActionStmt&) = default;
};

struct Loop {
  ArithExpr count;
  Block body;
  friend bool operator==(const Loop&, const Loop&) = default;
};

struct If {
  BoolExpr cond;
  Block thenBlock;
  std::optional<Block> elseBlock;
  friend bool operator==(const If&, const If&) = default;
};

struct Stmt {
  std::variant<ActionStmt, Loop, If> node;
  friend bool operator==(const Stmt&, const Stmt&) = default;
};

struct Program {
  Block body;
  friend bool operator==(const Program&, const Program&) = default;
};

inline Stmt act(Action a) { return Stmt{ActionStmt{std::move(a)}}; }
inline Stmt moveStmt(MoveDir d, ArithExpr n) { return act(Move{d, std::move(n), false}); }
inline Stmt turnStmt(TurnDir d) { return act(Turn{d}); }
inline Stmt grabStmt(std::string_view item) {
  auto tok = ItemToken::fromString(item);
  if (!tok) throw std::invalid_argument("not an item token: " + std::string(item));
  return act(Grab{*tok});
}
inline Stmt loopStmt(ArithExpr count, Block body) { return Stmt{Loop{std::move(count), std::move(body)}}; }
inline Stmt ifStmt(BoolExpr cond, Block thenBlock, std::optional<Block> elseBlock = std::nullopt) {
  return Stmt{If{std::move(cond), std::move(thenBlock), std::move(elseBlock)}};
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// ---------------------------------------------------------------------------
// Depth measures

inline int controlDepth(const Block& block);

inline int controlDepth(const Stmt& stmt) {
  return std::visit(Overloaded{
                        [](const ActionStmt&) { return 0; },
                        [](const Loop& l) { return 1 + controlDepth(l.body); },
                        [](const If& i) {
                          int d = controlDepth(i.thenBlock);
                          if (i.elseBlock) d = std::max(d, controlDepth(*i.elseBlock));
                          return 1 + d;
                        },
                    },
                    stmt.node);
}

inline int controlDepth(const Block& block) {
  int d = 0;
  for (const Stmt& s : block) d = std::max(d, controlDepth(s));
  return d;
}

inline int controlDepth(const Program& p) { return controlDepth(p.body); }

inline int exprDepth(const ArithExpr& e) {
  return std::visit(Overloaded{
                        [](const Literal&) { return 1; },
                        [](const BinaryArith& b) { return 1 + std::max(exprDepth(*b.lhs), exprDepth(*b.rhs)); },
                    },
                    e.node);
}

inline int exprDepth(const BoolExpr& e) {
  return std::visit(Overloaded{
                        [](const Holding&) { return 1; },
                        [](const Not& n) { return 1 + exprDepth(*n.inner); },
                        [](const BinaryBool& b) { return 1 + std::max(exprDepth(*b.lhs), exprDepth(*b.rhs)); },
                    },
                    e.node);
}

inline bool astEqual(const Program& a, const Program& b) { return a == b; }

// Calls `arith(const ArithExpr&)` on every top-level arithmetic expression
// (loop counts, move counts) and `cond(const BoolExpr&)` on every condition.
template <typename ArithFn, typename CondFn>
void forEachExpression(const Block& block, ArithFn&& arith, CondFn&& cond) {
  for (const Stmt& s : block) {
    std::visit(Overloaded{
                   [&](const ActionStmt& a) {
                     if (const auto* m = std::get_if<Move>(&a.action)) arith(m->steps);
                   },
                   [&](const Loop& l) {
                     arith(l.count);
                     forEachExpression(l.body, arith, cond);
                   },
                   [&](const If& i) {
                     cond(i.cond);
                     forEachExpression(i.thenBlock, arith, cond);
                     if (i.elseBlock) forEachExpression(*i.elseBlock, arith, cond);
                   },
               },
               s.node);
  }
}

template <typename ArithFn, typename CondFn>
void forEachExpression(const Program& p, ArithFn&& arith, CondFn&& cond) {
  forEachExpression(p.body, arith, cond);
}

inline std::size_t nodeCount(const Block& block) {
  std::size_t n = 0;
  for (const Stmt& s : block) {
    n += 1;
    if (const auto* l = std::get_if<Loop>(&s.node)) n += nodeCount(l->body);
    if (const auto* i = std::get_if<If>(&s.node)) {
      n += nodeCount(i->thenBlock);
      if (i->elseBlock) n += nodeCount(*i->elseBlock);
    }
  }
  return n;
}

// ---------------------------------------------------------------------------
// Canonical serialization
//
// One line, prefix form, fixed English tags independent of any lexicon:
//
//   (prog (act (move F (add (int 3) (int 4))))
//         (loop (int 2) ((act (turn L))))
//         (if (not (holding key_2)) ((act (grab box))) ((act (turn R)))))
//
// Blocks are untagged parenthesized lists of statements; an `if` carries one
// block, or two when an else branch is present.

class CanonParseError : public std::runtime_error {
 public:
  CanonParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("canonical AST, offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

inline void canonWrite(const ArithExpr& e, std::string& out) {
  std::visit(Overloaded{
                 [&](const Literal& l) { out += "(int " + std::to_string(l.value) + ")"; },
                 [&](const BinaryArith& b) {
                   out += b.op == ArithOp::kAdd ? "(add " : "(mul ";
                   canonWrite(*b.lhs, out);
                   out += ' ';
                   canonWrite(*b.rhs, out);
                   out += ')';
                 },
             },
             e.node);
}

inline void canonWrite(const BoolExpr& e, std::string& out) {
  std::visit(Overloaded{
                 [&](const Holding& h) { out += "(holding " + h.item.str() + ")"; },
                 [&](const Not& n) {
                   out += "(not ";
                   canonWrite(*n.inner, out);
                   out += ')';
                 },
                 [&](const BinaryBool& b) {
                   out += b.op == BoolOp::kAnd ? "(and " : "(or ";
                   canonWrite(*b.lhs, out);
                   out += ' ';
                   canonWrite(*b.rhs, out);
                   out += ')';
                 },
             },
             e.node);
}

inline void canonWrite(const Block& block, std::string& out);

inline void canonWrite(const Stmt& s, std::string& out) {
  std::visit(Overloaded{
                 [&](const ActionStmt& a) {
                   out += "(act ";
                   std::visit(Overloaded{
                                  [&](const Move& m) {
                                    out += m.dir == MoveDir::kForward ? "(move F " : "(move B ";
                                    canonWrite(m.steps, out);
                                    out += ')';
                                  },
                                  [&](const Turn& t) { out += t.dir == TurnDir::kLeft ? "(turn L)" : "(turn R)"; },
                                  [&](const Grab& g) { out += "(grab " + g.item.str() + ")"; },
                              },
                              a.action);
                   out += ')';
                 },
                 [&](const Loop& l) {
                   out += "(loop ";
                   canonWrite(l.count, out);
                   out += ' ';
                   canonWrite(l.body, out);
                   out += ')';
                 },
                 [&](const If& i) {
                   out += "(if ";
                   canonWrite(i.cond, out);
                   out += ' ';
                   canonWrite(i.thenBlock, out);
                   if (i.elseBlock) {
                     out += ' ';
                     canonWrite(*i.elseBlock, out);
                   }
                   out += ')';
                 },
             },
             s.node);
}

inline void canonWrite(const Block& block, std::string& out) {
  out += '(';
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) out += ' ';
    canonWrite(block[i], out);
  }
  out += ')';
}

class CanonReader {
 public:
  explicit CanonReader(std::string_view text) : text_(text) {}

  Program program() {
    open();
    expectTag("prog");
    Program p;
    skipSpace();
    while (peek() != ')') p.body.push_back(stmt());
    if (p.body.empty()) fail("a program needs at least one statement");
    close();
    skipSpace();
    if (pos_ != text_.size()) fail("trailing input");
    return p;
  }

 private:
  Stmt stmt() {
    open();
    const std::string t = tag();
    if (t == "act") {
      Stmt s = act(action());
      close();
      return s;
    }
    if (t == "loop") {
      ArithExpr count = arith();
      Block body = block();
      close();
      return loopStmt(std::move(count), std::move(body));
    }
    if (t == "if") {
      BoolExpr c = cond();
      Block thenBlock = block();
      std::optional<Block> elseBlock;
      skipSpace();
      if (peek() == '(') elseBlock = block();
      close();
      return ifStmt(std::move(c), std::move(thenBlock), std::move(elseBlock));
    }
    fail("unknown statement tag '" + t + "'");
  }

  Block block() {
    open();
    Block b;
    skipSpace();
    while (peek() != ')') b.push_back(stmt());
    close();
    return b;
  }

  Action action() {
    open();
    const std::string t = tag();
    Action a;
    if (t == "move") {
      const std::string d = atom();
      if (d != "F" && d != "B") fail("move direction must be F or B");
      a = Move{d == "F" ? MoveDir::kForward : MoveDir::kBackward, arith(), false};
    } else if (t == "turn") {
      const std::string d = atom();
      if (d != "L" && d != "R") fail("turn direction must be L or R");
      a = Turn{d == "L" ? TurnDir::kLeft : TurnDir::kRight};
    } else if (t == "grab") {
      a = Grab{item()};
    } else {
      fail("unknown action tag '" + t + "'");
    }
    close();
    return a;
  }

  ArithExpr arith() {
    open();
    const std::string t = tag();
    ArithExpr e;
    if (t == "int") {
      const std::string v = atom();
      std::int64_t n = 0;
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
      if (ec != std::errc() || ptr != v.data() + v.size() || n < 0) fail("bad integer '" + v + "'");
      e = lit(n);
    } else if (t == "add" || t == "mul") {
      ArithExpr l = arith();
      ArithExpr r = arith();
      e = t == "add" ? add(std::move(l), std::move(r)) : mul(std::move(l), std::move(r));
    } else {
      fail("unknown arithmetic tag '" + t + "'");
    }
    close();
    return e;
  }

  BoolExpr cond() {
    open();
    const std::string t = tag();
    BoolExpr e;
    if (t == "holding") {
      e = holding(item());
    } else if (t == "not") {
      e = notOf(cond());
    } else if (t == "and" || t == "or") {
      BoolExpr l = cond();
      BoolExpr r = cond();
      e = t == "and" ? andOf(std::move(l), std::move(r)) : orOf(std::move(l), std::move(r));
    } else {
      fail("unknown condition tag '" + t + "'");
    }
    close();
    return e;
  }

  ItemToken item() {
    const std::size_t at = pos_;
    const std::string a = atom();
    auto tok = ItemToken::fromString(a);
    if (!tok) throw CanonParseError(at, "bad item '" + a + "'");
    return *tok;
  }

  void skipSpace() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }
  char peek() {
    if (pos_ >= text_.size()) fail("unexpected end of input");
    return text_[pos_];
  }
  void open() {
    skipSpace();
    if (peek() != '(') fail("expected '('");
    ++pos_;
  }
  void close() {
    skipSpace();
    if (peek() != ')') fail("expected ')'");
    ++pos_;
  }
  std::string atom() {
    skipSpace();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ' ' &&
           text_[pos_] != '\t' && text_[pos_] != '\n' && text_[pos_] != '\r')
      ++pos_;
    if (pos_ == start) fail("expected an atom");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string tag() { return atom(); }
  void expectTag(std::string_view want) {
    const std::string t = tag();
    if (t != want) fail("expected tag '" + std::string(want) + "', found '" + t + "'");
  }
  [[noreturn]] void fail(const std::string& what) { throw CanonParseError(pos_, what); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string canonSerialize(const Program& p) {
  std::string out = "(prog";
  for (const Stmt& s : p.body) {
    out += ' ';
    detail::canonWrite(s, out);
  }
  out += ')';
  return out;
}

inline std::string canonSerialize(const Stmt& s) {
  std::string out;
  detail::canonWrite(s, out);
  return out;
}

inline std::string canonSerialize(const Action& a) {
  std::string out = canonSerialize(act(a));  // "(act X)"
  return out.substr(5, out.size() - 6);
}

inline std::string canonSerialize(const ArithExpr& e) {
  std::string out;
  detail::canonWrite(e, out);
  return out;
}

inline std::string canonSerialize(const BoolExpr& e) {
  std::string out;
  detail::canonWrite(e, out);
  return out;
}

// Throws CanonParseError on malformed input.
inline Program canonParse(std::string_view text) { return detail::CanonReader(text).program(); }

}  // namespace robogrid

#endif  // ROBOGRID_AST_HPP_
