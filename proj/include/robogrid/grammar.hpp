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

// Bound grammars: a production skeleton chosen by Style plus a terminal map
// chosen by LexiconMode and a seed.

#ifndef ROBOGRID_GRAMMAR_HPP_
#define ROBOGRID_GRAMMAR_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "robogrid/ast.hpp"
#include "robogrid/lexicon_pools.hpp"
#include "robogrid/rng.hpp"

namespace robogrid {

enum class Style { kBlock, kCStyle, kSExpr };
enum class LexiconMode { kNatural, kAlien };

inline constexpr std::array<Style, 3> kAllStyles = {Style::kBlock, Style::kCStyle, Style::kSExpr};
inline constexpr std::array<LexiconMode, 2> kAllModes = {LexiconMode::kNatural, LexiconMode::kAlien};

inline constexpr std::string_view styleName(Style s) {
  switch (s) {
    case Style::kBlock: return "block";
    case Style::kCStyle: return "cstyle";
    case Style::kSExpr: return "sexpr";
  }
  return "block";
}

inline std::optional<Style> parseStyle(std::string_view s) {
  if (s == "block") return Style::kBlock;
  if (s == "cstyle" || s == "c-style" || s == "c") return Style::kCStyle;
  if (s == "sexpr" || s == "s-expr") return Style::kSExpr;
  return std::nullopt;
}

inline constexpr std::string_view modeName(LexiconMode m) {
  return m == LexiconMode::kNatural ? "natural" : "alien";
}

inline std::optional<LexiconMode> parseMode(std::string_view s) {
  if (s == "natural") return LexiconMode::kNatural;
  if (s == "alien") return LexiconMode::kAlien;
  return std::nullopt;
}

enum class TerminalRole {
  kDo,
  kEnd,
  kLoop,
  kTimes,
  kIf,
  kThen,
  kElse,
  kLbr,
  kRbr,
  kParL,
  kParR,
  kSemi,
  kMove,
  kTurn,
  kGrab,
  kHolding,
  kAnd,
  kOr,
  kNot,
  kDirFwd,
  kDirBwd,
  kDirLeft,
  kDirRight,
  kOpAdd,
  kOpMul,
};

inline constexpr std::array<std::string_view, 25> kRoleNames = {
    "DO",    "END",  "LOOP",    "TIMES",  "IF",      "THEN",     "ELSE",    "LBR",      "RBR",
    "PAR_L", "PAR_R", "SEMI",   "MOVE",   "TURN",    "GRAB",     "HOLDING", "AND",      "OR",
    "NOT",   "DIR_FWD", "DIR_BWD", "DIR_LEFT", "DIR_RIGHT", "OP_ADD", "OP_MUL"};

inline constexpr std::string_view roleName(TerminalRole r) { return kRoleNames[static_cast<std::size_t>(r)]; }

inline std::optional<TerminalRole> parseRole(std::string_view name) {
  for (std::size_t i = 0; i < kRoleNames.size(); ++i) {
    if (kRoleNames[i] == name) return static_cast<TerminalRole>(i);
  }
  return std::nullopt;
}

inline constexpr bool isPunctuationRole(TerminalRole r) {
  return r == TerminalRole::kLbr || r == TerminalRole::kRbr || r == TerminalRole::kParL ||
         r == TerminalRole::kParR || r == TerminalRole::kSemi;
}

// Roles referenced by the skeleton of `style`, in declaration order.
inline std::vector<TerminalRole> rolesForStyle(Style style) {
  using R = TerminalRole;
  std::vector<R> roles;
  for (std::size_t i = 0; i < kRoleNames.size(); ++i) {
    const R r = static_cast<R>(i);
    switch (style) {
      case Style::kBlock:
        if (r == R::kSemi) continue;
        break;
      case Style::kCStyle:
        if (r == R::kDo || r == R::kEnd || r == R::kTimes || r == R::kThen) continue;
        break;
      case Style::kSExpr:
        if (r == R::kDo || r == R::kEnd || r == R::kTimes || r == R::kLbr || r == R::kRbr || r == R::kSemi) continue;
        break;
    }
    roles.push_back(r);
  }
  return roles;
}

struct GrammarSpec {
  Style style = Style::kBlock;
  LexiconMode mode = LexiconMode::kNatural;
  std::map<TerminalRole, std::string> terminals;
  std::uint64_t seed = 0;

  const std::string& token(TerminalRole r) const {
    auto it = terminals.find(r);
    if (it == terminals.end()) {
      throw std::logic_error("role " + std::string(roleName(r)) + " is not bound in this grammar");
    }
    return it->second;
  }

  bool binds(TerminalRole r) const { return terminals.contains(r); }

  std::optional<TerminalRole> roleOf(std::string_view text) const {
    for (const auto& [role, tok] : terminals) {
      if (tok == text) return role;
    }
    return std::nullopt;
  }

  // Seed is provenance only; two grammars with the same bindings are the same language.
  friend bool operator==(const GrammarSpec& a, const GrammarSpec& b) {
    return a.style == b.style && a.mode == b.mode && a.terminals == b.terminals;
  }
};

class GrammarTextError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Lexicon sampling

inline bool isAlienToken(std::string_view t) {
  if (t.size() != 6 || t[0] != 'v' || t[1] != '_') return false;
  for (std::size_t i = 2; i < 6; ++i) {
    if (t[i] < 'a' || t[i] > 'z') return false;
  }
  return true;
}

inline std::string randomAlienToken(Rng& rng) {
  std::string t = "v_";
  for (int i = 0; i < 4; ++i) t += static_cast<char>('a' + rng.uniformInt(0, 25));
  return t;
}

namespace detail {

inline std::span<const std::string_view> naturalPool(TerminalRole r) {
  using R = TerminalRole;
  switch (r) {
    case R::kDo: return pools::kDo;
    case R::kEnd: return pools::kEnd;
    case R::kLoop: return pools::kLoop;
    case R::kTimes: return pools::kTimes;
    case R::kIf: return pools::kIf;
    case R::kThen: return pools::kThen;
    case R::kElse: return pools::kElse;
    case R::kMove: return pools::kMove;
    case R::kTurn: return pools::kTurn;
    case R::kGrab: return pools::kGrab;
    case R::kHolding: return pools::kHolding;
    case R::kAnd: return pools::kAnd;
    case R::kOr: return pools::kOr;
    case R::kNot: return pools::kNot;
    case R::kDirFwd: return pools::kForward;
    case R::kDirBwd: return pools::kBackward;
    case R::kDirLeft: return pools::kLeft;
    case R::kDirRight: return pools::kRight;
    case R::kOpAdd: return pools::kAdd;
    case R::kOpMul: return pools::kMul;
    default: return {};
  }
}

}  // namespace detail

inline std::map<TerminalRole, std::string> mapLexicon(LexiconMode mode, Style style, Rng& rng) {
  using R = TerminalRole;
  std::map<R, std::string> out;
  std::set<std::string> used;

  // Punctuation is fixed by the style; only Block draws its bracket pair.
  if (style == Style::kBlock) {
    const auto& pair = pools::kBlockBrackets[rng.index(pools::kBlockBrackets.size())];
    out[R::kLbr] = std::string(pair[0]);
    out[R::kRbr] = std::string(pair[1]);
  } else if (style == Style::kCStyle) {
    out[R::kLbr] = "{";
    out[R::kRbr] = "}";
    out[R::kSemi] = ";";
  }
  out[R::kParL] = "(";
  out[R::kParR] = ")";
  for (const auto& [r, t] : out) used.insert(t);

  for (R role : rolesForStyle(style)) {
    if (isPunctuationRole(role)) continue;
    std::string tok;
    if (mode == LexiconMode::kAlien) {
      do {
        tok = randomAlienToken(rng);
      } while (used.contains(tok));
    } else {
      const auto pool = detail::naturalPool(role);
      std::size_t free = 0;
      for (auto p : pool) free += used.contains(std::string(p)) ? 0 : 1;
      if (free == 0) throw std::logic_error("natural pool exhausted for " + std::string(roleName(role)));
      do {
        tok = std::string(pool[rng.index(pool.size())]);
      } while (used.contains(tok));
    }
    used.insert(tok);
    out[role] = tok;
  }
  return out;
}

inline GrammarSpec buildGrammar(Style style, LexiconMode mode, std::uint64_t seed) {
  Rng rng(seed);
  GrammarSpec g;
  g.style = style;
  g.mode = mode;
  g.seed = seed;
  g.terminals = mapLexicon(mode, style, rng);
  return g;
}

// ---------------------------------------------------------------------------
// EBNF text

// Production rules for a style; independent of the lexicon.
inline std::vector<std::string_view> skeletonRules(Style style) {
  switch (style) {
    case Style::kBlock:
      return {
          "start: stmt+",
          "stmt: action_stmt | loop | if_stmt",
          "action_stmt: DO action END",
          "loop: LOOP expr TIMES LBR stmt+ RBR",
          "if_stmt: IF cond THEN LBR stmt+ RBR (ELSE LBR stmt+ RBR)?",
          "action: MOVE move_dir expr? | TURN turn_dir | GRAB ITEM",
          "move_dir: DIR_FWD | DIR_BWD",
          "turn_dir: DIR_LEFT | DIR_RIGHT",
          "expr: INT | PAR_L expr arith_op expr PAR_R",
          "arith_op: OP_ADD | OP_MUL",
          "cond: HOLDING ITEM | NOT PAR_L cond PAR_R | PAR_L cond bool_op cond PAR_R",
          "bool_op: AND | OR",
      };
    case Style::kCStyle:
      return {
          "start: stmt+",
          "stmt: action_stmt | loop | if_stmt",
          "action_stmt: action SEMI",
          "loop: LOOP PAR_L expr PAR_R LBR stmt* RBR",
          "if_stmt: IF PAR_L cond PAR_R LBR stmt* RBR (ELSE LBR stmt* RBR)?",
          "action: MOVE move_dir expr? | TURN turn_dir | GRAB ITEM",
          "move_dir: DIR_FWD | DIR_BWD",
          "turn_dir: DIR_LEFT | DIR_RIGHT",
          "expr: INT | PAR_L expr arith_op expr PAR_R",
          "arith_op: OP_ADD | OP_MUL",
          "cond: HOLDING ITEM | NOT PAR_L cond PAR_R | PAR_L cond bool_op cond PAR_R",
          "bool_op: AND | OR",
      };
    case Style::kSExpr:
      return {
          "start: stmt+",
          "stmt: action_stmt | loop | if_stmt",
          "action_stmt: PAR_L action PAR_R",
          "loop: PAR_L LOOP expr stmt+ PAR_R",
          "if_stmt: PAR_L IF cond THEN stmt+ (ELSE stmt+)? PAR_R",
          "action: MOVE move_dir expr? | TURN turn_dir | GRAB ITEM",
          "move_dir: DIR_FWD | DIR_BWD",
          "turn_dir: DIR_LEFT | DIR_RIGHT",
          "expr: INT | PAR_L arith_op expr expr PAR_R",
          "arith_op: OP_ADD | OP_MUL",
          "cond: PAR_L HOLDING ITEM PAR_R | PAR_L NOT cond PAR_R | PAR_L bool_op cond cond PAR_R",
          "bool_op: AND | OR",
      };
  }
  return {};
}

inline constexpr std::string_view kItemTerminalLine = "ITEM: /(item|key|box|ball|cube)(_[0-4])?/";
inline constexpr std::string_view kIntTerminalLine = "INT: /[0-9]+/";

inline std::string renderEBNF(const GrammarSpec& g) {
  std::string out;
  for (std::string_view rule : skeletonRules(g.style)) {
    out += rule;
    out += '\n';
  }
  out += '\n';
  for (TerminalRole r : rolesForStyle(g.style)) {
    out += roleName(r);
    out += ": \"";
    out += g.token(r);
    out += "\"\n";
  }
  out += kItemTerminalLine;
  out += '\n';
  out += kIntTerminalLine;
  out += '\n';
  return out;
}

// Recovers a GrammarSpec from text produced by renderEBNF. Only the three
// known skeletons are recognized; anything else is rejected.
inline GrammarSpec parseGrammarText(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string line;
    std::istringstream in{std::string(text)};
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  std::size_t split = 0;
  while (split < lines.size() && !lines[split].empty()) ++split;
  std::vector<std::string_view> rules(lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(split));

  std::optional<Style> style;
  for (Style s : kAllStyles) {
    const auto want = skeletonRules(s);
    if (want.size() == rules.size() && std::equal(want.begin(), want.end(), rules.begin())) style = s;
  }
  if (!style) throw GrammarTextError("grammar text does not match any known skeleton");

  GrammarSpec g;
  g.style = *style;
  for (std::size_t i = split; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty() || line == kItemTerminalLine || line == kIntTerminalLine) continue;
    const auto colon = line.find(": \"");
    if (colon == std::string::npos || line.back() != '"') {
      throw GrammarTextError("malformed terminal line " + std::to_string(i + 1) + ": " + line);
    }
    const auto role = parseRole(std::string_view(line).substr(0, colon));
    if (!role) throw GrammarTextError("unknown terminal role on line " + std::to_string(i + 1));
    g.terminals[*role] = line.substr(colon + 3, line.size() - colon - 4);
  }
  bool alien = true;
  for (TerminalRole r : rolesForStyle(g.style)) {
    if (!g.binds(r)) throw GrammarTextError("terminal " + std::string(roleName(r)) + " is unbound");
    if (!isPunctuationRole(r) && !isAlienToken(g.token(r))) alien = false;
  }
  if (g.terminals.size() != rolesForStyle(g.style).size()) {
    throw GrammarTextError("grammar binds roles its skeleton does not use");
  }
  g.mode = alien ? LexiconMode::kAlien : LexiconMode::kNatural;
  if (renderEBNF(g) != text) throw GrammarTextError("grammar text is not in canonical form");
  return g;
}

}  // namespace robogrid

#endif  // ROBOGRID_GRAMMAR_HPP_
