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

// Benchmark tasks: grammaticality judgment, goal-conditioned generation and
// instruction-to-code generation, plus the line-delimited dataset format.

#ifndef ROBOGRID_TASKGEN_HPP_
#define ROBOGRID_TASKGEN_HPP_

#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "robogrid/ast.hpp"
#include "robogrid/codec.hpp"
#include "robogrid/grammar.hpp"
#include "robogrid/rng.hpp"
#include "robogrid/sampler.hpp"
#include "robogrid/world.hpp"

namespace robogrid {

enum class TaskKind { kJudgment, kGoalConditioned, kInstructionToCode };
enum class Label { kValid, kInvalid };
enum class PerturbCategory { kDelimiterDelete, kDelimiterSwap, kKeywordCorrupt, kIllegalNesting };

inline constexpr std::array<PerturbCategory, 4> kAllPerturbCategories = {
    PerturbCategory::kDelimiterDelete, PerturbCategory::kDelimiterSwap, PerturbCategory::kKeywordCorrupt,
    PerturbCategory::kIllegalNesting};

inline constexpr std::string_view taskKindName(TaskKind k) {
  switch (k) {
    case TaskKind::kJudgment: return "judgment";
    case TaskKind::kGoalConditioned: return "goal";
    case TaskKind::kInstructionToCode: return "instruction";
  }
  return "judgment";
}

inline std::optional<TaskKind> parseTaskKind(std::string_view s) {
  if (s == "judgment") return TaskKind::kJudgment;
  if (s == "goal") return TaskKind::kGoalConditioned;
  if (s == "instruction") return TaskKind::kInstructionToCode;
  return std::nullopt;
}

inline constexpr std::string_view labelName(Label l) { return l == Label::kValid ? "VALID" : "INVALID"; }

inline std::optional<Label> parseLabel(std::string_view s) {
  if (s == "VALID") return Label::kValid;
  if (s == "INVALID") return Label::kInvalid;
  return std::nullopt;
}

inline constexpr std::string_view perturbName(PerturbCategory c) {
  switch (c) {
    case PerturbCategory::kDelimiterDelete: return "DelimiterDelete";
    case PerturbCategory::kDelimiterSwap: return "DelimiterSwap";
    case PerturbCategory::kKeywordCorrupt: return "KeywordCorrupt";
    case PerturbCategory::kIllegalNesting: return "IllegalNesting";
  }
  return "DelimiterDelete";
}

inline std::optional<PerturbCategory> parsePerturbCategory(std::string_view s) {
  for (PerturbCategory c : kAllPerturbCategories) {
    if (perturbName(c) == s) return c;
  }
  return std::nullopt;
}

struct TaskInstance {
  std::string id;
  TaskKind kind = TaskKind::kJudgment;
  Style style = Style::kBlock;
  LexiconMode mode = LexiconMode::kNatural;
  GenParams params;
  std::string grammarText;
  std::optional<std::string> candidate;
  std::optional<Label> goldLabel;
  std::optional<RobotState> startState;
  std::optional<RobotState> targetState;
  std::optional<std::string> instruction;
  std::optional<std::string> goldCode;
  std::optional<std::string> goldAst;
  std::optional<PerturbCategory> perturbCategory;

  friend bool operator==(const TaskInstance&, const TaskInstance&) = default;
};

class PerturbationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedRecord : public std::runtime_error {
 public:
  MalformedRecord(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// ---------------------------------------------------------------------------
// State rendering

inline std::string renderInventory(const RobotState& s) {
  if (s.inventory.empty()) return "inventory empty";
  std::string out = "inventory [";
  bool first = true;
  for (const auto& [item, n] : s.inventory) {
    if (!first) out += ", ";
    first = false;
    out += item.str();
    if (n > 1) out += " x" + std::to_string(n);
  }
  return out + "]";
}

// "pos (0, 46), facing W, inventory empty"
inline std::string renderState(const RobotState& s) {
  return "pos (" + std::to_string(s.x) + ", " + std::to_string(s.y) + "), facing " + std::string(1, facingChar(s.facing)) +
         ", " + renderInventory(s);
}

// ---------------------------------------------------------------------------
// Instruction templates
//
// Arithmetic is spelled with "plus"/"times" and every binary node is
// parenthesized. Binary conditions parenthesize each operand and Not
// parenthesizes its argument, so "(A) and ((B) and (C))" reads back to a
// single tree.

namespace detail {

inline std::string instructionArith(const ArithExpr& e) {
  return std::visit(Overloaded{
                        [](const Literal& l) { return std::to_string(l.value); },
                        [](const BinaryArith& b) {
                          return "(" + instructionArith(*b.lhs) + (b.op == ArithOp::kAdd ? " plus " : " times ") +
                                 instructionArith(*b.rhs) + ")";
                        },
                    },
                    e.node);
}

inline std::string instructionCond(const BoolExpr& e) {
  return std::visit(Overloaded{
                        [](const Holding& h) { return "holding " + h.item.str(); },
                        [](const Not& n) { return "not (" + instructionCond(*n.inner) + ")"; },
                        [](const BinaryBool& b) {
                          return "(" + instructionCond(*b.lhs) + (b.op == BoolOp::kAnd ? ") and (" : ") or (") +
                                 instructionCond(*b.rhs) + ")";
                        },
                    },
                    e.node);
}

inline std::string instructionBlock(const Block& b);

inline std::string instructionStmt(const Stmt& s) {
  return std::visit(Overloaded{
                        [](const ActionStmt& a) {
                          return std::visit(Overloaded{
                                                [](const Move& m) {
                                                  return std::string("Move ") +
                                                         (m.dir == MoveDir::kForward ? "forward " : "backward ") +
                                                         instructionArith(m.steps) + " steps.";
                                                },
                                                [](const Turn& t) {
                                                  return std::string(t.dir == TurnDir::kLeft ? "Turn left." : "Turn right.");
                                                },
                                                [](const Grab& g) { return "Grab the " + g.item.str() + "."; },
                                            },
                                            a.action);
                        },
                        [](const Loop& l) {
                          return "Repeat " + instructionArith(l.count) + " times: [ " + instructionBlock(l.body) + " ]";
                        },
                        [](const If& i) {
                          std::string s = "If " + instructionCond(i.cond) + ", then: [ " + instructionBlock(i.thenBlock) + " ]";
                          if (i.elseBlock) s += " Otherwise: [ " + instructionBlock(*i.elseBlock) + " ]";
                          return s;
                        },
                    },
                    s.node);
}

inline std::string instructionBlock(const Block& b) {
  std::string out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += ' ';
    out += instructionStmt(b[i]);
  }
  return out;
}

}  // namespace detail

inline std::string renderInstruction(const Program& t) {
  std::string out;
  for (std::size_t i = 0; i < t.body.size(); ++i) {
    if (i) out += ' ';
    out += "Step " + std::to_string(i + 1) + ": " + detail::instructionStmt(t.body[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Perturbations

inline constexpr int kMaxPerturbAttempts = 50;

namespace detail {

inline std::string freshToken(const GrammarSpec& g, Rng& rng) {
  for (;;) {
    std::string t;
    if (g.mode == LexiconMode::kAlien) {
      t = randomAlienToken(rng);
    } else {
      for (int i = 0; i < 5; ++i) t += static_cast<char>('a' + rng.uniformInt(0, 25));
    }
    if (!g.roleOf(t)) return t;
  }
}

// One attempt; nullopt when the category has no applicable site.
inline std::optional<std::string> perturbOnce(const std::string& code, const GrammarSpec& g, PerturbCategory cat,
                                              Rng& rng) {
  using R = TerminalRole;
  const std::vector<Token> toks = tokenize(code, g);
  auto sites = [&](auto pred) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (pred(toks[i])) out.push_back(i);
    }
    return out;
  };
  auto replaceAt = [&](const Token& t, const std::string& with) {
    std::string s = code;
    s.replace(t.offset, t.text.size(), with);
    return s;
  };

  switch (cat) {
    case PerturbCategory::kDelimiterDelete: {
      auto c = sites([](const Token& t) {
        return t.is(R::kLbr) || t.is(R::kRbr) || t.is(R::kParL) || t.is(R::kParR) || t.is(R::kEnd) || t.is(R::kSemi);
      });
      if (c.empty()) return std::nullopt;
      return replaceAt(toks[c[rng.index(c.size())]], "");
    }
    case PerturbCategory::kDelimiterSwap: {
      auto c = sites([](const Token& t) { return t.is(R::kLbr) || t.is(R::kRbr) || t.is(R::kParL) || t.is(R::kParR); });
      if (c.empty()) return std::nullopt;
      const Token& t = toks[c[rng.index(c.size())]];
      const R counterpart = t.is(R::kLbr) ? R::kRbr : t.is(R::kRbr) ? R::kLbr : t.is(R::kParL) ? R::kParR : R::kParL;
      return replaceAt(t, g.token(counterpart));
    }
    case PerturbCategory::kKeywordCorrupt: {
      auto c = sites([](const Token& t) { return t.kind == TokenKind::kKeyword; });
      if (c.empty()) return std::nullopt;
      return replaceAt(toks[c[rng.index(c.size())]], freshToken(g, rng));
    }
    case PerturbCategory::kIllegalNesting: {
      // Put a control keyword, or a bare action, where the count or
      // condition of a loop/if is expected.
      auto c = sites([](const Token& t) { return t.is(R::kLoop) || t.is(R::kIf); });
      if (c.empty()) return std::nullopt;
      const std::size_t k = c[rng.index(c.size())];
      const std::size_t at = k + (g.style == Style::kCStyle ? 2 : 1);
      if (at >= toks.size()) return std::nullopt;
      std::string insert;
      if (rng.bernoulli(0.5)) {
        insert = g.token(rng.bernoulli(0.5) ? R::kLoop : R::kIf);
      } else {
        insert = g.token(R::kTurn) + " " + g.token(rng.bernoulli(0.5) ? R::kDirLeft : R::kDirRight);
      }
      std::string s = code;
      s.insert(toks[at].offset, insert + " ");
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace detail

struct Perturbed {
  std::string text;
  PerturbCategory category;
};

// Applies `category` at random sites until the parser rejects the result.
inline Perturbed perturbAs(const std::string& code, const GrammarSpec& g, PerturbCategory category, Rng& rng) {
  for (int attempt = 0; attempt < kMaxPerturbAttempts; ++attempt) {
    auto out = detail::perturbOnce(code, g, category, rng);
    if (out && !parsed(parse(*out, g))) return {std::move(*out), category};
  }
  throw PerturbationFailed("no rejected " + std::string(perturbName(category)) + " perturbation in " +
                           std::to_string(kMaxPerturbAttempts) + " attempts");
}

// Picks the operator at random on every attempt.
inline Perturbed perturb(const std::string& code, const GrammarSpec& g, Rng& rng) {
  for (int attempt = 0; attempt < kMaxPerturbAttempts; ++attempt) {
    const PerturbCategory cat = kAllPerturbCategories[rng.index(kAllPerturbCategories.size())];
    auto out = detail::perturbOnce(code, g, cat, rng);
    if (out && !parsed(parse(*out, g))) return {std::move(*out), cat};
  }
  throw PerturbationFailed("no rejected perturbation in " + std::to_string(kMaxPerturbAttempts) + " attempts");
}

// ---------------------------------------------------------------------------
// Instance builders

inline std::string instanceId(TaskKind kind, std::size_t index) {
  std::string n = std::to_string(index);
  if (n.size() < 4) n.insert(0, 4 - n.size(), '0');
  return std::string(taskKindName(kind)) + "-" + n;
}

inline TaskInstance baseInstance(TaskKind kind, const GeneratedInstance& gen, Style style, LexiconMode mode,
                                 const GenParams& params) {
  TaskInstance inst;
  inst.kind = kind;
  inst.style = style;
  inst.mode = mode;
  inst.params = params;
  inst.grammarText = renderEBNF(gen.grammar);
  inst.goldCode = gen.code;
  inst.goldAst = canonSerialize(gen.program);
  return inst;
}

inline constexpr int kMaxBaseResamples = 20;

// `params.seed` is this instance's own seed.
inline TaskInstance makeJudgmentInstance(Label label, PerturbCategory category, Style style, LexiconMode mode,
                                         GenParams params) {
  const std::uint64_t baseSeed = params.seed;
  for (int r = 0; r < kMaxBaseResamples; ++r) {
    if (r > 0) params.seed = deriveSeed(baseSeed, "resample", static_cast<std::uint64_t>(r));
    GeneratedInstance gen = generateInstance(style, mode, params);
    TaskInstance inst = baseInstance(TaskKind::kJudgment, gen, style, mode, params);
    inst.goldLabel = label;
    if (label == Label::kValid) {
      inst.candidate = gen.code;
      return inst;
    }
    Rng rng(deriveSeed(params.seed, "perturb"));
    try {
      Perturbed p = perturbAs(gen.code, gen.grammar, category, rng);
      inst.candidate = std::move(p.text);
      inst.perturbCategory = p.category;
      return inst;
    } catch (const PerturbationFailed&) {
      continue;
    }
  }
  throw PerturbationFailed("perturbation failed for " + std::to_string(kMaxBaseResamples) + " base programs");
}

// Even slots are VALID, odd slots INVALID with categories cycled in order.
inline std::vector<TaskInstance> makeJudgmentSet(std::size_t n, Style style, LexiconMode mode, const GenParams& params) {
  if (n % 2 != 0) throw InvalidParams("judgment set size must be even, got " + std::to_string(n));
  std::vector<TaskInstance> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    GenParams p = params;
    p.seed = deriveSeed(params.seed, static_cast<std::uint64_t>(i));
    const Label label = i % 2 == 0 ? Label::kValid : Label::kInvalid;
    const PerturbCategory cat = kAllPerturbCategories[(i / 2) % kAllPerturbCategories.size()];
    TaskInstance inst = makeJudgmentInstance(label, cat, style, mode, p);
    inst.id = instanceId(TaskKind::kJudgment, i);
    out.push_back(std::move(inst));
  }
  return out;
}

inline TaskInstance makeGoalInstance(Style style, LexiconMode mode, const GenParams& params,
                                     const RobotState& start = initialState()) {
  GeneratedInstance gen = generateInstance(style, mode, params);
  TaskInstance inst = baseInstance(TaskKind::kGoalConditioned, gen, style, mode, params);
  const ExecResult r = execProgram(gen.program, start, kDefaultStepBudget);
  const auto* fin = std::get_if<Final>(&r);
  if (!fin) throw ResampleLimitExceeded("ground truth exceeded the step budget from the given start state");
  inst.startState = start;
  inst.targetState = fin->state;
  return inst;
}

inline TaskInstance makeInstructionInstance(Style style, LexiconMode mode, const GenParams& params,
                                            const RobotState& start = initialState()) {
  GeneratedInstance gen = generateInstance(style, mode, params);
  TaskInstance inst = baseInstance(TaskKind::kInstructionToCode, gen, style, mode, params);
  inst.startState = start;
  inst.instruction = renderInstruction(gen.program);
  return inst;
}

inline std::vector<TaskInstance> makeTaskSet(TaskKind kind, std::size_t n, Style style, LexiconMode mode,
                                             const GenParams& params, const RobotState& start = initialState()) {
  if (kind == TaskKind::kJudgment) return makeJudgmentSet(n, style, mode, params);
  std::vector<TaskInstance> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    GenParams p = params;
    p.seed = deriveSeed(params.seed, static_cast<std::uint64_t>(i));
    TaskInstance inst = kind == TaskKind::kGoalConditioned ? makeGoalInstance(style, mode, p, start)
                                                           : makeInstructionInstance(style, mode, p, start);
    inst.id = instanceId(kind, i);
    out.push_back(std::move(inst));
  }
  return out;
}

// Returns an empty string when the instance is self-consistent, otherwise a
// description of the first inconsistency.
inline std::string checkInstance(const TaskInstance& inst) {
  GrammarSpec g;
  try {
    g = parseGrammarText(inst.grammarText);
  } catch (const GrammarTextError& e) {
    return std::string("grammar: ") + e.what();
  }
  std::optional<Program> gold;
  if (inst.goldCode) {
    ParseOutcome o = parse(*inst.goldCode, g);
    if (!parsed(o)) return "gold code does not parse: " + std::get<ParseError>(o).message();
    gold = std::get<Program>(std::move(o));
    if (inst.goldAst && canonSerialize(*gold) != *inst.goldAst) return "gold code does not match gold AST";
  }
  switch (inst.kind) {
    case TaskKind::kJudgment: {
      if (!inst.candidate || !inst.goldLabel) return "judgment instance lacks candidate or label";
      const bool ok = parsed(parse(*inst.candidate, g));
      if (ok != (*inst.goldLabel == Label::kValid)) return "gold label disagrees with the parser";
      break;
    }
    case TaskKind::kGoalConditioned: {
      if (!gold || !inst.startState || !inst.targetState) return "goal instance lacks gold code or states";
      const ExecResult r = execProgram(*gold, *inst.startState, kDefaultStepBudget);
      const auto* fin = std::get_if<Final>(&r);
      if (!fin || !statesEqual(fin->state, *inst.targetState)) return "target state is not reached by the gold code";
      break;
    }
    case TaskKind::kInstructionToCode:
      if (!gold || !inst.instruction || !inst.startState) return "instruction instance lacks gold code or instruction";
      if (renderInstruction(*gold) != *inst.instruction) return "instruction does not match the gold AST";
      break;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Dataset files: UTF-8, one JSON object per line. Absent optionals are
// omitted. An optional first line {"provenance": {...}} records the config
// that produced the file.

using Json = nlohmann::ordered_json;

inline Json stateToJson(const RobotState& s) {
  Json inv = Json::array();
  for (const auto& [item, n] : s.inventory) {
    for (std::uint64_t k = 0; k < n; ++k) inv.push_back(item.str());
  }
  return Json{{"x", s.x}, {"y", s.y}, {"facing", std::string(1, facingChar(s.facing))}, {"inventory", std::move(inv)}};
}

inline Json paramsToJson(const GenParams& p) {
  return Json{{"D", p.maxDepth}, {"p", p.elseProb}, {"E", p.exprDepth}, {"B_max", p.maxBlock}, {"seed", p.seed}};
}

inline Json toJson(const TaskInstance& inst) {
  Json j;
  j["id"] = inst.id;
  j["kind"] = std::string(taskKindName(inst.kind));
  j["style"] = std::string(styleName(inst.style));
  j["lexicon_mode"] = std::string(modeName(inst.mode));
  j["params"] = paramsToJson(inst.params);
  j["grammar_text"] = inst.grammarText;
  if (inst.candidate) j["candidate"] = *inst.candidate;
  if (inst.goldLabel) j["gold_label"] = std::string(labelName(*inst.goldLabel));
  if (inst.startState) j["start_state"] = stateToJson(*inst.startState);
  if (inst.targetState) j["target_state"] = stateToJson(*inst.targetState);
  if (inst.instruction) j["instruction"] = *inst.instruction;
  if (inst.goldCode) j["gold_code"] = *inst.goldCode;
  if (inst.goldAst) j["gold_ast"] = *inst.goldAst;
  if (inst.perturbCategory) j["perturb_category"] = std::string(perturbName(*inst.perturbCategory));
  return j;
}

namespace detail {

inline void requireKeys(const Json& j, std::initializer_list<std::string_view> allowed, std::size_t line,
                        std::string_view where) {
  if (!j.is_object()) throw MalformedRecord(line, std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) throw MalformedRecord(line, "unknown field '" + key + "' in " + std::string(where));
  }
}

template <typename T>
T field(const Json& j, const char* key, std::size_t line) {
  if (!j.contains(key)) throw MalformedRecord(line, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw MalformedRecord(line, std::string("field '") + key + "': " + e.what());
  }
}

inline RobotState stateFromJson(const Json& j, std::size_t line) {
  requireKeys(j, {"x", "y", "facing", "inventory"}, line, "state");
  RobotState s;
  s.x = field<std::int64_t>(j, "x", line);
  s.y = field<std::int64_t>(j, "y", line);
  const auto f = parseFacing(field<std::string>(j, "facing", line));
  if (!f) throw MalformedRecord(line, "bad facing");
  s.facing = *f;
  for (const auto& item : field<std::vector<std::string>>(j, "inventory", line)) {
    auto tok = ItemToken::fromString(item);
    if (!tok) throw MalformedRecord(line, "bad inventory item '" + item + "'");
    s.give(*tok);
  }
  return s;
}

}  // namespace detail

inline TaskInstance fromJson(const Json& j, std::size_t line) {
  using detail::field;
  detail::requireKeys(j,
                      {"id", "kind", "style", "lexicon_mode", "params", "grammar_text", "candidate", "gold_label",
                       "start_state", "target_state", "instruction", "gold_code", "gold_ast", "perturb_category"},
                      line, "record");
  TaskInstance inst;
  inst.id = field<std::string>(j, "id", line);
  const auto kind = parseTaskKind(field<std::string>(j, "kind", line));
  if (!kind) throw MalformedRecord(line, "bad kind");
  inst.kind = *kind;
  const auto style = parseStyle(field<std::string>(j, "style", line));
  if (!style) throw MalformedRecord(line, "bad style");
  inst.style = *style;
  const auto mode = parseMode(field<std::string>(j, "lexicon_mode", line));
  if (!mode) throw MalformedRecord(line, "bad lexicon_mode");
  inst.mode = *mode;
  const Json& p = j.contains("params") ? j.at("params") : throw MalformedRecord(line, "missing field 'params'");
  detail::requireKeys(p, {"D", "p", "E", "B_max", "seed"}, line, "params");
  inst.params.maxDepth = field<int>(p, "D", line);
  inst.params.elseProb = field<double>(p, "p", line);
  inst.params.exprDepth = field<int>(p, "E", line);
  inst.params.maxBlock = field<int>(p, "B_max", line);
  inst.params.seed = field<std::uint64_t>(p, "seed", line);
  inst.grammarText = field<std::string>(j, "grammar_text", line);
  if (j.contains("candidate")) inst.candidate = field<std::string>(j, "candidate", line);
  if (j.contains("gold_label")) {
    inst.goldLabel = parseLabel(field<std::string>(j, "gold_label", line));
    if (!inst.goldLabel) throw MalformedRecord(line, "bad gold_label");
  }
  if (j.contains("start_state")) inst.startState = detail::stateFromJson(j.at("start_state"), line);
  if (j.contains("target_state")) inst.targetState = detail::stateFromJson(j.at("target_state"), line);
  if (j.contains("instruction")) inst.instruction = field<std::string>(j, "instruction", line);
  if (j.contains("gold_code")) inst.goldCode = field<std::string>(j, "gold_code", line);
  if (j.contains("gold_ast")) inst.goldAst = field<std::string>(j, "gold_ast", line);
  if (j.contains("perturb_category")) {
    inst.perturbCategory = parsePerturbCategory(field<std::string>(j, "perturb_category", line));
    if (!inst.perturbCategory) throw MalformedRecord(line, "bad perturb_category");
  }

  // Exactly the fields the kind needs.
  auto need = [&](bool present, bool wanted, const char* name) {
    if (present && !wanted) throw MalformedRecord(line, std::string("field '") + name + "' not allowed for this kind");
    if (!present && wanted) throw MalformedRecord(line, std::string("missing field '") + name + "'");
  };
  const bool judgment = inst.kind == TaskKind::kJudgment;
  need(inst.candidate.has_value(), judgment, "candidate");
  need(inst.goldLabel.has_value(), judgment, "gold_label");
  need(inst.startState.has_value(), !judgment, "start_state");
  need(inst.targetState.has_value(), inst.kind == TaskKind::kGoalConditioned, "target_state");
  need(inst.instruction.has_value(), inst.kind == TaskKind::kInstructionToCode, "instruction");
  need(inst.goldCode.has_value(), true, "gold_code");
  need(inst.goldAst.has_value(), true, "gold_ast");
  need(inst.perturbCategory.has_value(), judgment && inst.goldLabel == Label::kInvalid, "perturb_category");
  return inst;
}

struct DatasetFile {
  std::optional<Json> provenance;
  std::vector<TaskInstance> instances;
};

inline std::string serializeDataset(const std::vector<TaskInstance>& instances, const std::optional<Json>& provenance = {}) {
  std::string out;
  if (provenance) out += Json{{"provenance", *provenance}}.dump() + "\n";
  for (const TaskInstance& inst : instances) out += toJson(inst).dump() + "\n";
  return out;
}

inline DatasetFile deserializeDataset(std::string_view text) {
  DatasetFile out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw MalformedRecord(lineNo, std::string("invalid JSON: ") + e.what());
    }
    if (lineNo == 1 && j.is_object() && j.size() == 1 && j.contains("provenance")) {
      out.provenance = j.at("provenance");
      continue;
    }
    out.instances.push_back(fromJson(j, lineNo));
  }
  return out;
}

inline void writeTextFile(const std::string& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

inline std::string readTextFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void writeDataset(const std::vector<TaskInstance>& instances, const std::string& path,
                         const std::optional<Json>& provenance = {}) {
  writeTextFile(path, serializeDataset(instances, provenance));
}

inline DatasetFile readDatasetFile(const std::string& path) { return deserializeDataset(readTextFile(path)); }

inline std::vector<TaskInstance> readDataset(const std::string& path) { return readDatasetFile(path).instances; }

}  // namespace robogrid

#endif  // ROBOGRID_TASKGEN_HPP_
