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

// Constrained random walk producing (grammar, code, AST) triples.

#ifndef ROBOGRID_SAMPLER_HPP_
#define ROBOGRID_SAMPLER_HPP_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "robogrid/ast.hpp"
#include "robogrid/codec.hpp"
#include "robogrid/grammar.hpp"
#include "robogrid/rng.hpp"
#include "robogrid/world.hpp"

namespace robogrid {

struct NodeWeights {
  double act = 0.6;
  double loop = 0.2;
  double cond = 0.2;

  friend bool operator==(const NodeWeights&, const NodeWeights&) = default;
};

struct GenParams {
  int maxDepth = 10;       // D
  double elseProb = 0.5;   // p
  int exprDepth = 2;       // E
  int maxBlock = 3;        // B_max
  std::uint64_t seed = 0;
  NodeWeights weights;
  int maxLiteral = 5;

  friend bool operator==(const GenParams&, const GenParams&) = default;
};

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxSupportedDepth = 20;

inline void validate(const GenParams& p) {
  if (p.maxDepth < 1 || p.maxDepth > kMaxSupportedDepth) {
    throw InvalidParams("depth D must be in [1, " + std::to_string(kMaxSupportedDepth) + "], got " +
                        std::to_string(p.maxDepth));
  }
  if (!(p.elseProb >= 0.0 && p.elseProb <= 1.0)) {
    throw InvalidParams("else probability p must be in [0, 1], got " + std::to_string(p.elseProb));
  }
  if (p.exprDepth < 1 || p.exprDepth > 3) {
    throw InvalidParams("expression depth E must be 1, 2 or 3, got " + std::to_string(p.exprDepth));
  }
  if (p.maxBlock < 1) throw InvalidParams("B_max must be >= 1, got " + std::to_string(p.maxBlock));
  if (p.maxLiteral < 0) throw InvalidParams("max literal must be >= 0");
  const NodeWeights& w = p.weights;
  if (w.act < 0 || w.loop < 0 || w.cond < 0 || !(w.act + w.loop + w.cond > 0)) {
    throw InvalidParams("node weights must be non-negative with a positive sum");
  }
  if (w.act <= 0) throw InvalidParams("the Act weight must be positive so leaves are reachable");
}

class ResampleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Leaves and expressions

inline ItemToken sampleItem(Rng& rng) {
  ItemToken t;
  t.base = kAllItemBases[rng.index(kAllItemBases.size())];
  const auto s = rng.uniformInt(-1, kMaxItemSuffix);
  if (s >= 0) t.suffix = static_cast<int>(s);
  return t;
}

// Exact depth `depth`; one child always carries depth-1, the other is drawn
// uniformly from [1, depth-1].
inline ArithExpr sampleArith(int depth, const GenParams& params, Rng& rng) {
  if (depth <= 1) return lit(rng.uniformInt(0, params.maxLiteral));
  const ArithOp op = rng.bernoulli(0.5) ? ArithOp::kAdd : ArithOp::kMul;
  const bool deepLeft = rng.bernoulli(0.5);
  const int other = static_cast<int>(rng.uniformInt(1, depth - 1));
  ArithExpr l = sampleArith(deepLeft ? depth - 1 : other, params, rng);
  ArithExpr r = sampleArith(deepLeft ? other : depth - 1, params, rng);
  return ArithExpr{BinaryArith{op, std::move(l), std::move(r)}};
}

inline BoolExpr sampleBool(int depth, const GenParams& params, Rng& rng) {
  if (depth <= 1) return holding(sampleItem(rng));
  switch (rng.uniformInt(0, 2)) {
    case 0: return notOf(sampleBool(depth - 1, params, rng));
    default: {
      const BoolOp op = rng.bernoulli(0.5) ? BoolOp::kAnd : BoolOp::kOr;
      const bool deepLeft = rng.bernoulli(0.5);
      const int other = static_cast<int>(rng.uniformInt(1, depth - 1));
      BoolExpr l = sampleBool(deepLeft ? depth - 1 : other, params, rng);
      BoolExpr r = sampleBool(deepLeft ? other : depth - 1, params, rng);
      return BoolExpr{BinaryBool{op, std::move(l), std::move(r)}};
    }
  }
}

inline ArithExpr sampleExpr(const GenParams& params, Rng& rng) { return sampleArith(params.exprDepth, params, rng); }
inline BoolExpr sampleCond(const GenParams& params, Rng& rng) { return sampleBool(params.exprDepth, params, rng); }

inline Action sampleAction(const GenParams& params, Rng& rng) {
  switch (rng.uniformInt(0, 2)) {
    case 0: return Move{rng.bernoulli(0.5) ? MoveDir::kForward : MoveDir::kBackward, sampleExpr(params, rng), false};
    case 1: return Turn{rng.bernoulli(0.5) ? TurnDir::kLeft : TurnDir::kRight};
    default: return Grab{sampleItem(rng)};
  }
}

// ---------------------------------------------------------------------------
// Statements

inline Block sampleBlock(int depth, const GenParams& params, Rng& rng);

inline Stmt sampleNode(int depth, const GenParams& params, Rng& rng) {
  if (depth >= params.maxDepth) return act(sampleAction(params, rng));
  const std::array<double, 3> w = {params.weights.act, params.weights.loop, params.weights.cond};
  switch (rng.categorical(w)) {
    case 0: return act(sampleAction(params, rng));
    case 1: {
      ArithExpr e = sampleExpr(params, rng);
      Block body = sampleBlock(depth + 1, params, rng);
      return loopStmt(std::move(e), std::move(body));
    }
    default: {
      BoolExpr c = sampleCond(params, rng);
      Block thenBlock = sampleBlock(depth + 1, params, rng);
      std::optional<Block> elseBlock;
      if (rng.bernoulli(params.elseProb)) elseBlock = sampleBlock(depth + 1, params, rng);
      return ifStmt(std::move(c), std::move(thenBlock), std::move(elseBlock));
    }
  }
}

inline Block sampleBlock(int depth, const GenParams& params, Rng& rng) {
  const auto n = rng.uniformInt(1, params.maxBlock);
  Block b;
  b.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) b.push_back(sampleNode(depth, params, rng));
  return b;
}

// A control node at `depth` whose first block holds, at a random index, the
// next spine node. The chain ends at maxDepth-1, so the program's control
// depth is exactly maxDepth. `positions` receives the chosen indices,
// outermost first (the top-level index is recorded by the caller).
inline Stmt sampleSpine(int depth, const GenParams& params, Rng& rng, std::vector<int>& positions) {
  const bool isLoop = rng.bernoulli(0.5);
  ArithExpr count;
  BoolExpr cond;
  if (isLoop) {
    count = sampleExpr(params, rng);
  } else {
    cond = sampleCond(params, rng);
  }
  Block inner = sampleBlock(depth + 1, params, rng);
  if (depth + 1 < params.maxDepth) {
    const auto at = rng.index(inner.size());
    positions.push_back(static_cast<int>(at));
    inner[at] = sampleSpine(depth + 1, params, rng, positions);
  }
  if (isLoop) return loopStmt(std::move(count), std::move(inner));
  std::optional<Block> elseBlock;
  if (rng.bernoulli(params.elseProb)) elseBlock = sampleBlock(depth + 1, params, rng);
  return ifStmt(std::move(cond), std::move(inner), std::move(elseBlock));
}

struct SampledProgram {
  Program program;
  std::vector<int> spine;  // block index of each spine node, outermost first
};

inline SampledProgram sampleProgram(const GenParams& params, Rng& rng) {
  SampledProgram out;
  out.program.body = sampleBlock(0, params, rng);
  const auto at = rng.index(out.program.body.size());
  out.spine.push_back(static_cast<int>(at));
  out.program.body[at] = sampleSpine(0, params, rng, out.spine);
  return out;
}

// ---------------------------------------------------------------------------
// Instances

struct GeneratedInstance {
  GrammarSpec grammar;
  std::string code;
  Program program;
  std::vector<int> spine;
  int attempts = 1;
};

inline constexpr int kMaxResamples = 100;

// Ground truth must finish within half the default step budget so that a
// faithful prediction never runs out of budget.
inline constexpr std::uint64_t kGroundTruthStepLimit = kDefaultStepBudget / 2;

inline bool withinExecutionBudget(const Program& p) {
  return std::holds_alternative<Final>(execProgram(p, initialState(), kGroundTruthStepLimit));
}

inline GeneratedInstance generateInstance(Style style, LexiconMode mode, const GenParams& params) {
  validate(params);
  GeneratedInstance out;
  out.grammar = buildGrammar(style, mode, deriveSeed(params.seed, "grammar"));
  Rng rng(deriveSeed(params.seed, "program"));
  for (int attempt = 1; attempt <= kMaxResamples; ++attempt) {
    SampledProgram s = sampleProgram(params, rng);
    if (!withinExecutionBudget(s.program)) continue;
    out.program = std::move(s.program);
    out.spine = std::move(s.spine);
    out.code = linearize(out.program, out.grammar);
    out.attempts = attempt;
    return out;
  }
  throw ResampleLimitExceeded("no program within the execution budget after " + std::to_string(kMaxResamples) +
                              " samples (D=" + std::to_string(params.maxDepth) +
                              ", E=" + std::to_string(params.exprDepth) + ")");
}

}  // namespace robogrid

#endif  // ROBOGRID_SAMPLER_HPP_
