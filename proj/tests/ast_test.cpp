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

#include "robogrid/ast.hpp"

#include <gtest/gtest.h>

#include "robogrid/sampler.hpp"

namespace robogrid {
namespace {

Program prog(Block b) { return Program{std::move(b)}; }

TEST(ItemTokenTest, RendersAndParses) {
  const auto k2 = ItemToken::fromString("key_2");
  ASSERT_TRUE(k2);
  EXPECT_EQ(k2->str(), "key_2");
  EXPECT_EQ(ItemToken::fromString("cube")->str(), "cube");
  EXPECT_FALSE(ItemToken::fromString("key_5"));
  EXPECT_FALSE(ItemToken::fromString("lamp"));
  EXPECT_FALSE(ItemToken::fromString("key_"));
}

TEST(ControlDepthTest, LeafAndSingleLoop) {
  EXPECT_EQ(controlDepth(turnStmt(TurnDir::kLeft)), 0);
  EXPECT_EQ(controlDepth(loopStmt(lit(2), {turnStmt(TurnDir::kLeft)})), 1);
}

// Six nested loops around an if, the visible chain of the deep sample.
TEST(ControlDepthTest, LoopTowerAroundIf) {
  Stmt inner = ifStmt(orOf(orOf(holding("ball_4"), holding("item_1")), notOf(holding("key_2"))),
                      {moveStmt(MoveDir::kForward, lit(5))});
  inner = loopStmt(lit(1), {std::move(inner)});
  inner = loopStmt(lit(0), {std::move(inner)});
  inner = loopStmt(mul(mul(lit(2), lit(1)), lit(1)), {std::move(inner)});
  inner = loopStmt(lit(4), {std::move(inner)});
  inner = loopStmt(lit(1), {std::move(inner)});
  inner = loopStmt(add(add(lit(0), lit(4)), add(lit(0), lit(1))), {std::move(inner)});
  Program p = prog({loopStmt(add(mul(lit(1), lit(1)), add(lit(0), lit(0))), {moveStmt(MoveDir::kForward, lit(5))}),
                    moveStmt(MoveDir::kForward, lit(5)), std::move(inner)});
  EXPECT_EQ(controlDepth(p), 7);
}

TEST(ControlDepthTest, IfCountsBothBranches) {
  Stmt s = ifStmt(holding("key"), {turnStmt(TurnDir::kLeft)},
                  Block{loopStmt(lit(1), {loopStmt(lit(1), {turnStmt(TurnDir::kRight)})})});
  EXPECT_EQ(controlDepth(s), 3);
}

TEST(ExprDepthTest, Examples) {
  EXPECT_EQ(exprDepth(lit(3)), 1);
  EXPECT_EQ(exprDepth(add(lit(3), lit(4))), 2);
  EXPECT_EQ(exprDepth(add(mul(lit(4), lit(4)), add(lit(4), lit(3)))), 3);
  EXPECT_EQ(exprDepth(holding("key")), 1);
  const BoolExpr e = andOf(holding("box"), orOf(holding("key"), holding("cube")));
  EXPECT_EQ(exprDepth(notOf(e)), exprDepth(e) + 1);
}

TEST(AstEqualTest, FlattenedCountIsNotEqual) {
  const Program gold = prog({loopStmt(add(mul(lit(4), lit(4)), lit(3)), {turnStmt(TurnDir::kLeft)})});
  const Program flat = prog({loopStmt(lit(19), {turnStmt(TurnDir::kLeft)})});
  EXPECT_FALSE(astEqual(gold, flat));
  EXPECT_TRUE(astEqual(gold, gold));
}

TEST(AstEqualTest, DuplicatedTrailingIfIsNotEqual) {
  Block b = {turnStmt(TurnDir::kLeft), ifStmt(holding("key"), {grabStmt("box")})};
  const Program a = prog(b);
  b.push_back(ifStmt(holding("key"), {grabStmt("box")}));
  EXPECT_FALSE(astEqual(a, prog(b)));
}

TEST(AstEqualTest, OmittedMoveCountMatchesExplicitOne) {
  const Program a = prog({act(Move{MoveDir::kForward, lit(1), true})});
  const Program b = prog({moveStmt(MoveDir::kForward, lit(1))});
  EXPECT_TRUE(astEqual(a, b));
}

TEST(AstEqualTest, BlockOrderMatters) {
  EXPECT_FALSE(astEqual(prog({turnStmt(TurnDir::kLeft), turnStmt(TurnDir::kRight)}),
                        prog({turnStmt(TurnDir::kRight), turnStmt(TurnDir::kLeft)})));
}

TEST(CanonTest, LeafForms) {
  EXPECT_EQ(canonSerialize(Action{Turn{TurnDir::kLeft}}), "(turn L)");
  const Program p = prog({turnStmt(TurnDir::kLeft)});
  EXPECT_EQ(canonSerialize(p), "(prog (act (turn L)))");
  EXPECT_TRUE(astEqual(canonParse(canonSerialize(p)), p));
}

TEST(CanonTest, LoopRoundTrip) {
  const Program p = prog({loopStmt(add(lit(3), lit(4)), {moveStmt(MoveDir::kForward, lit(2))})});
  EXPECT_EQ(canonSerialize(p), "(prog (loop (add (int 3) (int 4)) ((act (move F (int 2))))))");
  EXPECT_TRUE(astEqual(canonParse(canonSerialize(p)), p));
}

TEST(CanonTest, IfWithElseRoundTrip) {
  const Program p = prog({ifStmt(notOf(andOf(holding("box_2"), holding("ball_0"))), {grabStmt("key_2")},
                                 Block{turnStmt(TurnDir::kRight)})});
  EXPECT_EQ(canonSerialize(p),
            "(prog (if (not (and (holding box_2) (holding ball_0))) ((act (grab key_2))) ((act (turn R)))))");
  EXPECT_TRUE(astEqual(canonParse(canonSerialize(p)), p));
}

TEST(CanonTest, RejectsMalformedWithOffset) {
  for (const char* bad : {"", "(prog)", "(prog (act (turn X)))", "(prog (act (turn L))", "(prog (act (turn L))) x",
                          "(prog (act (grab lamp)))"}) {
    EXPECT_THROW(canonParse(bad), CanonParseError) << bad;
  }
  try {
    canonParse("(prog (act (turn X)))");
    FAIL();
  } catch (const CanonParseError& e) {
    EXPECT_GT(e.offset(), 0u);
  }
}

TEST(CanonTest, SampledProgramsRoundTrip) {
  GenParams params;
  params.maxDepth = 10;
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    const Program p = sampleProgram(params, rng).program;
    const Program back = canonParse(canonSerialize(p));
    ASSERT_TRUE(astEqual(back, p)) << i;
    ASSERT_TRUE(astEqual(p, back));
  }
}

TEST(ControlDepthTest, MonotoneOverSamples) {
  GenParams params;
  params.maxDepth = 6;
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Program p = sampleProgram(params, rng).program;
    for (const Stmt& s : p.body) {
      if (const auto* l = std::get_if<Loop>(&s.node)) {
        EXPECT_GE(controlDepth(s), 1 + controlDepth(l->body));
      }
    }
  }
}

}  // namespace
}  // namespace robogrid
