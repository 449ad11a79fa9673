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

#include "robogrid/taskgen.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <map>

#include "test_grammars.hpp"

namespace robogrid {
namespace {

using R = TerminalRole;

std::string tempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("robogrid_taskgen_" + name)).string();
}

// Token-level edit distance, for the bounded-edit property.
std::size_t tokenEditDistance(const std::vector<Token>& a, const std::vector<Token>& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1].text == b[j - 1].text ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

TEST(PerturbTest, DeletingFinalBraceOfNestedIf) {
  const GrammarSpec g = testing::bindGrammar(Style::kBlock, {});
  const std::string code = "if holding key then {\n  if holding box then {\n    do turn left end\n  }\n}\n";
  ASSERT_TRUE(parsed(parse(code, g)));
  std::string cut = code;
  cut.erase(cut.rfind('}'), 1);
  EXPECT_FALSE(parsed(parse(cut, g)));
}

TEST(PerturbTest, UnknownKeywordRejected) {
  const GrammarSpec g = testing::bindGrammar(Style::kBlock, {});
  EXPECT_FALSE(parsed(parse("qzzrt 2 times { do turn left end }", g)));
  EXPECT_TRUE(parsed(parse("loop 2 times { do turn left end }", g)));
}

TEST(PerturbTest, EveryCategoryIsRejectedAndBounded) {
  for (Style s : kAllStyles) {
    for (LexiconMode m : kAllModes) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GenParams params;
        params.maxDepth = 5;
        params.seed = seed;
        const GeneratedInstance gen = generateInstance(s, m, params);
        Rng rng(seed);
        for (PerturbCategory c : kAllPerturbCategories) {
          const Perturbed p = perturbAs(gen.code, gen.grammar, c, rng);
          EXPECT_EQ(p.category, c);
          EXPECT_FALSE(parsed(parse(p.text, gen.grammar))) << perturbName(c) << "\n" << p.text;
          EXPECT_LE(tokenEditDistance(tokenize(gen.code, gen.grammar), tokenize(p.text, gen.grammar)), 3u);
        }
      }
    }
  }
}

TEST(PerturbTest, SwapInDepthFiveInstance) {
  GenParams params;
  params.maxDepth = 5;
  params.seed = 9;
  const GeneratedInstance gen = generateInstance(Style::kBlock, LexiconMode::kNatural, params);
  const auto toks = tokenize(gen.code, gen.grammar);
  for (const Token& t : toks) {
    if (!t.is(R::kLbr)) continue;
    std::string swapped = gen.code;
    swapped.replace(t.offset, t.text.size(), gen.grammar.token(R::kRbr));
    EXPECT_FALSE(parsed(parse(swapped, gen.grammar)));
  }
}

TEST(PerturbTest, KeywordCorruptUsesFreshToken) {
  GenParams params;
  params.seed = 4;
  const GeneratedInstance gen = generateInstance(Style::kBlock, LexiconMode::kAlien, params);
  Rng rng(1);
  const Perturbed p = perturbAs(gen.code, gen.grammar, PerturbCategory::kKeywordCorrupt, rng);
  bool sawFresh = false;
  for (const Token& t : tokenize(p.text, gen.grammar)) {
    if (t.kind == TokenKind::kUnknown) {
      EXPECT_TRUE(isAlienToken(t.text));
      sawFresh = true;
    }
  }
  EXPECT_TRUE(sawFresh);
}

TEST(PerturbTest, DegenerateInputFails) {
  // No loop or if: IllegalNesting has no site.
  const GrammarSpec g = testing::bindGrammar(Style::kBlock, {});
  Rng rng(1);
  EXPECT_THROW(perturbAs("do turn left end", g, PerturbCategory::kIllegalNesting, rng), PerturbationFailed);
}

TEST(JudgmentSetTest, BalancedAndVerified) {
  GenParams params;
  params.seed = 77;
  const auto set = makeJudgmentSet(200, Style::kBlock, LexiconMode::kAlien, params);
  ASSERT_EQ(set.size(), 200u);
  std::size_t valid = 0;
  std::map<PerturbCategory, std::size_t> mix;
  for (const TaskInstance& inst : set) {
    const GrammarSpec g = parseGrammarText(inst.grammarText);
    const bool ok = parsed(parse(*inst.candidate, g));
    EXPECT_EQ(ok, inst.goldLabel == Label::kValid) << inst.id;
    EXPECT_EQ(checkInstance(inst), "");
    if (*inst.goldLabel == Label::kValid) {
      ++valid;
      EXPECT_FALSE(inst.perturbCategory);
    } else {
      ++mix[*inst.perturbCategory];
    }
  }
  EXPECT_EQ(valid, 100u);
  for (PerturbCategory c : kAllPerturbCategories) EXPECT_EQ(mix[c], 25u);
}

TEST(JudgmentSetTest, SmallAndOdd) {
  GenParams params;
  const auto two = makeJudgmentSet(2, Style::kCStyle, LexiconMode::kNatural, params);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NE(two[0].goldLabel, two[1].goldLabel);
  EXPECT_THROW(makeJudgmentSet(3, Style::kCStyle, LexiconMode::kNatural, params), InvalidParams);
}

TEST(GoalTest, StartAndTargetRendering) {
  EXPECT_EQ(renderState(initialState()), "pos (0, 0), facing N, inventory empty");
  RobotState s;
  s.y = 46;
  s.facing = Facing::kW;
  EXPECT_EQ(renderState(s), "pos (0, 46), facing W, inventory empty");
  s.give(*ItemToken::fromString("key_2"));
  s.give(*ItemToken::fromString("key_2"));
  s.give(*ItemToken::fromString("box"));
  EXPECT_EQ(renderState(s), "pos (0, 46), facing W, inventory [key_2 x2, box]");
}

TEST(GoalTest, TargetIsReachedByGold) {
  GenParams params;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    params.seed = seed;
    const TaskInstance inst = makeGoalInstance(Style::kSExpr, LexiconMode::kNatural, params);
    EXPECT_EQ(inst.startState, initialState());
    EXPECT_EQ(checkInstance(inst), "");
  }
}

TEST(InstructionTest, ReferenceInstruction) {
  const Program p{{
      moveStmt(MoveDir::kBackward, mul(mul(lit(4), lit(4)), add(lit(4), lit(3)))),
      moveStmt(MoveDir::kForward, add(lit(5), lit(1))),
      loopStmt(add(mul(lit(4), lit(0)), lit(4)),
               {ifStmt(andOf(notOf(holding("key")), andOf(holding("box_0"), holding("cube"))),
                       {turnStmt(TurnDir::kLeft)}, Block{moveStmt(MoveDir::kBackward, lit(3))})}),
      ifStmt(notOf(andOf(holding("box_2"), holding("ball_0"))),
             {ifStmt(notOf(andOf(holding("box"), holding("key"))), {grabStmt("key_2")})},
             Block{turnStmt(TurnDir::kRight)}),
  }};
  EXPECT_EQ(renderInstruction(p),
            "Step 1: Move backward ((4 times 4) times (4 plus 3)) steps. Step 2: Move forward (5 plus 1) steps. "
            "Step 3: Repeat ((4 times 0) plus 4) times: [ If (not (holding key)) and ((holding box_0) and (holding "
            "cube)), then: [ Turn left. ] Otherwise: [ Move backward 3 steps. ] ] Step 4: If not ((holding box_2) and "
            "(holding ball_0)), then: [ If not ((holding box) and (holding key)), then: [ Grab the key_2. ] ] "
            "Otherwise: [ Turn right. ]");
}

TEST(InstructionTest, InjectiveOnSamples) {
  GenParams params;
  params.maxDepth = 3;
  params.exprDepth = 2;
  params.maxBlock = 2;
  params.maxLiteral = 2;
  Rng rng(8);
  std::map<std::string, std::string> seen;
  for (int i = 0; i < 3000; ++i) {
    const Program p = sampleProgram(params, rng).program;
    const auto [it, fresh] = seen.emplace(renderInstruction(p), canonSerialize(p));
    if (!fresh) ASSERT_EQ(it->second, canonSerialize(p)) << it->first;
  }
}

TEST(DatasetTest, RoundTripAllKinds) {
  GenParams params;
  params.seed = 3;
  std::vector<TaskInstance> all = makeJudgmentSet(40, Style::kBlock, LexiconMode::kAlien, params);
  for (TaskKind k : {TaskKind::kGoalConditioned, TaskKind::kInstructionToCode}) {
    for (auto& inst : makeTaskSet(k, 30, Style::kCStyle, LexiconMode::kNatural, params)) all.push_back(inst);
  }
  const std::string path = tempPath("roundtrip.jsonl");
  writeDataset(all, path);
  EXPECT_EQ(readDataset(path), all);
  const Json prov = {{"seed", 3}};
  writeDataset(all, path, prov);
  const DatasetFile f = readDatasetFile(path);
  EXPECT_EQ(f.instances, all);
  EXPECT_EQ(f.provenance, prov);
  std::filesystem::remove(path);
}

TEST(DatasetTest, EmptyListEmptyFile) {
  const std::string path = tempPath("empty.jsonl");
  writeDataset({}, path);
  EXPECT_EQ(std::filesystem::file_size(path), 0u);
  EXPECT_TRUE(readDataset(path).empty());
  std::filesystem::remove(path);
}

TEST(DatasetTest, OmitsAbsentFields) {
  GenParams params;
  const TaskInstance inst = makeTaskSet(TaskKind::kInstructionToCode, 1, Style::kBlock, LexiconMode::kAlien, params)[0];
  const Json j = toJson(inst);
  EXPECT_FALSE(j.contains("candidate"));
  EXPECT_FALSE(j.contains("target_state"));
  EXPECT_TRUE(j.contains("instruction"));
  EXPECT_TRUE(j.at("params").contains("B_max"));
}

TEST(DatasetTest, UnknownFieldNamed) {
  GenParams params;
  const TaskInstance inst = makeTaskSet(TaskKind::kGoalConditioned, 1, Style::kBlock, LexiconMode::kAlien, params)[0];
  Json j = toJson(inst);
  j["colour"] = "red";
  const std::string text = toJson(inst).dump() + "\n" + j.dump() + "\n";
  try {
    deserializeDataset(text);
    FAIL();
  } catch (const MalformedRecord& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
  }
}

TEST(DatasetTest, MalformedLinesCarryLineNumbers) {
  GenParams params;
  const TaskInstance inst = makeTaskSet(TaskKind::kGoalConditioned, 1, Style::kBlock, LexiconMode::kAlien, params)[0];
  const std::string good = toJson(inst).dump() + "\n";
  Json missing = toJson(inst);
  missing.erase("target_state");
  Json wrongKind = toJson(inst);
  wrongKind["candidate"] = "x";
  for (const std::string& bad : {std::string("{not json"), missing.dump(), wrongKind.dump()}) {
    try {
      deserializeDataset(good + good + bad + "\n");
      FAIL() << bad;
    } catch (const MalformedRecord& e) {
      EXPECT_EQ(e.line(), 3u);
    }
  }
}

TEST(TaskSetTest, Deterministic) {
  GenParams params;
  params.seed = 11;
  EXPECT_EQ(serializeDataset(makeTaskSet(TaskKind::kJudgment, 10, Style::kSExpr, LexiconMode::kAlien, params)),
            serializeDataset(makeTaskSet(TaskKind::kJudgment, 10, Style::kSExpr, LexiconMode::kAlien, params)));
}

}  // namespace
}  // namespace robogrid
