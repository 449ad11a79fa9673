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


#include "robogrid/commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

namespace robogrid {
namespace {

GenOptions smallGen(TaskKind task, std::size_t n) {
  GenOptions o;
  o.task = task;
  o.n = n;
  o.style = Style::kSExpr;
  o.mode = LexiconMode::kNatural;
  o.params.maxDepth = 4;
  o.seed = 2026;
  return o;
}

EvalOptions perfect() {
  EvalOptions o;
  o.endpoint = "mock:perfect";
  return o;
}

TEST(GenCommandTest, DeterministicForSeed) {
  const GenResult a = runGen(smallGen(TaskKind::kJudgment, 12));
  const GenResult b = runGen(smallGen(TaskKind::kJudgment, 12));
  EXPECT_EQ(serializeDataset(a.instances, a.provenance), serializeDataset(b.instances, b.provenance));
  GenOptions other = smallGen(TaskKind::kJudgment, 12);
  other.seed = 2027;
  EXPECT_NE(serializeDataset(runGen(other).instances), serializeDataset(a.instances));
  EXPECT_EQ(a.provenance.at("seed"), 2026u);
  EXPECT_EQ(a.provenance.at("config").at("D"), 4);
}

TEST(GenCommandTest, RejectsEmptyAndBadParams) {
  EXPECT_THROW(runGen(smallGen(TaskKind::kGoalConditioned, 0)), InvalidParams);
  GenOptions deep = smallGen(TaskKind::kGoalConditioned, 2);
  deep.params.maxDepth = 21;
  EXPECT_THROW(runGen(deep), InvalidParams);
}

TEST(GenCommandTest, SummaryMentionsMix) {
  const std::string s = genSummary(runGen(smallGen(TaskKind::kJudgment, 8)).instances);
  EXPECT_NE(s.find("instances: 8"), std::string::npos);
}

TEST(ScoreCommandTest, OfflineScoringIsByteIdentical) {
  const GenResult g = runGen(smallGen(TaskKind::kInstructionToCode, 10));
  const std::string data = serializeDataset(g.instances, g.provenance);
  const RunArtifacts live = evaluateDataset(data, perfect());
  const RunArtifacts a = scoreResponses(data, live.responses);
  const RunArtifacts b = scoreResponses(data, live.responses);
  EXPECT_EQ(a.results, b.results);
  EXPECT_EQ(serializeResults(a.run), serializeResults(live.run));
}

TEST(ScoreCommandTest, TamperedResponseFailsSyntax) {
  const GenResult g = runGen(smallGen(TaskKind::kInstructionToCode, 4));
  const std::string data = serializeDataset(g.instances, g.provenance);
  const RunArtifacts live = evaluateDataset(data, perfect());
  CaptureFile cap = deserializeResponses(live.responses);
  cap.responses[1].response = "```\n(move forward\n```";
  std::string text;
  for (const auto& r : cap.responses) {
    text += Json{{"id", r.id}, {"model", cap.model}, {"prompt_sha256", r.promptSha256}, {"response", r.response}}.dump() +
            "\n";
  }
  const RunArtifacts scored = scoreResponses(data, text);
  EXPECT_EQ(scored.run.scored[0].record.failureStage(), FailureStage::kPass);
  EXPECT_EQ(scored.run.scored[1].record.failureStage(), FailureStage::kSyntax);
}

TEST(ScoreCommandTest, MissingResponseIsAnError) {
  const GenResult g = runGen(smallGen(TaskKind::kGoalConditioned, 2));
  EXPECT_THROW(scoreResponses(serializeDataset(g.instances), ""), std::runtime_error);
}

TEST(ReportCommandTest, ModelNameFromProvenance) {
  const GenResult g = runGen(smallGen(TaskKind::kGoalConditioned, 6));
  const RunArtifacts a = evaluateDataset(serializeDataset(g.instances), perfect());
  const Report r = reportFromResults({a.results});
  EXPECT_NE(r.markdown.find("mock-perfect"), std::string::npos);
  EXPECT_NE(r.csv.find("mock-perfect,goal,6,100.0,100.0"), std::string::npos);
  EXPECT_NE(r.longCsv.find("depth,4"), std::string::npos);
}

TEST(ReportCommandTest, EmptyInputIsAnError) {
  EXPECT_THROW(reportFromResults({}), EmptyInput);
  EXPECT_THROW(reportFromResults({""}), EmptyInput);
}

TEST(SweepCommandTest, DepthSweepWritesOneDatasetPerValue) {
  const auto dir = std::filesystem::temp_directory_path() / "robogrid_sweep_test";
  std::filesystem::remove_all(dir);
  SweepOptions o;
  o.axis = "depth";
  o.values = {"2", "3"};
  o.gen = smallGen(TaskKind::kInstructionToCode, 4);
  o.eval = perfect();
  o.outDir = dir.string();
  std::ostringstream log;
  const SweepOutcome out = runSweep(o, log);
  ASSERT_EQ(out.datasetPaths.size(), 2u);
  for (const auto& p : out.datasetPaths) EXPECT_TRUE(std::filesystem::exists(p));
  EXPECT_EQ(readDataset(out.datasetPaths[1])[0].params.maxDepth, 3);
  ASSERT_TRUE(out.longCsv);
  EXPECT_NE(out.longCsv->find("depth,2,svr,100.0"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "sweep.csv"));
  std::filesystem::remove_all(dir);
}

TEST(SweepCommandTest, BadValueWritesNothing) {
  const auto dir = std::filesystem::temp_directory_path() / "robogrid_sweep_bad";
  std::filesystem::remove_all(dir);
  SweepOptions o;
  o.axis = "depth";
  o.values = {"2", "99"};
  o.gen = smallGen(TaskKind::kGoalConditioned, 2);
  o.outDir = dir.string();
  std::ostringstream log;
  EXPECT_THROW(runSweep(o, log), InvalidParams);
  EXPECT_FALSE(std::filesystem::exists(dir));
  o.axis = "colour";
  EXPECT_THROW(runSweep(o, log), InvalidParams);
}

}  // namespace
}  // namespace robogrid
