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


#include "robogrid/harness.hpp"

#include <gtest/gtest.h>
#include <stdlib.h>

#include <atomic>
#include <filesystem>
#include <thread>

#include "httplib.h"
#include "test_grammars.hpp"

namespace robogrid {
namespace {

// Loopback chat-completions endpoint. `status` picks the reply for the
// n-th request (0-based); 200 echoes the prompt back as the completion.
class FakeEndpoint {
 public:
  explicit FakeEndpoint(std::function<int(int)> status) : status_(std::move(status)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      const int n = requests_++;
      lastAuth_ = req.get_header_value("Authorization");
      const int code = status_(n);
      res.status = code;
      if (code != 200) return;
      const auto body = nlohmann::json::parse(req.body);
      const std::string prompt = body.at("messages").at(0).at("content").get<std::string>();
      const nlohmann::json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", prompt}}}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }
  int requests() const { return requests_; }
  std::string lastAuth() const { return lastAuth_; }

 private:
  httplib::Server server_;
  std::function<int(int)> status_;
  std::atomic<int> requests_{0};
  std::string lastAuth_;
  int port_ = 0;
  std::thread thread_;
};

EndpointConfig config(const std::string& url) {
  EndpointConfig c;
  c.baseUrl = url;
  c.modelId = "echo";
  c.authTokenEnvVar = "ROBOGRID_TEST_TOKEN";
  c.backoffMillis = 1;
  c.timeoutSeconds = 5;
  return c;
}

class HarnessEnv : public ::testing::Test {
 protected:
  void SetUp() override { setenv("ROBOGRID_TEST_TOKEN", "sekret", 1); }
  void TearDown() override { unsetenv("ROBOGRID_TEST_TOKEN"); }
};

std::vector<TaskInstance> smallDataset(TaskKind kind, std::size_t n) {
  GenParams params;
  params.maxDepth = 3;
  params.seed = 21;
  return makeTaskSet(kind, n, Style::kCStyle, LexiconMode::kAlien, params);
}

TEST(Sha256Test, KnownVector) {
  EXPECT_EQ(sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(PromptTest, JudgmentLayout) {
  const TaskInstance inst = smallDataset(TaskKind::kJudgment, 2)[1];
  const std::string p = buildPrompt(inst, {0, true});
  EXPECT_EQ(p.rfind("You are a strict syntax checker\n", 0), 0u);
  EXPECT_NE(p.find(inst.grammarText), std::string::npos);
  EXPECT_NE(p.find("Code to Check:\n" + *inst.candidate), std::string::npos);
  EXPECT_NE(p.find("output 'VALID'. Otherwise output 'INVALID'."), std::string::npos);
  EXPECT_EQ(p.find("Example"), std::string::npos);
  EXPECT_NE(buildPrompt(inst, {0, false}), p);
}

TEST(PromptTest, InstructionLayoutAndShots) {
  const TaskInstance inst = smallDataset(TaskKind::kInstructionToCode, 1)[0];
  const std::string p0 = buildPrompt(inst, {0, true});
  EXPECT_EQ(p0.rfind("You are a strict code generator.\nYou are given a NEW programming language definition (EBNF).\n", 0),
            0u);
  EXPECT_NE(p0.find(*inst.instruction), std::string::npos);
  EXPECT_NE(p0.find(prompts::kInstructionTask), std::string::npos);
  EXPECT_EQ(p0.find("Example"), std::string::npos);
  const std::string p2 = buildPrompt(inst, {2, true});
  EXPECT_NE(p2.find("Example 1:"), std::string::npos);
  EXPECT_NE(p2.find("Example 2:"), std::string::npos);
  EXPECT_EQ(p2.find("Example 3:"), std::string::npos);
  EXPECT_EQ(buildPrompt(inst, {2, true}), p2);
  EXPECT_THROW(buildPrompt(inst, {3, true}), InvalidParams);
}

TEST(ExtractCodeTest, LastFenceWins) {
  EXPECT_EQ(extractCode("first\n```\na;\n```\nthen\n```robo\nb;\nc;\n```\n"), "b;\nc;");
  EXPECT_EQ(extractCode("```x```"), "x");
}

TEST(ExtractCodeTest, TrailingCleanLines) {
  const GrammarSpec g = testing::bindGrammar(Style::kCStyle, {});
  EXPECT_EQ(extractCode("Here is the program:\nturn left;\nmove forward 2;", &g), "turn left;\nmove forward 2;");
  EXPECT_EQ(extractCode("no code at all?", &g), "no code at all?");
  EXPECT_EQ(extractCode("just prose"), "just prose");
}

TEST_F(HarnessEnv, EchoRoundTrip) {
  FakeEndpoint ep([](int) { return 200; });
  EXPECT_EQ(callModel(config(ep.url()), "hello grid"), "hello grid");
  EXPECT_EQ(ep.lastAuth(), "Bearer sekret");
}

TEST_F(HarnessEnv, RetriesThrottling) {
  FakeEndpoint ep([](int n) { return n < 2 ? 429 : 200; });
  EXPECT_EQ(callModel(config(ep.url()), "p"), "p");
  EXPECT_EQ(ep.requests(), 3);
}

TEST_F(HarnessEnv, GivesUpAfterRetries) {
  FakeEndpoint ep([](int) { return 503; });
  EndpointConfig c = config(ep.url());
  c.maxRetries = 2;
  EXPECT_THROW(callModel(c, "p"), RetriesExhausted);
  EXPECT_EQ(ep.requests(), 3);
}

TEST_F(HarnessEnv, RejectedCredentials) {
  FakeEndpoint ep([](int) { return 401; });
  EXPECT_THROW(callModel(config(ep.url()), "p"), AuthFailed);
  EXPECT_EQ(ep.requests(), 1);
}

TEST_F(HarnessEnv, MissingTokenFailsBeforeAnyRequest) {
  FakeEndpoint ep([](int) { return 200; });
  unsetenv("ROBOGRID_TEST_TOKEN");
  EXPECT_THROW(callModel(config(ep.url()), "p"), AuthFailed);
  EXPECT_EQ(ep.requests(), 0);
}

TEST_F(HarnessEnv, UnreachableEndpoint) {
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  EndpointConfig c = config("http://127.0.0.1:" + std::to_string(port) + "/v1");
  c.maxRetries = 1;
  c.timeoutSeconds = 1;
  EXPECT_THROW(callModel(c, "p"), EndpointUnreachable);
}

TEST_F(HarnessEnv, WarmCacheMakesNoCalls) {
  FakeEndpoint ep([](int) { return 200; });
  const auto dir = std::filesystem::temp_directory_path() / "robogrid_harness_cache";
  std::filesystem::remove_all(dir);
  const auto data = smallDataset(TaskKind::kGoalConditioned, 6);
  HttpChatModel model(config(ep.url()));
  RunOptions opts;
  opts.parallelism = 3;
  opts.cacheDir = dir.string();
  const EvalRun cold = runEvaluation(data, model, {}, opts);
  EXPECT_EQ(cold.modelCalls, 6u);
  EXPECT_EQ(ep.requests(), 6);
  const EvalRun warm = runEvaluation(data, model, {}, opts);
  EXPECT_EQ(warm.modelCalls, 0u);
  EXPECT_EQ(warm.cacheHits, 6u);
  EXPECT_EQ(ep.requests(), 6);
  EXPECT_EQ(serializeResults(cold), serializeResults(warm));
  std::filesystem::remove_all(dir);
}

TEST_F(HarnessEnv, PermissiveScoresErrorsAsSyntaxFailures) {
  FakeEndpoint ep([](int) { return 401; });
  const auto data = smallDataset(TaskKind::kInstructionToCode, 2);
  HttpChatModel model(config(ep.url()));
  EXPECT_THROW(runEvaluation(data, model, {}), AuthFailed);
  RunOptions opts;
  opts.permissive = true;
  const EvalRun run = runEvaluation(data, model, {}, opts);
  for (const auto& s : run.scored) {
    EXPECT_EQ(s.record.failureStage(), FailureStage::kSyntax);
    EXPECT_TRUE(s.error);
  }
}

TEST(CacheTest, KeyAndLayout) {
  EXPECT_NE(cacheKey("a", "bc"), cacheKey("ab", "c"));
  EXPECT_EQ(sanitizeModelId("org/model:v1"), "org_model_v1");
  EXPECT_EQ(sanitizeModelId(".."), "_..");
  const auto dir = std::filesystem::temp_directory_path() / "robogrid_cache_layout";
  std::filesystem::remove_all(dir);
  ResponseCache cache(dir);
  EXPECT_FALSE(cache.get("m", "p"));
  cache.put("m", "p", "answer");
  EXPECT_EQ(cache.get("m", "p"), "answer");
  EXPECT_EQ(cache.pathFor("m", "p").parent_path().filename(), "m");
  std::filesystem::remove_all(dir);
}

TEST(MockModelTest, PerfectScoresEverything) {
  PerfectMockModel model;
  for (TaskKind k : {TaskKind::kJudgment, TaskKind::kGoalConditioned, TaskKind::kInstructionToCode}) {
    const EvalRun run = runEvaluation(smallDataset(k, 10), model, {});
    for (const auto& s : run.scored) EXPECT_EQ(s.record.failureStage(), FailureStage::kPass) << s.record.instanceId();
  }
}

TEST(MockModelTest, FlatteningLosesOnlyStructure) {
  FlatteningMockModel model;
  GenParams params;
  params.seed = 5;
  params.exprDepth = 2;
  const auto data = makeTaskSet(TaskKind::kInstructionToCode, 20, Style::kBlock, LexiconMode::kNatural, params);
  const Metrics m = aggregate(runEvaluation(data, model, {}).records());
  EXPECT_EQ(m.svr, 100.0);
  EXPECT_EQ(m.ber, 100.0);
  EXPECT_LT(*m.scr, *m.ber);
}

TEST(ArtifactTest, ResultsAndResponsesRoundTrip) {
  PerfectMockModel model;
  const auto data = smallDataset(TaskKind::kInstructionToCode, 4);
  const EvalRun run = runEvaluation(data, model, {});
  const ResultsFile rf = deserializeResults(serializeResults(run, Json{{"model", run.model}}));
  ASSERT_EQ(rf.scored.size(), 4u);
  EXPECT_EQ(rf.scored[2].record, run.scored[2].record);
  EXPECT_EQ(rf.provenance->at("model"), "mock-perfect");
  const CaptureFile cf = deserializeResponses(serializeResponses(run));
  EXPECT_EQ(cf.model, "mock-perfect");
  const EvalRun again = scoreCapture(data, cf.responses, cf.model);
  EXPECT_EQ(serializeResults(again), serializeResults(run));
}

}  // namespace
}  // namespace robogrid
