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

// Model-facing side of an evaluation run: prompt construction, a chat
// completion client with retries, a content-addressed response cache,
// answer extraction, and bounded-parallel scoring.

#ifndef ROBOGRID_HARNESS_HPP_
#define ROBOGRID_HARNESS_HPP_

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "robogrid/evaluator.hpp"
#include "robogrid/prompt_templates.hpp"
#include "robogrid/taskgen.hpp"

namespace robogrid {

// ---------------------------------------------------------------------------
// Hashing

inline std::string sha256Hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Configuration

struct EndpointConfig {
  std::string baseUrl;  // e.g. "https://api.example.com/v1"
  std::string modelId;
  std::string authTokenEnvVar = "ROBOGRID_API_KEY";
  double temperature = 0.0;
  int maxTokens = 4096;
  int timeoutSeconds = 120;
  int maxRetries = 3;
  int parallelism = 4;
  int backoffMillis = 500;  // first retry delay; doubles each attempt
};

struct PromptConfig {
  int shots = 0;
  bool cot = true;
};

inline void validate(const PromptConfig& pc) {
  if (pc.shots != 0 && pc.shots != 1 && pc.shots != 2 && pc.shots != 5) {
    throw InvalidParams("shots must be one of 0, 1, 2, 5, got " + std::to_string(pc.shots));
  }
}

// ---------------------------------------------------------------------------
// Prompts

namespace detail {

// A worked example in the instance's own language. Seeds are derived under
// a "demo" tag, so they never coincide with the per-index test seeds.
inline TaskInstance demonstration(const TaskInstance& inst, const GrammarSpec& g, int k) {
  GenParams p = inst.params;
  p.seed = deriveSeed(inst.params.seed, "demo", static_cast<std::uint64_t>(k));
  Rng rng(p.seed);
  Program prog;
  for (int attempt = 0;; ++attempt) {
    prog = sampleProgram(p, rng).program;
    if (withinExecutionBudget(prog)) break;
    if (attempt + 1 >= kMaxResamples) throw ResampleLimitExceeded("no demonstration program within budget");
  }
  TaskInstance d;
  d.kind = inst.kind;
  d.goldCode = linearize(prog, g);
  const RobotState s0 = inst.startState.value_or(initialState());
  switch (inst.kind) {
    case TaskKind::kJudgment:
      d.goldLabel = k % 2 == 0 ? Label::kValid : Label::kInvalid;
      if (*d.goldLabel == Label::kValid) {
        d.candidate = d.goldCode;
      } else {
        d.candidate = perturb(*d.goldCode, g, rng).text;
      }
      break;
    case TaskKind::kGoalConditioned: {
      d.startState = s0;
      d.targetState = std::get<Final>(execProgram(prog, s0)).state;
      break;
    }
    case TaskKind::kInstructionToCode:
      d.instruction = renderInstruction(prog);
      break;
  }
  return d;
}

inline std::string taskInput(const TaskInstance& inst) {
  switch (inst.kind) {
    case TaskKind::kJudgment:
      return std::string(prompts::kCodeToCheckLabel) + inst.candidate.value_or("") + "\n";
    case TaskKind::kGoalConditioned:
      return "Start state: " + renderState(inst.startState.value_or(initialState())) +
             ". Target final state: " + renderState(inst.targetState.value_or(initialState())) + ".\n";
    case TaskKind::kInstructionToCode:
      return std::string(prompts::kInstructionsLabel) + inst.instruction.value_or("") + "\n";
  }
  return {};
}

inline std::string goldAnswer(const TaskInstance& inst) {
  if (inst.kind == TaskKind::kJudgment) return std::string(labelName(inst.goldLabel.value_or(Label::kValid)));
  return "```\n" + inst.goldCode.value_or("") + "\n```";
}

}  // namespace detail

// Pure function of (instance, config).
inline std::string buildPrompt(const TaskInstance& inst, const PromptConfig& pc) {
  validate(pc);
  const bool judgment = inst.kind == TaskKind::kJudgment;
  std::string out(judgment ? prompts::kCheckerHeader : prompts::kGeneratorHeader);
  out += prompts::kEbnfLabel;
  out += inst.grammarText;
  out += "\n";

  if (pc.shots > 0) {
    const GrammarSpec g = parseGrammarText(inst.grammarText);
    out += "\n";
    out += prompts::kExamplesLabel;
    for (int k = 0; k < pc.shots; ++k) {
      const TaskInstance d = detail::demonstration(inst, g, k);
      out += "\nExample " + std::to_string(k + 1) + ":\n" + detail::taskInput(d) + "Answer:\n" + detail::goldAnswer(d) + "\n";
    }
  }

  out += "\n";
  out += detail::taskInput(inst);
  out += "\n";
  switch (inst.kind) {
    case TaskKind::kJudgment: out += prompts::kJudgmentTask; break;
    case TaskKind::kGoalConditioned: out += prompts::kGoalTask; break;
    case TaskKind::kInstructionToCode: out += prompts::kInstructionTask; break;
  }
  out += "\n";
  if (judgment) {
    out += pc.cot ? prompts::kJudgmentCot : prompts::kJudgmentDirect;
  } else {
    out += pc.cot ? prompts::kGenerationCot : prompts::kGenerationDirect;
  }
  out += "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Answer extraction

// Last fenced block; else the trailing run of lines that tokenize cleanly
// under `g`; else the whole text.
inline std::string extractCode(const std::string& raw, const GrammarSpec* g = nullptr) {
  std::vector<std::size_t> fences;
  for (std::size_t pos = raw.find("```"); pos != std::string::npos; pos = raw.find("```", pos + 3)) {
    fences.push_back(pos);
  }
  if (fences.size() >= 2) {
    const std::size_t close = fences[fences.size() - 1 - (fences.size() % 2)];
    const std::size_t open = fences[fences.size() - 2 - (fences.size() % 2)];
    std::size_t start = raw.find('\n', open);
    if (start == std::string::npos || start > close) start = open + 3;
    else ++start;
    std::string body = raw.substr(start, close - start);
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
    return body;
  }
  if (g) {
    std::vector<std::string> lines;
    std::istringstream in(raw);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    std::size_t first = lines.size();
    while (first > 0) {
      const auto toks = tokenize(lines[first - 1], *g);
      bool clean = true;
      for (const Token& t : toks) clean = clean && t.kind != TokenKind::kUnknown;
      if (!clean) break;
      --first;
    }
    std::string out;
    for (std::size_t i = first; i < lines.size(); ++i) out += lines[i] + (i + 1 < lines.size() ? "\n" : "");
    if (out.find_first_not_of(" \t\r\n") != std::string::npos) return out;
  }
  return raw;
}

// ---------------------------------------------------------------------------
// Endpoint client

class EndpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class EndpointUnreachable : public EndpointError {
 public:
  using EndpointError::EndpointError;
};
class AuthFailed : public EndpointError {
 public:
  using EndpointError::EndpointError;
};
class RetriesExhausted : public EndpointError {
 public:
  using EndpointError::EndpointError;
};

namespace detail {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // without trailing slash
};

inline SplitUrl splitUrl(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw EndpointUnreachable("endpoint URL lacks a scheme: " + url);
  const auto slash = url.find('/', scheme + 3);
  SplitUrl s{url.substr(0, slash), slash == std::string::npos ? "" : url.substr(slash)};
  while (!s.path.empty() && s.path.back() == '/') s.path.pop_back();
  return s;
}

}  // namespace detail

// One chat-completion request with retries on transport errors, 5xx and 429.
inline std::string callModel(const EndpointConfig& cfg, const std::string& prompt) {
  const char* token = cfg.authTokenEnvVar.empty() ? nullptr : std::getenv(cfg.authTokenEnvVar.c_str());
  if (!token || !*token) throw AuthFailed("auth token variable '" + cfg.authTokenEnvVar + "' is unset");

  const detail::SplitUrl url = detail::splitUrl(cfg.baseUrl);
  httplib::Client client(url.origin);
  client.set_connection_timeout(cfg.timeoutSeconds, 0);
  client.set_read_timeout(cfg.timeoutSeconds, 0);
  client.set_write_timeout(cfg.timeoutSeconds, 0);
  client.set_bearer_token_auth(token);

  const nlohmann::json body = {
      {"model", cfg.modelId},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
      {"temperature", cfg.temperature},
      {"max_tokens", cfg.maxTokens},
  };
  const std::string payload = body.dump();
  const std::string path = url.path + "/chat/completions";

  bool sawResponse = false;
  std::string lastError;
  for (int attempt = 0; attempt <= cfg.maxRetries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(static_cast<long long>(cfg.backoffMillis) << (attempt - 1)));
    }
    auto res = client.Post(path, payload, "application/json");
    if (!res) {
      lastError = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    sawResponse = true;
    if (res->status == 401 || res->status == 403) {
      throw AuthFailed("endpoint rejected credentials (HTTP " + std::to_string(res->status) + ")");
    }
    if (res->status == 429 || res->status >= 500) {
      lastError = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) throw EndpointError("unexpected HTTP " + std::to_string(res->status) + ": " + res->body);
    try {
      const auto j = nlohmann::json::parse(res->body);
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw EndpointError(std::string("malformed completion response: ") + e.what());
    }
  }
  if (!sawResponse) throw EndpointUnreachable("endpoint " + cfg.baseUrl + " unreachable: " + lastError);
  throw RetriesExhausted("gave up after " + std::to_string(cfg.maxRetries + 1) + " attempts: " + lastError);
}

// ---------------------------------------------------------------------------
// Models

class ChatModel {
 public:
  virtual ~ChatModel() = default;
  virtual std::string id() const = 0;
  // Mocks read the instance; real endpoints only see the prompt.
  virtual std::string complete(const std::string& prompt, const TaskInstance& inst) = 0;
};

class HttpChatModel : public ChatModel {
 public:
  explicit HttpChatModel(EndpointConfig cfg) : cfg_(std::move(cfg)) {}
  std::string id() const override { return cfg_.modelId; }
  std::string complete(const std::string& prompt, const TaskInstance&) override { return callModel(cfg_, prompt); }

 private:
  EndpointConfig cfg_;
};

// Answers every instance correctly.
class PerfectMockModel : public ChatModel {
 public:
  std::string id() const override { return "mock-perfect"; }
  std::string complete(const std::string&, const TaskInstance& inst) override {
    if (inst.kind == TaskKind::kJudgment) {
      return "The code was checked against every rule.\n" + std::string(labelName(*inst.goldLabel));
    }
    return "```\n" + inst.goldCode.value_or("") + "\n```";
  }
};

// Replaces every arithmetic expression with its value: right behavior,
// wrong structure whenever the gold program has a compound expression.
inline void flattenArith(Block& block) {
  for (Stmt& s : block) {
    std::visit(Overloaded{
                   [](ActionStmt& a) {
                     if (auto* m = std::get_if<Move>(&a.action)) m->steps = lit(evalArith(m->steps));
                   },
                   [](Loop& l) {
                     l.count = lit(evalArith(l.count));
                     flattenArith(l.body);
                   },
                   [](If& i) {
                     flattenArith(i.thenBlock);
                     if (i.elseBlock) flattenArith(*i.elseBlock);
                   },
               },
               s.node);
  }
}

class FlatteningMockModel : public ChatModel {
 public:
  std::string id() const override { return "mock-flatten"; }
  std::string complete(const std::string&, const TaskInstance& inst) override {
    if (inst.kind == TaskKind::kJudgment) return std::string(labelName(*inst.goldLabel));
    const GrammarSpec g = parseGrammarText(inst.grammarText);
    Program p = canonParse(inst.goldAst.value_or(""));
    flattenArith(p.body);
    return "```\n" + linearize(p, g) + "\n```";
  }
};

// ---------------------------------------------------------------------------
// Cache: cache/<modelId>/<sha256(modelId, prompt)>.txt

inline std::string sanitizeModelId(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                      c == '_' || c == '.';
    out += keep ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

inline std::string cacheKey(std::string_view modelId, std::string_view prompt) {
  std::string material(modelId);
  material += '\0';
  material += prompt;
  return sha256Hex(material);
}

class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path root) : root_(std::move(root)) {}

  std::filesystem::path pathFor(std::string_view modelId, std::string_view prompt) const {
    return root_ / sanitizeModelId(modelId) / (cacheKey(modelId, prompt) + ".txt");
  }

  std::optional<std::string> get(std::string_view modelId, std::string_view prompt) const {
    const auto p = pathFor(modelId, prompt);
    std::error_code ec;
    if (!std::filesystem::is_regular_file(p, ec)) return std::nullopt;
    return readTextFile(p.string());
  }

  // Write to a unique temp name, then rename over the target.
  void put(std::string_view modelId, std::string_view prompt, std::string_view response) const {
    const auto p = pathFor(modelId, prompt);
    std::filesystem::create_directories(p.parent_path());
    static std::atomic<std::uint64_t> counter{0};
    const auto tmp = p.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter.fetch_add(1));
    writeTextFile(tmp, response);
    std::filesystem::rename(tmp, p);
  }

 private:
  std::filesystem::path root_;
};

// ---------------------------------------------------------------------------
// Runs

struct RunOptions {
  int parallelism = 4;
  bool permissive = false;            // endpoint errors score as syntax failures
  std::optional<std::string> cacheDir;
};

struct ResponseCapture {
  std::string id;
  std::string promptSha256;
  std::string response;
};

struct ScoredInstance {
  EvalRecord record;
  int depth = 0;
  std::string promptSha256;
  std::string responseSha256;
  std::optional<std::string> error;
};

struct EvalRun {
  std::string model;
  std::vector<ScoredInstance> scored;
  std::vector<ResponseCapture> responses;
  std::size_t modelCalls = 0;
  std::size_t cacheHits = 0;

  std::vector<EvalRecord> records() const {
    std::vector<EvalRecord> out;
    out.reserve(scored.size());
    for (const auto& s : scored) out.push_back(s.record);
    return out;
  }
};

// Scores one captured response.
inline ScoredInstance scoreResponse(const TaskInstance& inst, const std::string& promptSha, const std::string& response) {
  std::string code;
  if (inst.kind != TaskKind::kJudgment) {
    const GrammarSpec g = parseGrammarText(inst.grammarText);
    code = extractCode(response, &g);
  }
  EvalRecord rec = scoreInstance(inst, response, code);
  return ScoredInstance{std::move(rec), inst.params.maxDepth, promptSha, sha256Hex(response), std::nullopt};
}

namespace detail {

// Runs fn(i) for i in [0, n) on at most `parallelism` threads. The first
// exception is rethrown after all workers stop.
inline void parallelFor(std::size_t n, int parallelism, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex errorMu;
  auto worker = [&] {
    for (std::size_t i = next++; i < n && !failed; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(errorMu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(parallelism, 1)), std::max<std::size_t>(n, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

inline EvalRun runEvaluation(const std::vector<TaskInstance>& dataset, ChatModel& model, const PromptConfig& pc,
                             const RunOptions& opts = {}) {
  validate(pc);
  std::optional<ResponseCache> cache;
  if (opts.cacheDir) cache.emplace(*opts.cacheDir);
  const std::string modelId = model.id();

  std::vector<std::optional<ScoredInstance>> scored(dataset.size());
  std::vector<ResponseCapture> responses(dataset.size());
  std::atomic<std::size_t> calls{0}, hits{0};
  std::mutex modelMu;  // models need not be thread-safe; HTTP latency dominates anyway

  auto one = [&](std::size_t i) {
    const TaskInstance& inst = dataset[i];
    const std::string prompt = buildPrompt(inst, pc);
    const std::string promptSha = sha256Hex(prompt);
    std::optional<std::string> response = cache ? cache->get(modelId, prompt) : std::nullopt;
    if (response) {
      ++hits;
    } else {
      try {
        ++calls;
        if (dynamic_cast<HttpChatModel*>(&model)) {
          response = model.complete(prompt, inst);
        } else {
          std::lock_guard<std::mutex> lock(modelMu);
          response = model.complete(prompt, inst);
        }
      } catch (const EndpointError& e) {
        std::cerr << "instance " << inst.id << ": " << e.what() << "\n";
        if (!opts.permissive) throw;
        EvalRecord rec(inst.id, inst.kind, false, inst.kind == TaskKind::kJudgment ? std::nullopt : std::optional<bool>(false),
                       inst.kind == TaskKind::kInstructionToCode ? std::optional<bool>(false) : std::nullopt, "");
        scored[i] = ScoredInstance{std::move(rec), inst.params.maxDepth, promptSha, sha256Hex(""), e.what()};
        responses[i] = ResponseCapture{inst.id, promptSha, ""};
        return;
      }
      if (cache) cache->put(modelId, prompt, *response);
    }
    responses[i] = ResponseCapture{inst.id, promptSha, *response};
    scored[i] = scoreResponse(inst, promptSha, *response);
  };
  detail::parallelFor(dataset.size(), opts.parallelism, one);

  EvalRun run;
  run.model = modelId;
  for (auto& s : scored) run.scored.push_back(std::move(*s));
  run.responses = std::move(responses);
  run.modelCalls = calls;
  run.cacheHits = hits;
  return run;
}

// Re-scores a response capture offline. Responses are matched by id.
inline EvalRun scoreCapture(const std::vector<TaskInstance>& dataset, const std::vector<ResponseCapture>& capture,
                            std::string model) {
  std::map<std::string, const ResponseCapture*> byId;
  for (const auto& c : capture) byId[c.id] = &c;
  EvalRun run;
  run.model = std::move(model);
  for (const TaskInstance& inst : dataset) {
    const auto it = byId.find(inst.id);
    if (it == byId.end()) throw std::runtime_error("no captured response for instance " + inst.id);
    run.scored.push_back(scoreResponse(inst, it->second->promptSha256, it->second->response));
    run.responses.push_back(*it->second);
  }
  return run;
}

// ---------------------------------------------------------------------------
// Run artifacts (line-delimited JSON, no timestamps)

inline Json scoredToJson(const ScoredInstance& s) {
  const EvalRecord& r = s.record;
  Json j;
  j["id"] = r.instanceId();
  j["kind"] = std::string(taskKindName(r.kind()));
  j["depth"] = s.depth;
  j["parsed_ok"] = r.parsedOk();
  if (r.behavioralOk()) j["behavioral_ok"] = *r.behavioralOk();
  if (r.semanticOk()) j["semantic_ok"] = *r.semanticOk();
  j["failure_stage"] = std::string(stageName(r.failureStage()));
  j["raw_answer"] = r.rawAnswer();
  j["prompt_sha256"] = s.promptSha256;
  j["response_sha256"] = s.responseSha256;
  if (s.error) j["error"] = *s.error;
  return j;
}

inline ScoredInstance scoredFromJson(const Json& j, std::size_t line) {
  try {
    const auto kind = parseTaskKind(j.at("kind").get<std::string>());
    if (!kind) throw MalformedRecord(line, "bad kind");
    std::optional<bool> beh, sem;
    if (j.contains("behavioral_ok")) beh = j.at("behavioral_ok").get<bool>();
    if (j.contains("semantic_ok")) sem = j.at("semantic_ok").get<bool>();
    EvalRecord rec(j.at("id").get<std::string>(), *kind, j.at("parsed_ok").get<bool>(), beh, sem,
                   j.at("raw_answer").get<std::string>());
    std::optional<std::string> err;
    if (j.contains("error")) err = j.at("error").get<std::string>();
    return ScoredInstance{std::move(rec), j.at("depth").get<int>(), j.at("prompt_sha256").get<std::string>(),
                          j.at("response_sha256").get<std::string>(), err};
  } catch (const nlohmann::json::exception& e) {
    throw MalformedRecord(line, e.what());
  }
}

inline std::string serializeResults(const EvalRun& run, const std::optional<Json>& provenance = {}) {
  std::string out;
  if (provenance) out += Json{{"provenance", *provenance}}.dump() + "\n";
  for (const auto& s : run.scored) out += scoredToJson(s).dump() + "\n";
  return out;
}

inline std::string serializeResponses(const EvalRun& run, const std::optional<Json>& provenance = {}) {
  std::string out;
  if (provenance) out += Json{{"provenance", *provenance}}.dump() + "\n";
  for (const auto& r : run.responses) {
    out += Json{{"id", r.id}, {"model", run.model}, {"prompt_sha256", r.promptSha256}, {"response", r.response}}.dump() +
           "\n";
  }
  return out;
}

struct ParsedLines {
  std::optional<Json> provenance;
  std::vector<std::pair<std::size_t, Json>> records;  // (line number, object)
};

inline ParsedLines parseJsonLines(std::string_view text) {
  ParsedLines out;
  std::istringstream in{std::string(text)};
  std::size_t lineNo = 0;
  for (std::string line; std::getline(in, line);) {
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
    out.records.emplace_back(lineNo, std::move(j));
  }
  return out;
}

struct CaptureFile {
  std::optional<Json> provenance;
  std::string model;
  std::vector<ResponseCapture> responses;
};

inline CaptureFile deserializeResponses(std::string_view text) {
  CaptureFile out;
  ParsedLines lines = parseJsonLines(text);
  out.provenance = std::move(lines.provenance);
  for (auto& [line, j] : lines.records) {
    try {
      out.model = j.at("model").get<std::string>();
      out.responses.push_back(ResponseCapture{j.at("id").get<std::string>(), j.at("prompt_sha256").get<std::string>(),
                                              j.at("response").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw MalformedRecord(line, e.what());
    }
  }
  return out;
}

struct ResultsFile {
  std::optional<Json> provenance;
  std::vector<ScoredInstance> scored;
};

inline ResultsFile deserializeResults(std::string_view text) {
  ResultsFile out;
  ParsedLines lines = parseJsonLines(text);
  out.provenance = std::move(lines.provenance);
  for (auto& [line, j] : lines.records) out.scored.push_back(scoredFromJson(j, line));
  return out;
}

}  // namespace robogrid

#endif  // ROBOGRID_HARNESS_HPP_
