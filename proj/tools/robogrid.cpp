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

// robogrid: generate datasets, run models, score captures, build reports.
//
//   robogrid gen --task instruction --n 200 --depth 10 --style block \
//       --lexicon alien --E 2 --p 0.5 --seed 1 --out data.jsonl
//   robogrid eval --dataset data.jsonl --endpoint mock:perfect --results r.jsonl
//   robogrid score --dataset data.jsonl --responses resp.jsonl --results r2.jsonl
//   robogrid report --results r.jsonl --out report
//   robogrid sweep --axis depth --values 2,5,10,15,20 --out-dir sweep/
//
// Options may also come from a key=value file given with --config (section
// per subcommand, e.g. [gen]); flags on the command line win.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "robogrid/commands.hpp"

namespace {

using namespace robogrid;

struct GenFlags {
  std::string task = "instruction";
  std::size_t n = 200;
  std::string style = "block";
  std::string lexicon = "alien";
  int depth = 10;
  double p = 0.5;
  int exprDepth = 2;
  int maxBlock = 3;
  double wAct = NodeWeights{}.act, wLoop = NodeWeights{}.loop, wIf = NodeWeights{}.cond;
  std::uint64_t seed = 0;

  void attach(CLI::App* app) {
    app->add_option("--task", task, "judgment | goal | instruction")->capture_default_str();
    app->add_option("--n", n, "number of instances")->capture_default_str();
    app->add_option("--style", style, "block | cstyle | sexpr")->capture_default_str();
    app->add_option("--lexicon", lexicon, "natural | alien")->capture_default_str();
    app->add_option("--depth,-D", depth, "control depth D, 1..20")->capture_default_str();
    app->add_option("--p", p, "else-branch probability")->capture_default_str();
    app->add_option("--E", exprDepth, "expression depth, 1..3")->capture_default_str();
    app->add_option("--bmax", maxBlock, "maximum statements per block")->capture_default_str();
    app->add_option("--w-act", wAct, "node weight for actions")->capture_default_str();
    app->add_option("--w-loop", wLoop, "node weight for loops")->capture_default_str();
    app->add_option("--w-if", wIf, "node weight for conditionals")->capture_default_str();
    app->add_option("--seed", seed, "global seed")->capture_default_str();
  }

  GenOptions resolve() const {
    GenOptions o;
    const auto k = parseTaskKind(task);
    if (!k) throw InvalidParams("unknown task '" + task + "'");
    const auto s = parseStyle(style);
    if (!s) throw InvalidParams("unknown style '" + style + "'");
    const auto m = parseMode(lexicon);
    if (!m) throw InvalidParams("unknown lexicon '" + lexicon + "'");
    o.task = *k;
    o.n = n;
    o.style = *s;
    o.mode = *m;
    o.params.maxDepth = depth;
    o.params.elseProb = p;
    o.params.exprDepth = exprDepth;
    o.params.maxBlock = maxBlock;
    o.params.weights = NodeWeights{wAct, wLoop, wIf};
    o.seed = seed;
    validate(o.params);
    return o;
  }
};

struct EvalFlags {
  std::string endpoint;
  std::string model;
  std::string authEnv = EndpointConfig{}.authTokenEnvVar;
  int shots = 0;
  bool direct = false;
  double temperature = 0.0;
  int maxTokens = EndpointConfig{}.maxTokens;
  int timeout = EndpointConfig{}.timeoutSeconds;
  int retries = EndpointConfig{}.maxRetries;
  int parallelism = EndpointConfig{}.parallelism;
  std::string cacheDir;
  bool permissive = false;

  void attach(CLI::App* app, bool required) {
    auto* e = app->add_option("--endpoint", endpoint, "chat-completions base URL, or mock:perfect / mock:flatten");
    if (required) e->required();
    app->add_option("--model", model, "model id sent to the endpoint");
    app->add_option("--auth-env", authEnv, "environment variable holding the bearer token")->capture_default_str();
    app->add_option("--shots", shots, "demonstrations per prompt: 0, 1, 2 or 5")->capture_default_str();
    app->add_flag("--direct", direct, "ask for the answer only instead of step-by-step reasoning");
    app->add_option("--temperature", temperature)->capture_default_str();
    app->add_option("--max-tokens", maxTokens)->capture_default_str();
    app->add_option("--timeout", timeout, "seconds per request")->capture_default_str();
    app->add_option("--retries", retries)->capture_default_str();
    app->add_option("--parallelism", parallelism, "maximum requests in flight")->capture_default_str();
    app->add_option("--cache", cacheDir, "response cache directory");
    app->add_flag("--permissive", permissive, "score endpoint errors as syntax failures instead of aborting");
  }

  EvalOptions resolve() const {
    EvalOptions o;
    o.endpoint = endpoint;
    o.endpointConfig.modelId = model;
    o.endpointConfig.authTokenEnvVar = authEnv;
    o.endpointConfig.temperature = temperature;
    o.endpointConfig.maxTokens = maxTokens;
    o.endpointConfig.timeoutSeconds = timeout;
    o.endpointConfig.maxRetries = retries;
    o.endpointConfig.parallelism = parallelism;
    o.prompt.shots = shots;
    o.prompt.cot = !direct;
    validate(o.prompt);
    if (parallelism < 1) throw InvalidParams("parallelism must be >= 1");
    o.run.parallelism = parallelism;
    o.run.permissive = permissive;
    if (!cacheDir.empty()) o.run.cacheDir = cacheDir;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Procedural grammar benchmark: generation, evaluation and scoring"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);

  GenFlags genFlags;
  std::string genOut;
  auto* gen = app.add_subcommand("gen", "generate a dataset");
  genFlags.attach(gen);
  gen->add_option("--out", genOut, "dataset path")->required();

  EvalFlags evalFlags;
  std::string evalDataset, evalResults, evalResponses, evalReport;
  auto* eval = app.add_subcommand("eval", "run a model over a dataset and score it");
  eval->add_option("--dataset", evalDataset)->required()->check(CLI::ExistingFile);
  evalFlags.attach(eval, true);
  eval->add_option("--results", evalResults, "results path")->required();
  eval->add_option("--responses", evalResponses, "raw response capture path");
  eval->add_option("--report", evalReport, "report path prefix (.md, .csv, .depth.csv)");

  std::string scoreDataset, scoreResponsesPath, scoreResults, scoreReport;
  auto* score = app.add_subcommand("score", "score a captured response file offline");
  score->add_option("--dataset", scoreDataset)->required()->check(CLI::ExistingFile);
  score->add_option("--responses", scoreResponsesPath)->required()->check(CLI::ExistingFile);
  score->add_option("--results", scoreResults, "results path")->required();
  score->add_option("--report", scoreReport, "report path prefix");

  std::vector<std::string> reportInputs;
  std::string reportOut;
  auto* report = app.add_subcommand("report", "aggregate results files into tables");
  report->add_option("--results", reportInputs, "results files")->required()->check(CLI::ExistingFile);
  report->add_option("--out", reportOut, "report path prefix; prints markdown when omitted");

  GenFlags sweepGen;
  EvalFlags sweepEval;
  std::string sweepAxis, sweepOutDir;
  std::vector<std::string> sweepValues;
  auto* sweep = app.add_subcommand("sweep", "generate (and optionally evaluate) one dataset per axis value");
  sweep->add_option("--axis", sweepAxis, "depth | p | E | shots | style")->required();
  sweep->add_option("--values", sweepValues, "comma-separated axis values")->required()->delimiter(',');
  sweep->add_option("--out-dir", sweepOutDir)->required();
  sweepGen.attach(sweep);
  sweepEval.attach(sweep, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const GenResult r = runGen(genFlags.resolve());
      writeDataset(r.instances, genOut, r.provenance);
      std::cout << genSummary(r.instances);
    } else if (*eval) {
      const RunArtifacts a = evaluateDataset(readTextFile(evalDataset), evalFlags.resolve());
      writeTextFile(evalResults, a.results);
      if (!evalResponses.empty()) writeTextFile(evalResponses, a.responses);
      const Report rep = reportFromRun(a.run);
      if (!evalReport.empty()) writeReport(rep, evalReport);
      std::cout << "model calls: " << a.run.modelCalls << ", cache hits: " << a.run.cacheHits << "\n" << rep.markdown;
    } else if (*score) {
      const RunArtifacts a = scoreResponses(readTextFile(scoreDataset), readTextFile(scoreResponsesPath));
      writeTextFile(scoreResults, a.results);
      const Report rep = reportFromRun(a.run);
      if (!scoreReport.empty()) writeReport(rep, scoreReport);
      std::cout << rep.markdown;
    } else if (*report) {
      std::vector<std::string> texts;
      for (const auto& p : reportInputs) texts.push_back(readTextFile(p));
      const Report rep = reportFromResults(texts);
      if (!reportOut.empty()) writeReport(rep, reportOut);
      std::cout << rep.markdown;
    } else if (*sweep) {
      SweepOptions o;
      o.axis = sweepAxis;
      o.values = sweepValues;
      o.gen = sweepGen.resolve();
      if (!sweepEval.endpoint.empty()) o.eval = sweepEval.resolve();
      o.outDir = sweepOutDir;
      runSweep(o, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
