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

// Subcommand bodies behind the robogrid tool: gen, eval, score, report and
// sweep. Every artifact starts with a provenance line holding the effective
// configuration; output paths are left out so that identical flags give
// identical bytes wherever the file is written.

#ifndef ROBOGRID_COMMANDS_HPP_
#define ROBOGRID_COMMANDS_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "robogrid/evaluator.hpp"
#include "robogrid/harness.hpp"
#include "robogrid/taskgen.hpp"

namespace robogrid {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct GenOptions {
  TaskKind task = TaskKind::kInstructionToCode;
  std::size_t n = 200;
  Style style = Style::kBlock;
  LexiconMode mode = LexiconMode::kAlien;
  GenParams params;        // params.seed is ignored; see seed
  std::uint64_t seed = 0;  // global seed
};

inline Json genConfigJson(const GenOptions& o) {
  return Json{{"task", std::string(taskKindName(o.task))},
              {"n", o.n},
              {"style", std::string(styleName(o.style))},
              {"lexicon_mode", std::string(modeName(o.mode))},
              {"D", o.params.maxDepth},
              {"p", o.params.elseProb},
              {"E", o.params.exprDepth},
              {"B_max", o.params.maxBlock},
              {"weights", {o.params.weights.act, o.params.weights.loop, o.params.weights.cond}},
              {"max_literal", o.params.maxLiteral}};
}

inline Json provenance(std::string_view subcommand, Json config, std::uint64_t seed) {
  return Json{{"tool", "robogrid"},
              {"version", std::string(kToolVersion)},
              {"subcommand", std::string(subcommand)},
              {"seed", seed},
              {"config", std::move(config)}};
}

struct GenResult {
  std::vector<TaskInstance> instances;
  Json provenance;
};

// Dataset seed derived from the global seed and the subcommand context;
// instance seeds are derived from it per index inside taskgen.
inline GenResult runGen(const GenOptions& o, std::string_view context = "gen") {
  if (o.n == 0) throw InvalidParams("n must be positive");
  GenParams p = o.params;
  p.seed = deriveSeed(o.seed, context);
  GenResult r;
  r.instances = makeTaskSet(o.task, o.n, o.style, o.mode, p);
  for (const TaskInstance& inst : r.instances) {
    const std::string problem = checkInstance(inst);
    if (!problem.empty()) throw std::logic_error("instance " + inst.id + " failed self-check: " + problem);
  }
  Json cfg = genConfigJson(o);
  cfg["context"] = std::string(context);
  r.provenance = provenance("gen", std::move(cfg), o.seed);
  return r;
}

// Depth histogram and perturbation mix.
inline std::string genSummary(const std::vector<TaskInstance>& instances) {
  std::map<int, std::size_t> depth;
  std::map<std::string, std::size_t> mix;
  std::size_t valid = 0;
  for (const TaskInstance& inst : instances) {
    if (inst.goldAst) ++depth[controlDepth(canonParse(*inst.goldAst))];
    if (inst.perturbCategory) ++mix[std::string(perturbName(*inst.perturbCategory))];
    if (inst.goldLabel == Label::kValid) ++valid;
  }
  std::string out = "instances: " + std::to_string(instances.size()) + "\n";
  out += "control depth histogram:\n";
  for (const auto& [d, n] : depth) out += "  D=" + std::to_string(d) + ": " + std::to_string(n) + "\n";
  if (!mix.empty() || valid) {
    out += "labels: VALID " + std::to_string(valid) + ", INVALID " + std::to_string(instances.size() - valid) + "\n";
    out += "perturbation mix:\n";
    for (const auto& [name, n] : mix) out += "  " + name + ": " + std::to_string(n) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

struct EvalOptions {
  std::string endpoint;  // URL, or mock:perfect / mock:flatten
  EndpointConfig endpointConfig;
  PromptConfig prompt;
  RunOptions run;
};

inline std::unique_ptr<ChatModel> makeModel(const EvalOptions& o) {
  if (o.endpoint == "mock:perfect") return std::make_unique<PerfectMockModel>();
  if (o.endpoint == "mock:flatten") return std::make_unique<FlatteningMockModel>();
  if (o.endpoint.rfind("mock:", 0) == 0) throw std::invalid_argument("unknown mock endpoint '" + o.endpoint + "'");
  if (o.endpointConfig.modelId.empty()) throw std::invalid_argument("--model is required for a real endpoint");
  EndpointConfig cfg = o.endpointConfig;
  cfg.baseUrl = o.endpoint;
  return std::make_unique<HttpChatModel>(cfg);
}

inline Json evalConfigJson(const EvalOptions& o, const std::string& model, const std::string& datasetSha) {
  return Json{{"endpoint", o.endpoint},
              {"model", model},
              {"dataset_sha256", datasetSha},
              {"shots", o.prompt.shots},
              {"cot", o.prompt.cot},
              {"temperature", o.endpointConfig.temperature},
              {"max_tokens", o.endpointConfig.maxTokens},
              {"permissive", o.run.permissive}};
}

struct RunArtifacts {
  EvalRun run;
  std::string results;    // line-delimited records
  std::string responses;  // raw response capture
};

inline RunArtifacts evaluateDataset(const std::string& datasetText, const EvalOptions& o) {
  const DatasetFile ds = deserializeDataset(datasetText);
  std::unique_ptr<ChatModel> model = makeModel(o);
  RunArtifacts a;
  a.run = runEvaluation(ds.instances, *model, o.prompt, o.run);
  const Json prov = provenance("eval", evalConfigJson(o, a.run.model, sha256Hex(datasetText)), 0);
  a.results = serializeResults(a.run, prov);
  a.responses = serializeResponses(a.run, prov);
  return a;
}

inline RunArtifacts scoreResponses(const std::string& datasetText, const std::string& responsesText) {
  const DatasetFile ds = deserializeDataset(datasetText);
  const CaptureFile cap = deserializeResponses(responsesText);
  RunArtifacts a;
  a.run = scoreCapture(ds.instances, cap.responses, cap.model);
  Json cfg{{"model", a.run.model}, {"dataset_sha256", sha256Hex(datasetText)},
           {"responses_sha256", sha256Hex(responsesText)}};
  a.results = serializeResults(a.run, provenance("score", std::move(cfg), 0));
  a.responses = responsesText;
  return a;
}

// ---------------------------------------------------------------------------
// Reports

inline std::vector<ReportRow> reportRows(const std::string& model, const std::vector<ScoredInstance>& scored) {
  std::map<TaskKind, std::vector<EvalRecord>> byKind;
  for (const auto& s : scored) byKind[s.record.kind()].push_back(s.record);
  std::vector<ReportRow> rows;
  for (const auto& [kind, recs] : byKind) rows.push_back(ReportRow{model, aggregate(recs)});
  return rows;
}

inline std::vector<AxisRow> depthRows(const std::string& model, const std::vector<ScoredInstance>& scored) {
  std::map<std::pair<TaskKind, int>, std::vector<EvalRecord>> groups;
  for (const auto& s : scored) groups[{s.record.kind(), s.depth}].push_back(s.record);
  std::vector<AxisRow> rows;
  for (const auto& [key, recs] : groups) rows.push_back(AxisRow{model, "depth", std::to_string(key.second), aggregate(recs)});
  return rows;
}

// Reads results files; the model name comes from each file's provenance.
inline Report reportFromResults(const std::vector<std::string>& resultsTexts) {
  std::vector<ReportRow> rows;
  std::vector<AxisRow> axis;
  std::size_t total = 0;
  for (const std::string& text : resultsTexts) {
    const ResultsFile rf = deserializeResults(text);
    total += rf.scored.size();
    if (rf.scored.empty()) continue;
    std::string model = "model";
    if (rf.provenance && rf.provenance->contains("config") && rf.provenance->at("config").contains("model")) {
      model = rf.provenance->at("config").at("model").get<std::string>();
    }
    for (auto& r : reportRows(model, rf.scored)) rows.push_back(std::move(r));
    for (auto& r : depthRows(model, rf.scored)) axis.push_back(std::move(r));
  }
  if (total == 0) throw EmptyInput("report: results contain no records");
  return renderReport(rows, axis);
}

inline Report reportFromRun(const EvalRun& run) {
  if (run.scored.empty()) throw EmptyInput("report: results contain no records");
  return renderReport(reportRows(run.model, run.scored), depthRows(run.model, run.scored));
}

inline void writeReport(const Report& r, const std::string& prefix) {
  writeTextFile(prefix + ".md", r.markdown);
  writeTextFile(prefix + ".csv", r.csv);
  writeTextFile(prefix + ".depth.csv", r.longCsv);
}

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepAxis { kDepth, kElseProb, kExprDepth, kShots, kStyle };

inline std::optional<SweepAxis> parseSweepAxis(std::string_view s) {
  if (s == "depth") return SweepAxis::kDepth;
  if (s == "p") return SweepAxis::kElseProb;
  if (s == "E") return SweepAxis::kExprDepth;
  if (s == "shots") return SweepAxis::kShots;
  if (s == "style") return SweepAxis::kStyle;
  return std::nullopt;
}

struct SweepOptions {
  std::string axis;
  std::vector<std::string> values;
  GenOptions gen;
  std::optional<EvalOptions> eval;  // absent: datasets only
  std::string outDir;
};

inline double parseNumber(const std::string& axis, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw InvalidParams("bad value '" + v + "' for axis " + axis);
  }
}

inline int parseWhole(const std::string& axis, const std::string& v) {
  const double d = parseNumber(axis, v);
  if (d != static_cast<int>(d)) throw InvalidParams("axis " + axis + " needs integers, got '" + v + "'");
  return static_cast<int>(d);
}

struct SweepOutcome {
  std::vector<std::string> datasetPaths;
  std::optional<std::string> longCsv;
};

// One dataset per axis value, everything else fixed. Shots do not affect
// generation, so a shots sweep shares one dataset across values.
inline SweepOutcome runSweep(const SweepOptions& o, std::ostream& log) {
  const auto axis = parseSweepAxis(o.axis);
  if (!axis) throw InvalidParams("unknown sweep axis '" + o.axis + "' (depth, p, E, shots, style)");
  if (o.values.empty()) throw InvalidParams("sweep needs at least one value");

  // Validate every value before writing anything.
  std::vector<std::pair<GenOptions, std::optional<EvalOptions>>> plan;
  for (const std::string& v : o.values) {
    GenOptions g = o.gen;
    std::optional<EvalOptions> e = o.eval;
    switch (*axis) {
      case SweepAxis::kDepth: g.params.maxDepth = parseWhole(o.axis, v); break;
      case SweepAxis::kElseProb: g.params.elseProb = parseNumber(o.axis, v); break;
      case SweepAxis::kExprDepth: g.params.exprDepth = parseWhole(o.axis, v); break;
      case SweepAxis::kStyle: {
        const auto s = parseStyle(v);
        if (!s) throw InvalidParams("unknown style '" + v + "'");
        g.style = *s;
        break;
      }
      case SweepAxis::kShots: {
        PromptConfig pc;
        pc.shots = parseWhole(o.axis, v);
        validate(pc);
        if (e) e->prompt.shots = pc.shots;
        break;
      }
    }
    validate(g.params);
    plan.emplace_back(std::move(g), std::move(e));
  }

  std::filesystem::create_directories(o.outDir);
  SweepOutcome out;
  std::vector<AxisRow> rows;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const std::string& v = o.values[i];
    const std::string context = *axis == SweepAxis::kShots ? "sweep/" + o.axis : "sweep/" + o.axis + "=" + v;
    GenResult gr = runGen(plan[i].first, context);
    gr.provenance["subcommand"] = "sweep";
    const std::string text = serializeDataset(gr.instances, gr.provenance);
    const std::string stem = (std::filesystem::path(o.outDir) / (o.axis + "-" + v)).string();
    writeTextFile(stem + ".jsonl", text);
    out.datasetPaths.push_back(stem + ".jsonl");
    log << o.axis << "=" << v << ": wrote " << gr.instances.size() << " instances\n";
    if (plan[i].second) {
      RunArtifacts a = evaluateDataset(text, *plan[i].second);
      writeTextFile(stem + ".results.jsonl", a.results);
      writeTextFile(stem + ".responses.jsonl", a.responses);
      for (auto& r : reportRows(a.run.model, a.run.scored)) rows.push_back(AxisRow{r.model, o.axis, v, r.metrics});
    }
  }
  if (o.eval) {
    out.longCsv = renderLongCsv(rows);
    writeTextFile((std::filesystem::path(o.outDir) / "sweep.csv").string(), *out.longCsv);
  }
  return out;
}

}  // namespace robogrid

#endif  // ROBOGRID_COMMANDS_HPP_
