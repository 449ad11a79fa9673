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

// Per-instance scoring and the SVR / BER / SCR metric stack.
//
// The three layers nest: an output can only be behaviorally correct if it
// parses, and only semantically correct if it is behaviorally correct. The
// nesting is checked, never assumed.

#ifndef ROBOGRID_EVALUATOR_HPP_
#define ROBOGRID_EVALUATOR_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "robogrid/codec.hpp"
#include "robogrid/grammar.hpp"
#include "robogrid/taskgen.hpp"
#include "robogrid/world.hpp"

namespace robogrid {

enum class FailureStage { kSyntax, kBehavior, kSemantics, kPass };

inline constexpr std::string_view stageName(FailureStage s) {
  switch (s) {
    case FailureStage::kSyntax: return "Syntax";
    case FailureStage::kBehavior: return "Behavior";
    case FailureStage::kSemantics: return "Semantics";
    case FailureStage::kPass: return "Pass";
  }
  return "Syntax";
}

inline std::optional<FailureStage> parseStage(std::string_view s) {
  for (FailureStage f : {FailureStage::kSyntax, FailureStage::kBehavior, FailureStage::kSemantics, FailureStage::kPass}) {
    if (stageName(f) == s) return f;
  }
  return std::nullopt;
}

class ContainmentViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class EmptyInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EvalRecord {
 public:
  // Throws ContainmentViolation if a layer passes while an enclosing one fails.
  EvalRecord(std::string instanceId, TaskKind kind, bool parsedOk, std::optional<bool> behavioralOk,
             std::optional<bool> semanticOk, std::string rawAnswer)
      : instanceId_(std::move(instanceId)),
        kind_(kind),
        parsedOk_(parsedOk),
        behavioralOk_(behavioralOk),
        semanticOk_(semanticOk),
        rawAnswer_(std::move(rawAnswer)) {
    const bool beh = behavioralOk_.value_or(false);
    if (semanticOk_.value_or(false) && !beh) {
      throw ContainmentViolation("record " + instanceId_ + ": semanticOk without behavioralOk");
    }
    if (beh && !parsedOk_) throw ContainmentViolation("record " + instanceId_ + ": behavioralOk without parsedOk");
  }

  const std::string& instanceId() const { return instanceId_; }
  TaskKind kind() const { return kind_; }
  bool parsedOk() const { return parsedOk_; }
  const std::optional<bool>& behavioralOk() const { return behavioralOk_; }
  const std::optional<bool>& semanticOk() const { return semanticOk_; }
  const std::string& rawAnswer() const { return rawAnswer_; }

  FailureStage failureStage() const {
    if (!parsedOk_) return FailureStage::kSyntax;
    if (behavioralOk_ && !*behavioralOk_) return FailureStage::kBehavior;
    if (semanticOk_ && !*semanticOk_) return FailureStage::kSemantics;
    return FailureStage::kPass;
  }

  friend bool operator==(const EvalRecord&, const EvalRecord&) = default;

 private:
  std::string instanceId_;
  TaskKind kind_;
  bool parsedOk_;
  std::optional<bool> behavioralOk_;
  std::optional<bool> semanticOk_;
  std::string rawAnswer_;
};

// Last case-insensitive whole-word VALID / INVALID in the answer.
inline std::optional<Label> extractLabel(const std::string& answer) {
  static const std::regex kLabel(R"(\b(valid|invalid)\b)", std::regex::icase);
  std::optional<Label> last;
  for (auto it = std::sregex_iterator(answer.begin(), answer.end(), kLabel); it != std::sregex_iterator(); ++it) {
    last = (*it)[1].length() == 7 ? Label::kInvalid : Label::kValid;
  }
  return last;
}

inline EvalRecord scoreJudgment(const std::string& answer, Label gold, std::string instanceId = {}) {
  const auto got = extractLabel(answer);
  return EvalRecord(std::move(instanceId), TaskKind::kJudgment, got && *got == gold, std::nullopt, std::nullopt, answer);
}

inline EvalRecord scoreGeneration(const std::string& answerCode, const TaskInstance& inst, const GrammarSpec& g) {
  if (inst.kind == TaskKind::kJudgment) throw std::invalid_argument("scoreGeneration needs a generation instance");
  const bool task3 = inst.kind == TaskKind::kInstructionToCode;
  ParseOutcome o = parse(answerCode, g);
  if (!parsed(o)) {
    return EvalRecord(inst.id, inst.kind, false, false, task3 ? std::optional<bool>(false) : std::nullopt, answerCode);
  }
  const Program& pred = std::get<Program>(o);
  const RobotState s0 = inst.startState.value_or(initialState());

  std::optional<RobotState> want;
  if (inst.targetState) {
    want = *inst.targetState;
  } else if (inst.goldAst) {
    const ExecResult r = execProgram(canonParse(*inst.goldAst), s0);
    if (const auto* f = std::get_if<Final>(&r)) want = f->state;
  }
  const ExecResult got = execProgram(pred, s0);
  const auto* fin = std::get_if<Final>(&got);
  const bool beh = fin && want && statesEqual(fin->state, *want);

  std::optional<bool> sem;
  if (task3) sem = beh && inst.goldAst && astEqual(pred, canonParse(*inst.goldAst));
  return EvalRecord(inst.id, inst.kind, true, beh, sem, answerCode);
}

// Scores a raw answer against any instance kind; `code` is the extracted
// program for generation tasks.
inline EvalRecord scoreInstance(const TaskInstance& inst, const std::string& rawAnswer, const std::string& code) {
  if (inst.kind == TaskKind::kJudgment) {
    return scoreJudgment(rawAnswer, inst.goldLabel.value_or(Label::kValid), inst.id);
  }
  return scoreGeneration(code, inst, parseGrammarText(inst.grammarText));
}

// ---------------------------------------------------------------------------
// Aggregation

// Percentages with one decimal.
inline double roundPercent(double fraction) { return std::round(fraction * 1000.0) / 10.0; }

// num / den as a one-decimal percentage; undefined when den is zero.
inline std::optional<double> conditionalRate(double num, double den) {
  if (den <= 0) return std::nullopt;
  return roundPercent(num / den);
}

struct Metrics {
  TaskKind kind = TaskKind::kJudgment;
  std::size_t n = 0;
  double svr = 0;
  std::optional<double> ber;  // absent for judgment
  std::optional<double> scr;  // instruction-to-code only
  std::optional<double> cber;
  std::optional<double> cscr;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

inline Metrics aggregate(const std::vector<EvalRecord>& records) {
  if (records.empty()) throw EmptyInput("aggregate: no records");
  Metrics m;
  m.kind = records.front().kind();
  m.n = records.size();
  std::size_t svr = 0, ber = 0, scr = 0;
  for (const EvalRecord& r : records) {
    if (r.kind() != m.kind) throw std::invalid_argument("aggregate: records mix task kinds");
    svr += r.parsedOk();
    ber += r.behavioralOk().value_or(false);
    scr += r.semanticOk().value_or(false);
  }
  if (scr > ber || ber > svr) {
    throw ContainmentViolation("aggregate: scr=" + std::to_string(scr) + " ber=" + std::to_string(ber) +
                               " svr=" + std::to_string(svr) + " over " + std::to_string(m.n) + " records");
  }
  const double n = static_cast<double>(m.n);
  m.svr = roundPercent(static_cast<double>(svr) / n);
  if (m.kind != TaskKind::kJudgment) {
    m.ber = roundPercent(static_cast<double>(ber) / n);
    m.cber = conditionalRate(static_cast<double>(ber), static_cast<double>(svr));
  }
  if (m.kind == TaskKind::kInstructionToCode) {
    m.scr = roundPercent(static_cast<double>(scr) / n);
    m.cscr = conditionalRate(static_cast<double>(scr), static_cast<double>(svr));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Reports

struct ReportRow {
  std::string model;
  Metrics metrics;
};

struct AxisRow {
  std::string model;
  std::string axis;
  std::string value;
  Metrics metrics;
};

inline std::string formatPercent(const std::optional<double>& v) {
  if (!v) return "--";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *v);
  return buf;
}

namespace detail {

inline std::string padRight(const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); }

inline const Metrics* find(const std::vector<ReportRow>& rows, const std::string& model, TaskKind kind) {
  for (const ReportRow& r : rows) {
    if (r.model == model && r.metrics.kind == kind) return &r.metrics;
  }
  return nullptr;
}

}  // namespace detail

// Markdown in the layout: Task 1 SVR | Task 2 SVR BER CBER | Task 3 SVR BER
// SCR CBER CSCR, one row per model. Missing cells render as "--".
inline std::string renderMarkdown(const std::vector<ReportRow>& rows) {
  std::vector<std::string> models;
  for (const ReportRow& r : rows) {
    if (std::find(models.begin(), models.end(), r.model) == models.end()) models.push_back(r.model);
  }
  const std::vector<std::string> header = {"Model",       "T1 SVR",  "T2 SVR",  "T2 BER",  "T2 CBER",
                                           "T3 SVR",      "T3 BER",  "T3 SCR",  "T3 CBER", "T3 CSCR"};
  std::vector<std::vector<std::string>> table = {header};
  for (const std::string& m : models) {
    const Metrics* t1 = detail::find(rows, m, TaskKind::kJudgment);
    const Metrics* t2 = detail::find(rows, m, TaskKind::kGoalConditioned);
    const Metrics* t3 = detail::find(rows, m, TaskKind::kInstructionToCode);
    auto svr = [](const Metrics* x) { return x ? formatPercent(x->svr) : std::string("--"); };
    auto opt = [](const Metrics* x, std::optional<double> Metrics::*f) {
      return x ? formatPercent(x->*f) : std::string("--");
    };
    table.push_back({m, svr(t1), svr(t2), opt(t2, &Metrics::ber), opt(t2, &Metrics::cber), svr(t3),
                     opt(t3, &Metrics::ber), opt(t3, &Metrics::scr), opt(t3, &Metrics::cber), opt(t3, &Metrics::cscr)});
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    out += "|";
    for (std::size_t c = 0; c < row.size(); ++c) out += " " + detail::padRight(row[c], width[c]) + " |";
    out += "\n";
  };
  emit(table[0]);
  out += "|";
  for (std::size_t c = 0; c < header.size(); ++c) out += std::string(width[c] + 2, '-') + "|";
  out += "\n";
  for (std::size_t i = 1; i < table.size(); ++i) emit(table[i]);
  return out;
}

// One row per (model, task) entry.
inline std::string renderCsv(const std::vector<ReportRow>& rows) {
  std::string out = "model,task,n,svr,ber,scr,cber,cscr\n";
  for (const ReportRow& r : rows) {
    const Metrics& m = r.metrics;
    out += r.model + "," + std::string(taskKindName(m.kind)) + "," + std::to_string(m.n) + "," + formatPercent(m.svr) +
           "," + formatPercent(m.ber) + "," + formatPercent(m.scr) + "," + formatPercent(m.cber) + "," +
           formatPercent(m.cscr) + "\n";
  }
  return out;
}

// Long format: one line per (model, task, axis value, defined metric).
inline std::string renderLongCsv(const std::vector<AxisRow>& rows) {
  std::string out = "model,task,axis,value,metric,percentage\n";
  for (const AxisRow& r : rows) {
    const Metrics& m = r.metrics;
    const std::string prefix = r.model + "," + std::string(taskKindName(m.kind)) + "," + r.axis + "," + r.value + ",";
    out += prefix + "svr," + formatPercent(m.svr) + "\n";
    const std::pair<const char*, std::optional<double>> rest[] = {
        {"ber", m.ber}, {"scr", m.scr}, {"cber", m.cber}, {"cscr", m.cscr}};
    for (const auto& [name, v] : rest) {
      if (v) out += prefix + name + "," + formatPercent(v) + "\n";
    }
  }
  return out;
}

struct Report {
  std::string markdown;
  std::string csv;
  std::string longCsv;
};

inline Report renderReport(const std::vector<ReportRow>& rows, const std::vector<AxisRow>& axisRows = {}) {
  return Report{renderMarkdown(rows), renderCsv(rows), renderLongCsv(axisRows)};
}

}  // namespace robogrid

#endif  // ROBOGRID_EVALUATOR_HPP_
