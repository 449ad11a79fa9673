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

// Fixed prompt wording. Kept verbatim in one place so runs stay comparable
// across models; changing any string here changes every cache key.

#ifndef ROBOGRID_PROMPT_TEMPLATES_HPP_
#define ROBOGRID_PROMPT_TEMPLATES_HPP_

#include <string_view>

namespace robogrid::prompts {

inline constexpr std::string_view kCheckerHeader =
    "You are a strict syntax checker\n"
    "Your task is to determine if the provided code is strictly valid according to the EBNF grammar.\n";

inline constexpr std::string_view kGeneratorHeader =
    "You are a strict code generator.\n"
    "You are given a NEW programming language definition (EBNF).\n";

inline constexpr std::string_view kEbnfLabel = "EBNF:\n";
inline constexpr std::string_view kCodeToCheckLabel = "Code to Check:\n";
inline constexpr std::string_view kInstructionsLabel = "Instructions:\n";

inline constexpr std::string_view kJudgmentTask =
    "If the code can be parsed by the grammar, output 'VALID'. Otherwise output 'INVALID'.";

inline constexpr std::string_view kGoalTask =
    "Your task is to synthesize a valid code according to the EBNF that guides the robot to the target state.";

inline constexpr std::string_view kInstructionTask =
    "Your task is to faithfully translate the instructions into code. You must strictly adhere to the provided EBNF "
    "syntax and ensure the hierarchical structure of the generated program exactly matches the logical nesting of "
    "the instructions.";

inline constexpr std::string_view kJudgmentCot =
    "Think step by step: walk through the code token by token against the grammar rules. "
    "End your answer with the final verdict, VALID or INVALID, on its own line.";

inline constexpr std::string_view kJudgmentDirect = "Answer with exactly one word: VALID or INVALID.";

inline constexpr std::string_view kGenerationCot =
    "Think step by step: work out the program structure and check it against the grammar rules. "
    "Then give the final program inside a single fenced code block (```).";

inline constexpr std::string_view kGenerationDirect =
    "Output only the final program inside a single fenced code block (```), with no explanation.";

inline constexpr std::string_view kExamplesLabel = "Worked examples in this language:\n";

}  // namespace robogrid::prompts

#endif  // ROBOGRID_PROMPT_TEMPLATES_HPP_
