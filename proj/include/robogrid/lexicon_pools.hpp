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

// Frozen synonym pools for the Natural lexicon. Changing any list changes
// every generated dataset, so treat this file as versioned data.

#ifndef ROBOGRID_LEXICON_POOLS_HPP_
#define ROBOGRID_LEXICON_POOLS_HPP_

#include <array>
#include <string_view>

namespace robogrid::pools {

inline constexpr std::array<std::string_view, 3> kDo = {"do", "exec", "act"};
inline constexpr std::array<std::string_view, 3> kEnd = {"end", "stop", "fin"};
inline constexpr std::array<std::string_view, 3> kLoop = {"loop", "repeat", "run"};
inline constexpr std::array<std::string_view, 3> kTimes = {"times", "iters", "x"};
inline constexpr std::array<std::string_view, 2> kIf = {"if", "when"};
inline constexpr std::array<std::string_view, 3> kThen = {"then", "next", "after"};
inline constexpr std::array<std::string_view, 2> kElse = {"else", "otherwise"};
inline constexpr std::array<std::string_view, 2> kMove = {"move", "go"};
inline constexpr std::array<std::string_view, 1> kTurn = {"turn"};
inline constexpr std::array<std::string_view, 2> kGrab = {"grab", "take"};
inline constexpr std::array<std::string_view, 2> kHolding = {"holding", "has"};
inline constexpr std::array<std::string_view, 2> kAnd = {"and", "plus_and"};
inline constexpr std::array<std::string_view, 2> kOr = {"or", "alt"};
inline constexpr std::array<std::string_view, 2> kNot = {"not", "no"};
inline constexpr std::array<std::string_view, 1> kForward = {"forward"};
inline constexpr std::array<std::string_view, 1> kBackward = {"backward"};
inline constexpr std::array<std::string_view, 1> kLeft = {"left"};
inline constexpr std::array<std::string_view, 1> kRight = {"right"};
inline constexpr std::array<std::string_view, 2> kAdd = {"+", "plus"};
inline constexpr std::array<std::string_view, 2> kMul = {"*", "times"};

// Block-style brackets are drawn as a pair.
inline constexpr std::array<std::array<std::string_view, 2>, 2> kBlockBrackets = {{{"[", "]"}, {"{", "}"}}};

}  // namespace robogrid::pools

#endif  // ROBOGRID_LEXICON_POOLS_HPP_
