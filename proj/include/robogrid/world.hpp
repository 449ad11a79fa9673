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

// Deterministic execution semantics on an unbounded grid.
//
// Conventions: N is +y, E is +x. Left turns cycle N->W->S->E, right turns
// N->E->S->W. Grab always succeeds and adds one instance to a multiset
// inventory. Every primitive action costs one step (Move costs one step
// regardless of distance).

#ifndef ROBOGRID_WORLD_HPP_
#define ROBOGRID_WORLD_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <map>
#include <string>
#include <variant>

#include "robogrid/ast.hpp"

namespace robogrid {

enum class Facing { kN, kE, kS, kW };

inline constexpr char facingChar(Facing f) {
  switch (f) {
    case Facing::kN: return 'N';
    case Facing::kE: return 'E';
    case Facing::kS: return 'S';
    case Facing::kW: return 'W';
  }
  return 'N';
}

inline std::optional<Facing> parseFacing(std::string_view s) {
  if (s == "N") return Facing::kN;
  if (s == "E") return Facing::kE;
  if (s == "S") return Facing::kS;
  if (s == "W") return Facing::kW;
  return std::nullopt;
}

inline constexpr Facing turnLeft(Facing f) {
  switch (f) {
    case Facing::kN: return Facing::kW;
    case Facing::kW: return Facing::kS;
    case Facing::kS: return Facing::kE;
    case Facing::kE: return Facing::kN;
  }
  return f;
}

inline constexpr Facing turnRight(Facing f) {
  switch (f) {
    case Facing::kN: return Facing::kE;
    case Facing::kE: return Facing::kS;
    case Facing::kS: return Facing::kW;
    case Facing::kW: return Facing::kN;
  }
  return f;
}

struct RobotState {
  std::int64_t x = 0;
  std::int64_t y = 0;
  Facing facing = Facing::kN;
  // Multiset as item -> multiplicity; counts are always positive.
  std::map<ItemToken, std::uint64_t> inventory;

  bool holds(const ItemToken& item) const { return inventory.contains(item); }
  void give(const ItemToken& item, std::uint64_t n = 1) {
    if (n) inventory[item] += n;
  }
  std::uint64_t inventorySize() const {
    std::uint64_t n = 0;
    for (const auto& [item, k] : inventory) n += k;
    return n;
  }

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

// Componentwise, inventory compared as a multiset.
inline bool statesEqual(const RobotState& a, const RobotState& b) { return a == b; }

inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000;

struct Final {
  RobotState state;
  std::uint64_t stepsUsed = 0;
};
struct BudgetExceeded {};

using ExecResult = std::variant<Final, BudgetExceeded>;

namespace detail {

inline constexpr std::int64_t kIntMax = std::numeric_limits<std::int64_t>::max();
inline constexpr std::int64_t kIntMin = std::numeric_limits<std::int64_t>::min();

inline std::int64_t satAdd(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) return b > 0 ? kIntMax : kIntMin;
  return r;
}

inline std::int64_t satMul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return (a < 0) != (b < 0) ? kIntMin : kIntMax;
  return r;
}

}  // namespace detail

// Saturates at INT64_MAX instead of overflowing; literals are non-negative.
inline std::int64_t evalArith(const ArithExpr& e) {
  return std::visit(Overloaded{
                        [](const Literal& l) { return l.value; },
                        [](const BinaryArith& b) {
                          const std::int64_t l = evalArith(*b.lhs);
                          const std::int64_t r = evalArith(*b.rhs);
                          return b.op == ArithOp::kAdd ? detail::satAdd(l, r) : detail::satMul(l, r);
                        },
                    },
                    e.node);
}

inline bool evalBool(const BoolExpr& c, const RobotState& s) {
  return std::visit(Overloaded{
                        [&](const Holding& h) { return s.holds(h.item); },
                        [&](const Not& n) { return !evalBool(*n.inner, s); },
                        [&](const BinaryBool& b) {
                          const bool l = evalBool(*b.lhs, s);
                          const bool r = evalBool(*b.rhs, s);
                          return b.op == BoolOp::kAnd ? (l && r) : (l || r);
                        },
                    },
                    c.node);
}

inline RobotState step(const Action& a, RobotState s) {
  std::visit(Overloaded{
                 [&](const Move& m) {
                   std::int64_t n = evalArith(m.steps);
                   if (m.dir == MoveDir::kBackward) n = detail::satMul(n, -1);
                   switch (s.facing) {
                     case Facing::kN: s.y = detail::satAdd(s.y, n); break;
                     case Facing::kS: s.y = detail::satAdd(s.y, detail::satMul(n, -1)); break;
                     case Facing::kE: s.x = detail::satAdd(s.x, n); break;
                     case Facing::kW: s.x = detail::satAdd(s.x, detail::satMul(n, -1)); break;
                   }
                 },
                 [&](const Turn& t) { s.facing = t.dir == TurnDir::kLeft ? turnLeft(s.facing) : turnRight(s.facing); },
                 [&](const Grab& g) { s.give(g.item); },
             },
             a);
  return s;
}

namespace detail {

class Executor {
 public:
  explicit Executor(std::uint64_t budget) : budget_(budget) {}

  // Returns false once the budget is exhausted.
  bool run(const Block& block, RobotState& s) {
    for (const Stmt& st : block) {
      if (!run(st, s)) return false;
    }
    return true;
  }

  std::uint64_t used() const { return used_; }

 private:
  bool run(const Stmt& st, RobotState& s) {
    return std::visit(Overloaded{
                          [&](const ActionStmt& a) {
                            if (used_ >= budget_) return false;
                            ++used_;
                            s = step(a.action, std::move(s));
                            return true;
                          },
                          [&](const Loop& l) { return runLoop(l, s); },
                          [&](const If& i) {
                            if (evalBool(i.cond, s)) return run(i.thenBlock, s);
                            if (i.elseBlock) return run(*i.elseBlock, s);
                            return true;
                          },
                      },
                      st.node);
  }

  bool runLoop(const Loop& l, RobotState& s) {
    const std::int64_t count = evalArith(l.count);
    for (std::int64_t k = 0; k < count; ++k) {
      const RobotState before = s;
      const std::uint64_t usedBefore = used_;
      if (!run(l.body, s)) return false;
      // An iteration is a pure function of the state. If it left the state
      // unchanged, every remaining iteration repeats it exactly, so account
      // for them in one step instead of spinning.
      if (s == before) {
        const std::uint64_t per = used_ - usedBefore;
        const auto remaining = static_cast<std::uint64_t>(count - k - 1);
        if (per != 0 && remaining > (budget_ - used_) / per) {
          used_ = budget_;
          return false;
        }
        used_ += per * remaining;
        return true;
      }
    }
    return true;
  }

  std::uint64_t budget_;
  std::uint64_t used_ = 0;
};

}  // namespace detail

inline ExecResult execProgram(const Program& t, const RobotState& s0, std::uint64_t budget = kDefaultStepBudget) {
  detail::Executor ex(budget);
  RobotState s = s0;
  if (!ex.run(t.body, s)) return BudgetExceeded{};
  return Final{std::move(s), ex.used()};
}

inline RobotState initialState() { return RobotState{}; }

}  // namespace robogrid

#endif  // ROBOGRID_WORLD_HPP_
