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

#include "robogrid/grammar.hpp"

#include <gtest/gtest.h>

#include <set>

#include "robogrid/ast.hpp"
#include "robogrid/codec.hpp"

namespace robogrid {
namespace {

using R = TerminalRole;

bool hasLine(const std::string& text, const std::string& line) {
  return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

TEST(GrammarTest, SkeletonsMatchStyles) {
  EXPECT_TRUE(hasLine(renderEBNF(buildGrammar(Style::kBlock, LexiconMode::kNatural, 1)),
                      "loop: LOOP expr TIMES LBR stmt+ RBR"));
  EXPECT_TRUE(hasLine(renderEBNF(buildGrammar(Style::kCStyle, LexiconMode::kNatural, 1)),
                      "loop: LOOP PAR_L expr PAR_R LBR stmt* RBR"));
  EXPECT_TRUE(hasLine(renderEBNF(buildGrammar(Style::kSExpr, LexiconMode::kNatural, 1)),
                      "loop: PAR_L LOOP expr stmt+ PAR_R"));
}

TEST(GrammarTest, SameSeedSameGrammar) {
  for (Style s : kAllStyles) {
    for (LexiconMode m : kAllModes) {
      const GrammarSpec a = buildGrammar(s, m, 77);
      const GrammarSpec b = buildGrammar(s, m, 77);
      EXPECT_EQ(a, b);
      EXPECT_EQ(renderEBNF(a), renderEBNF(b));
    }
  }
}

TEST(GrammarTest, BindingsDistinctAndComplete) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    for (Style s : kAllStyles) {
      for (LexiconMode m : kAllModes) {
        const GrammarSpec g = buildGrammar(s, m, seed);
        std::set<std::string> tokens;
        for (R r : rolesForStyle(s)) {
          ASSERT_TRUE(g.binds(r));
          tokens.insert(g.token(r));
          if (isPunctuationRole(r)) continue;
          EXPECT_FALSE(ItemToken::fromString(g.token(r)));
          EXPECT_FALSE(isIntegerText(g.token(r)));
          if (m == LexiconMode::kAlien) EXPECT_TRUE(isAlienToken(g.token(r))) << g.token(r);
        }
        EXPECT_EQ(tokens.size(), rolesForStyle(s).size());
        EXPECT_EQ(g.terminals.size(), rolesForStyle(s).size());
      }
    }
  }
}

TEST(GrammarTest, PunctuationNeverAliened) {
  const GrammarSpec c = buildGrammar(Style::kCStyle, LexiconMode::kAlien, 4);
  EXPECT_EQ(c.token(R::kLbr), "{");
  EXPECT_EQ(c.token(R::kRbr), "}");
  EXPECT_EQ(c.token(R::kSemi), ";");
  EXPECT_EQ(c.token(R::kParL), "(");
  const GrammarSpec b = buildGrammar(Style::kBlock, LexiconMode::kAlien, 4);
  EXPECT_TRUE(b.token(R::kLbr) == "[" || b.token(R::kLbr) == "{");
}

TEST(GrammarTest, AlienTokenShape) {
  EXPECT_TRUE(isAlienToken("v_xkqm"));
  EXPECT_FALSE(isAlienToken("v_xkq"));
  EXPECT_FALSE(isAlienToken("v_xkqM"));
  EXPECT_FALSE(isAlienToken("w_xkqm"));
}

TEST(GrammarTest, ModeDoesNotChangeSkeleton) {
  for (Style s : kAllStyles) {
    const std::string nat = renderEBNF(buildGrammar(s, LexiconMode::kNatural, 3));
    const std::string ali = renderEBNF(buildGrammar(s, LexiconMode::kAlien, 3));
    EXPECT_EQ(nat.substr(0, nat.find("\n\n")), ali.substr(0, ali.find("\n\n")));
  }
}

// Some seed reproduces the bindings of the introductory Block snippet.
TEST(GrammarTest, NaturalSeedReproducesIntroductoryBindings) {
  std::optional<GrammarSpec> found;
  for (std::uint64_t seed = 0; seed < 50000 && !found; ++seed) {
    GrammarSpec g = buildGrammar(Style::kBlock, LexiconMode::kNatural, seed);
    if (g.token(R::kLoop) == "loop" && g.token(R::kIf) == "when" && g.token(R::kThen) == "after" &&
        g.token(R::kDo) == "exec" && g.token(R::kEnd) == "end" && g.token(R::kLbr) == "[" && g.token(R::kRbr) == "]") {
      found = g;
    }
  }
  ASSERT_TRUE(found);
  const std::string text = renderEBNF(*found);
  EXPECT_TRUE(hasLine(text, "start: stmt+"));
  EXPECT_TRUE(hasLine(text, "LOOP: \"loop\""));
  const std::string code = "when (holding key or holding box) after [ exec turn left end ]";
  EXPECT_TRUE(parsed(parse(code, *found)));
}

TEST(GrammarTest, AlienRenderingShowsOpaqueTokens) {
  const GrammarSpec g = buildGrammar(Style::kBlock, LexiconMode::kAlien, 11);
  const std::string text = renderEBNF(g);
  EXPECT_TRUE(hasLine(text, "DO: \"" + g.token(R::kDo) + "\""));
  EXPECT_TRUE(isAlienToken(g.token(R::kDo)));
}

TEST(GrammarTest, TextRoundTrip) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (Style s : kAllStyles) {
      for (LexiconMode m : kAllModes) {
        const GrammarSpec g = buildGrammar(s, m, seed);
        const GrammarSpec back = parseGrammarText(renderEBNF(g));
        EXPECT_EQ(back, g);
      }
    }
  }
}

TEST(GrammarTest, RejectsForeignText) {
  EXPECT_THROW(parseGrammarText("start: stmt*\n"), GrammarTextError);
  std::string text = renderEBNF(buildGrammar(Style::kBlock, LexiconMode::kNatural, 2));
  EXPECT_THROW(parseGrammarText(text + "EXTRA: \"x\"\n"), GrammarTextError);
  const auto pos = text.find("DO: ");
  EXPECT_THROW(parseGrammarText(text.substr(0, pos)), GrammarTextError);
}

}  // namespace
}  // namespace robogrid
