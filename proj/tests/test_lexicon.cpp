// tests/test_lexicon.cpp

// Copyright 2026  The entrain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <gtest/gtest.h>

#include "entrain/lexicon.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace entrain;
using entrain::testing::make_dialogue;

namespace {

Dialogue norm(const std::vector<std::string>& texts) {
  return normalize_dialogue(make_dialogue(texts), NormalizationConfig{});
}

const Occurrence& occ_at(const LexiconEntry& e, int utt) {
  for (const Occurrence& o : e.occurrences) {
    if (o.utterance_index == utt) return o;
  }
  throw std::runtime_error("no occurrence in utterance " + std::to_string(utt));
}

}  // namespace

TEST(Mine, AllSubsequencesOfSharedUtterance) {
  CandidateSet c = mine_shared(norm({"hotel taxi museum", "hotel taxi museum"}));
  EXPECT_EQ(c.size(), 6u);
  EXPECT_TRUE(c.count({"hotel", "taxi", "museum"}));
  EXPECT_TRUE(c.count({"taxi", "museum"}));
  EXPECT_FALSE(c.count({"hotel", "museum"}));
  for (const auto& [k, occs] : c) EXPECT_EQ(occs.size(), 2u) << key_string(k);
}

TEST(Mine, SingleSpeakerSharesNothing) {
  EXPECT_TRUE(mine_shared(norm({"hotel taxi"})).empty());
  EXPECT_TRUE(mine_shared(norm({"hotel", "taxi", "hotel"})).empty());
}

TEST(Mine, MaxNgramCapsLength) {
  CandidateSet c = mine_shared(norm({"hotel taxi museum", "hotel taxi museum"}), 2);
  EXPECT_EQ(c.size(), 5u);
  EXPECT_TRUE(mine_shared(norm({"hotel", "hotel"}), 0).empty());
}

TEST(Mine, RepeatsInOneUtteranceDoNotOverlap) {
  CandidateSet c = mine_shared(norm({"taxi taxi taxi", "taxi taxi"}));
  const auto& pair = c.at({"taxi", "taxi"});
  // leftmost-greedy: [0,2) in the first utterance, [0,2) in the second
  ASSERT_EQ(pair.size(), 2u);
  EXPECT_EQ(pair[0].span, (TokenSpan{0, 2}));
  EXPECT_EQ(c.at({"taxi"}).size(), 5u);
}

TEST(Mine, PunctuationNeverPartOfKey) {
  CandidateSet c = mine_shared(norm({"hotel, taxi", "hotel, taxi"}));
  EXPECT_EQ(c.size(), 2u);
}

TEST(Classify, ContainedInstancesAreConstrained) {
  Dialogue d = norm({"hotel taxi", "hotel taxi", "hotel"});
  DialogueLexicon lex = build_lexicon(d, nullptr);
  const LexiconEntry* pair = lex.find("hotel taxi");
  const LexiconEntry* hotel = lex.find("hotel");
  const LexiconEntry* taxi = lex.find("taxi");
  ASSERT_TRUE(pair && hotel && taxi);
  EXPECT_EQ(occ_at(*hotel, 1).kind, InstanceKind::Constrained);
  EXPECT_EQ(occ_at(*hotel, 2).kind, InstanceKind::Constrained);
  EXPECT_EQ(occ_at(*hotel, 3).kind, InstanceKind::Free);
  EXPECT_EQ(pair->established_at, 2);
  EXPECT_EQ(hotel->established_at, 3);
  EXPECT_FALSE(taxi->established());
  EXPECT_EQ(lex.established_count(), 2u);
}

TEST(Classify, WholeUtteranceKeyIsFree) {
  DialogueLexicon lex = build_lexicon(norm({"hotel taxi", "hotel taxi"}), nullptr);
  for (const Occurrence& o : lex.find("hotel taxi")->occurrences) {
    EXPECT_EQ(o.kind, InstanceKind::Free);
  }
}

TEST(Establish, NeedsBothSpeakersAndAFreeInstance) {
  std::vector<Occurrence> occs = {
      {1, Speaker::User, {0, 1}, InstanceKind::Free},
      {3, Speaker::User, {0, 1}, InstanceKind::Free},
      {4, Speaker::Agent, {2, 3}, InstanceKind::Constrained},
  };
  EXPECT_EQ(establish(occs), 4);
  occs[0].kind = occs[1].kind = InstanceKind::Constrained;
  EXPECT_EQ(establish(occs), std::nullopt);
}

TEST(Lexicon, TwoTurnHotel) {
  DialogueLexicon lex = build_lexicon(norm({"hotel", "hotel"}), nullptr);
  ASSERT_EQ(lex.entries.size(), 1u);
  EXPECT_EQ(lex.entries[0].established_at, 2);
  EXPECT_EQ(lex.entries[0].initiator, Speaker::User);
  EXPECT_EQ(lex.entries[0].display_form, "hotel");
}

TEST(Lexicon, InitiatorIsFirstUser) {
  DialogueLexicon lex = build_lexicon(norm({"taxi", "hotel", "hotel"}), nullptr);
  ASSERT_EQ(lex.entries.size(), 1u);
  EXPECT_EQ(lex.entries[0].initiator, Speaker::Agent);
  EXPECT_EQ(lex.entries[0].established_at, 3);
}

TEST(Lexicon, EmptyDialogueGivesEmptyLexicon) {
  Dialogue d;
  d.id = "empty";
  EXPECT_TRUE(build_lexicon(d, nullptr).entries.empty());
}

// Free/constrained is decided against the whole dialogue, so a later turn
// that creates a longer shared key can retract an establishment seen in a
// prefix of the same dialogue.
TEST(Lexicon, LaterTurnsCanConstrainEarlierInstances) {
  std::vector<std::string> texts = {"hotel taxi", "hotel museum", "hotel museum", "hotel taxi"};
  DialogueLexicon prefix = build_lexicon(norm({texts[0], texts[1]}), nullptr);
  DialogueLexicon full = build_lexicon(norm(texts), nullptr);
  ASSERT_NE(prefix.find("hotel"), nullptr);
  EXPECT_EQ(prefix.find("hotel")->established_at, 2);
  ASSERT_NE(full.find("hotel"), nullptr);
  EXPECT_FALSE(full.find("hotel")->established());
}

TEST(Lexicon, GoldenEstablishedEntries) {
  const DialogueLexicon& lex = entrain::testing::golden().lexicon;
  struct Want {
    const char* key;
    int at;
    Speaker init;
  };
  const std::vector<Want> want = {
      {"ask", 5, Speaker::Agent},           {"center", 13, Speaker::User},
      {"center of town", 2, Speaker::User}, {"dai", 20, Speaker::User},
      {"hotel", 10, Speaker::User},         {"italian restaur", 2, Speaker::User},
      {"price rang", 11, Speaker::Agent},   {"refer number", 17, Speaker::Agent},
      {"restaur", 3, Speaker::User},        {"tabl", 6, Speaker::User},
  };
  EXPECT_EQ(lex.established_count(), want.size());
  for (const Want& w : want) {
    const LexiconEntry* e = lex.find(w.key);
    ASSERT_NE(e, nullptr) << w.key;
    EXPECT_EQ(e->established_at, w.at) << w.key;
    EXPECT_EQ(e->initiator, w.init) << w.key;
  }
  for (const char* k : {"italian", "number", "price", "rang", "refer", "town"}) {
    const LexiconEntry* e = lex.find(k);
    ASSERT_NE(e, nullptr) << k;
    EXPECT_FALSE(e->established()) << k;
    for (const Occurrence& o : e->occurrences) EXPECT_EQ(o.kind, InstanceKind::Constrained) << k;
  }
  EXPECT_EQ(lex.find("center of town")->display_form, "center of town");
}

TEST(Lexicon, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(20261016);
  entrain::testing::GenOptions opts;
  opts.vocab = 4;
  opts.punct_rate = 0.1;
  for (int i = 0; i < 400; ++i) {
    Dialogue d = normalize_dialogue(entrain::testing::random_dialogue(rng, opts, "r" + std::to_string(i)),
                                    NormalizationConfig{});
    std::string diff;
    EXPECT_TRUE(entrain::testing::same_lexicon(entrain::testing::oracle_lexicon(d),
                                      entrain::testing::as_oracle(build_lexicon(d, nullptr)), &diff))
        << "case " << i << ": " << diff;
  }
}
