// tests/test_filter.cpp

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

#include "entrain/filter.hpp"
#include "entrain/lexicon.hpp"
#include "support/generators.hpp"

using namespace entrain;

namespace {

const FilterDictionaries& dicts() { return entrain::testing::bundled_annotator().dictionaries(); }
const NormalizationConfig& norm() { return entrain::testing::bundled_annotator().normalization(); }

ExpressionKey key_of(std::string_view text) {
  ExpressionKey k;
  for (const RawToken& t : tokenize(text)) k.push_back(normalize_token(t.surface, norm()));
  return k;
}

bool accepted(std::string_view phrase, std::string_view utterance) {
  auto toks = tokenize(phrase);
  return is_noun_phrase(key_of(phrase), toks.back().surface, utterance, dicts());
}

}  // namespace

TEST(Trim, DropsStopwordsAtEdgesOnly) {
  EXPECT_EQ(trim_edges(key_of("the hotel"), dicts()), key_of("hotel"));
  EXPECT_EQ(trim_edges(key_of("center of town"), dicts()), key_of("center of town"));
  EXPECT_EQ(trim_edges(key_of("in the center of"), dicts()), key_of("center"));
  EXPECT_EQ(trim_edges(key_of("in the"), dicts()), std::nullopt);
  auto t = trim_edges_detail(key_of("for the price range"), dicts());
  ASSERT_TRUE(t);
  EXPECT_EQ(t->lead, 2u);
  EXPECT_EQ(t->trail, 0u);
}

TEST(NounPhrase, HeadRules) {
  EXPECT_TRUE(accepted("reference number", "your reference number is X"));
  EXPECT_TRUE(accepted("price range", "price range"));
  EXPECT_FALSE(accepted("book", "can you book it"));
  EXPECT_FALSE(accepted("cheap", "a cheap one"));
  EXPECT_FALSE(accepted("7", "for 7"));
  EXPECT_FALSE(accepted("hotel near", "hotel near here"));
}

TEST(NounPhrase, BookingContexts) {
  for (const char* u : {"Are you booking for tonight?", "Check before booking it.",
                        "I can do booking your table.", "Shall i booking it", "Try booking the room.",
                        "Keep booking that one", "Any trouble in booking?", "I will be booking now."}) {
    EXPECT_FALSE(accepted("booking", u)) << u;
  }
  EXPECT_TRUE(accepted("booking", "Your train booking was successful."));
  EXPECT_TRUE(accepted("booking", "The booking is done."));
}

TEST(NounPhrase, HelpContexts) {
  for (const char* u : {"Can you help me?", "Can I help with anything else?", "Could you help?",
                        "Glad to help you.", "This could help.", "That would help.",
                        "It may help.", "It might help.", "Please help me.", "It will help.",
                        "Happy to help.", "I can help.", "Can you please help?"}) {
    EXPECT_FALSE(accepted("help", u)) << u;
  }
  EXPECT_TRUE(accepted("help", "Thanks for all of your help."));
}

TEST(NounPhrase, ContextRuleTakesPrecedenceOverVerbList) {
  // "ask" is in the verb list, but a venue called Ask outside the listed
  // patterns is kept.
  EXPECT_TRUE(accepted("Ask", "A table at Ask, please."));
  EXPECT_FALSE(accepted("ask", "May I ask you something?"));
}

TEST(Filter, DropsFunctionPhrases) {
  Dialogue d = normalize_dialogue(
      entrain::testing::make_dialogue({"I would like to book a hotel in the north for 7.",
                              "You would like to book a hotel in the north for 7?"}),
      norm());
  DialogueLexicon lex = build_lexicon(d, &dicts());
  for (const char* bad : {"in the", "for 7", "7", "like to book", "book", "like", "would"}) {
    EXPECT_EQ(lex.find(key_of(bad)), nullptr) << bad;
  }
  EXPECT_NE(lex.find("hotel"), nullptr);
}

TEST(Filter, MergedKeysKeepOccurrenceCount) {
  // "the hotel" and "hotel" trim to the same key; the merged entry must not
  // count the same span twice.
  Dialogue d = normalize_dialogue(
      entrain::testing::make_dialogue({"the hotel is full", "the hotel is nice", "a hotel"}), norm());
  CandidateSet raw = mine_shared(d);
  CandidateSet filtered = apply_filter(raw, d, dicts());
  ASSERT_TRUE(filtered.count({"hotel"}));
  EXPECT_EQ(filtered.at({"hotel"}).size(), 3u);
}

TEST(Filter, EveryKeptKeyIsTrimmedAndShared) {
  std::mt19937_64 rng(7);
  entrain::testing::GenOptions opts;
  opts.vocab = 6;
  static const std::vector<std::string> fillers = {"the", "a", "of", "booking", "help", "cheap",
                                                   "7", "for", "in"};
  for (int i = 0; i < 300; ++i) {
    Dialogue raw = entrain::testing::random_dialogue(rng, opts, "f" + std::to_string(i));
    for (Utterance& u : raw.utterances) {
      u.raw_text += " " + fillers[rng() % fillers.size()] + " " + entrain::testing::noun_vocab()[rng() % 3];
    }
    Dialogue d = normalize_dialogue(raw, norm());
    CandidateSet f = apply_filter(mine_shared(d), d, dicts());
    for (const auto& [k, occs] : f) {
      EXPECT_FALSE(dicts().stopwords.count(k.front()));
      EXPECT_FALSE(dicts().stopwords.count(k.back()));
      bool user = false, agent = false;
      for (const Occurrence& o : occs) {
        (o.speaker == Speaker::User ? user : agent) = true;
        const Utterance& u = d.at(o.utterance_index);
        for (std::size_t t = 0; t < k.size(); ++t) {
          EXPECT_EQ(u.tokens.at(o.span.begin + t).canonical, k[t]);
        }
      }
      EXPECT_TRUE(user && agent) << key_string(k);
    }
  }
}
