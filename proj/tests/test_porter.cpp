// tests/test_porter.cpp

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

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "entrain/porter.hpp"
#include "support/generators.hpp"

using namespace entrain;

// porter_reference.tsv holds word, NLTK PorterStemmer(MARTIN_EXTENSIONS)
// and PorterStemmer(NLTK_EXTENSIONS) outputs, generated once from NLTK 3.10.
TEST(Porter, MatchesReferenceList) {
  std::ifstream in(entrain::testing::test_data("porter_reference.tsv"));
  ASSERT_TRUE(in);
  std::string line;
  std::size_t checked = 0, porter_bad = 0, nltk_bad = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string word, porter, nltk;
    std::getline(fields, word, '\t');
    std::getline(fields, porter, '\t');
    std::getline(fields, nltk, '\t');
    ++checked;
    if (stem_word(word, StemmerKind::Porter) != porter) {
      if (++porter_bad <= 10) ADD_FAILURE() << "porter(" << word << ") = "
                                            << stem_word(word, StemmerKind::Porter) << ", want " << porter;
    }
    if (stem_word(word, StemmerKind::Nltk) != nltk) {
      if (++nltk_bad <= 10) ADD_FAILURE() << "nltk(" << word << ") = "
                                          << stem_word(word, StemmerKind::Nltk) << ", want " << nltk;
    }
  }
  EXPECT_GT(checked, 15000u);
  EXPECT_EQ(porter_bad, 0u);
  EXPECT_EQ(nltk_bad, 0u);
}

TEST(Porter, PaperExamples) {
  EXPECT_EQ(stem_word("restaurants", StemmerKind::Porter), "restaur");
  EXPECT_EQ(stem_word("restaurant", StemmerKind::Porter), "restaur");
  EXPECT_EQ(stem_word("tables", StemmerKind::Porter), "tabl");
  EXPECT_EQ(stem_word("reference", StemmerKind::Porter), "refer");
}

TEST(Porter, ShortWordsUntouched) {
  EXPECT_EQ(stem_word("is", StemmerKind::Porter), "is");
  EXPECT_EQ(stem_word("as", StemmerKind::Nltk), "as");
}

TEST(Porter, NoneIsIdentity) {
  EXPECT_EQ(stem_word("restaurants", StemmerKind::None), "restaurants");
}

TEST(Porter, VariantsDiffer) {
  // Irregular table and y -> i after a consonant only.
  EXPECT_EQ(stem_word("skies", StemmerKind::Nltk), "sky");
  EXPECT_EQ(stem_word("skies", StemmerKind::Porter), "ski");
  EXPECT_EQ(stem_word("ties", StemmerKind::Nltk), "tie");
  EXPECT_EQ(stem_word("ties", StemmerKind::Porter), "ti");
}

TEST(Porter, ParseKind) {
  EXPECT_EQ(parse_stemmer("porter"), StemmerKind::Porter);
  EXPECT_EQ(parse_stemmer("nltk"), StemmerKind::Nltk);
  EXPECT_EQ(parse_stemmer("none"), StemmerKind::None);
  EXPECT_THROW(parse_stemmer("snowball"), ParseError);
}
