// entrain/lexicon.hpp

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

#ifndef ENTRAIN_LEXICON_HPP_
#define ENTRAIN_LEXICON_HPP_

#include <optional>
#include <string>
#include <vector>

#include "entrain/corpus.hpp"
#include "entrain/expression.hpp"
#include "entrain/filter.hpp"

namespace entrain {

struct LexiconEntry {
  ExpressionKey key;
  std::vector<Occurrence> occurrences;  // dialogue order
  std::optional<int> established_at;
  Speaker initiator = Speaker::User;
  std::string display_form;

  bool established() const { return established_at.has_value(); }
};

struct DialogueLexicon {
  std::string dialogue_id;
  std::vector<LexiconEntry> entries;  // sorted by key

  const LexiconEntry* find(const ExpressionKey& key) const {
    for (const LexiconEntry& e : entries) {
      if (e.key == key) return &e;
    }
    return nullptr;
  }
  const LexiconEntry* find(std::string_view key) const {
    for (const LexiconEntry& e : entries) {
      if (key_string(e.key) == key) return &e;
    }
    return nullptr;
  }
  std::size_t established_count() const {
    return static_cast<std::size_t>(std::count_if(
        entries.begin(), entries.end(), [](const LexiconEntry& e) { return e.established(); }));
  }
};

struct LexiconConfig {
  std::size_t max_ngram = kDefaultMaxNgram;
};

/// Raw text covered by an occurrence's tokens.
inline std::string surface_text(const Dialogue& d, const Occurrence& o) {
  const Utterance& u = d.at(o.utterance_index);
  std::size_t b = u.tokens.at(o.span.begin).char_span.begin;
  std::size_t e = u.tokens.at(o.span.end - 1).char_span.end;
  return u.raw_text.substr(b, e - b);
}

/// Turns classified candidates into entries: establishment, initiator and
/// display form.
inline DialogueLexicon assemble_lexicon(const Dialogue& d, CandidateSet candidates) {
  DialogueLexicon lex;
  lex.dialogue_id = d.id;
  for (auto& [key, occs] : candidates) {
    if (occs.empty()) continue;
    LexiconEntry e;
    e.key = key;
    e.occurrences = std::move(occs);
    std::sort(e.occurrences.begin(), e.occurrences.end(), occurrence_order);
    e.established_at = establish(e.occurrences);
    e.initiator = e.occurrences.front().speaker;
    e.display_form = surface_text(d, e.occurrences.front());
    lex.entries.push_back(std::move(e));
  }
  return lex;
}

/// mine -> filter -> classify -> establish. Filtering runs before typing so
/// a rejected superstring cannot make its substrings constrained. With
/// `dicts` null the filter is skipped (the raw shared-n-gram lexicon).
inline DialogueLexicon build_lexicon(const Dialogue& d, const FilterDictionaries* dicts,
                                     const LexiconConfig& cfg = {}) {
  CandidateSet c = mine_shared(d, cfg.max_ngram);
  if (dicts != nullptr) c = apply_filter(c, d, *dicts);
  classify_instances(c);
  return assemble_lexicon(d, std::move(c));
}

}  // namespace entrain

#endif  // ENTRAIN_LEXICON_HPP_
