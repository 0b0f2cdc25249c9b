// entrain/filter.hpp

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

// Rule-based noun-phrase filter over mined candidates: edge-stopword
// trimming, word-class dictionaries and context patterns for words that
// are sometimes verbs ("booking", "help").

#ifndef ENTRAIN_FILTER_HPP_
#define ENTRAIN_FILTER_HPP_

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "entrain/corpus.hpp"
#include "entrain/expression.hpp"
#include "entrain/normalize.hpp"
#include "entrain/resources.hpp"

namespace entrain {

struct FilterDictionaries {
  // Canonical forms (normalized with the run's NormalizationConfig).
  std::unordered_set<std::string> stopwords;
  std::unordered_set<std::string> verbs;
  std::unordered_set<std::string> adjectives_adverbs;
  std::unordered_set<std::string> undesired;
  // Lowercase surface word -> patterns. Patterns keep their edge spaces.
  std::map<std::string, std::vector<std::string>> context_rules;

  /// Reads stopwords.txt, verbs.txt, adjectives_adverbs.txt, undesired.txt
  /// and context_rules.tsv from `dir`.
  static FilterDictionaries load(const std::filesystem::path& dir,
                                 const NormalizationConfig& norm) {
    FilterDictionaries d;
    auto fill = [&](std::unordered_set<std::string>& set, const char* file) {
      for (const std::string& w : read_word_list(dir / file)) set.insert(normalize_token(w, norm));
    };
    fill(d.stopwords, "stopwords.txt");
    fill(d.verbs, "verbs.txt");
    fill(d.adjectives_adverbs, "adjectives_adverbs.txt");
    fill(d.undesired, "undesired.txt");
    for (auto& [word, pattern] : read_pair_list(dir / "context_rules.tsv")) {
      d.context_rules[detail::to_lower_utf8(word)].push_back(detail::to_lower_utf8(pattern));
    }
    return d;
  }
};

/// Result of trimming: the inner key and how many tokens came off each end.
struct TrimmedKey {
  ExpressionKey key;
  std::size_t lead = 0;
  std::size_t trail = 0;
};

inline std::optional<TrimmedKey> trim_edges_detail(const ExpressionKey& key,
                                                   const FilterDictionaries& dicts) {
  std::size_t b = 0, e = key.size();
  while (b < e && dicts.stopwords.count(key[b])) ++b;
  while (e > b && dicts.stopwords.count(key[e - 1])) --e;
  if (b == e) return std::nullopt;
  return TrimmedKey{ExpressionKey(key.begin() + b, key.begin() + e), b, key.size() - e};
}

/// Strips stopwords off both ends; interior stopwords stay.
inline std::optional<ExpressionKey> trim_edges(const ExpressionKey& key,
                                               const FilterDictionaries& dicts) {
  auto t = trim_edges_detail(key, dicts);
  if (!t) return std::nullopt;
  return std::move(t->key);
}

namespace detail {

/// Digits and in-word punctuation only ("7", "13:00", "15.50").
inline bool is_numeric_token(std::string_view s) {
  bool digit = false;
  for (unsigned char c : s) {
    if (std::isalpha(c) || c >= 0x80) return false;
    digit = digit || std::isdigit(c);
  }
  return digit;
}

}  // namespace detail

/// Verdict for one occurrence of an edge-trimmed key. `head_surface` is the
/// surface text of the key's last token in this occurrence; `utterance` is
/// that occurrence's raw utterance text.
inline bool is_noun_phrase(const ExpressionKey& key, std::string_view head_surface,
                           std::string_view utterance, const FilterDictionaries& dicts) {
  if (key.empty()) return false;
  for (const std::string& t : key) {
    if (dicts.undesired.count(t)) return false;
  }
  std::string head_word = detail::to_lower_utf8(head_surface);
  if (auto rule = dicts.context_rules.find(head_word); rule != dicts.context_rules.end()) {
    std::string text = detail::to_lower_utf8(utterance);
    for (const std::string& pattern : rule->second) {
      if (text.find(pattern) != std::string::npos) return false;
    }
    return true;
  }
  const std::string& head = key.back();
  if (dicts.verbs.count(head) || dicts.adjectives_adverbs.count(head)) return false;
  if (detail::is_numeric_token(head)) return false;
  return true;
}

/// Trims every key (shrinking its spans), merges keys that collapse to the
/// same trimmed form, drops occurrences judged not to be noun phrases and
/// finally drops keys no longer used by both speakers.
inline CandidateSet apply_filter(const CandidateSet& candidates, const Dialogue& d,
                                 const FilterDictionaries& dicts) {
  CandidateSet merged;
  for (const auto& [key, occs] : candidates) {
    auto t = trim_edges_detail(key, dicts);
    if (!t) continue;
    std::vector<Occurrence>& dst = merged[t->key];
    for (Occurrence o : occs) {
      o.span = {o.span.begin + t->lead, o.span.end - t->trail};
      dst.push_back(o);
    }
  }

  CandidateSet out;
  for (auto& [key, occs] : merged) {
    std::sort(occs.begin(), occs.end(), occurrence_order);
    occs.erase(std::unique(occs.begin(), occs.end(),
                           [](const Occurrence& a, const Occurrence& b) {
                             return a.utterance_index == b.utterance_index && a.span == b.span;
                           }),
               occs.end());
    std::vector<Occurrence> kept;
    bool user = false, agent = false;
    for (const Occurrence& o : occs) {
      const Utterance& u = d.at(o.utterance_index);
      const NormalizedToken& head = u.tokens.at(o.span.end - 1);
      if (!is_noun_phrase(key, head.surface, u.raw_text, dicts)) continue;
      (o.speaker == Speaker::User ? user : agent) = true;
      kept.push_back(o);
    }
    if (user && agent) out.emplace(key, std::move(kept));
  }
  return out;
}

}  // namespace entrain

#endif  // ENTRAIN_FILTER_HPP_
