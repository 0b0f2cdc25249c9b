// entrain/expression.hpp

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

// Shared-expression candidates: mining n-grams used by both speakers,
// typing each occurrence free or constrained, and finding the turn where an
// expression becomes established.

#ifndef ENTRAIN_EXPRESSION_HPP_
#define ENTRAIN_EXPRESSION_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "entrain/corpus.hpp"
#include "entrain/normalize.hpp"
#include "entrain/token.hpp"

namespace entrain {

/// Canonical tokens of an expression, e.g. {"italian", "restaur"}.
using ExpressionKey = std::vector<std::string>;

inline std::string key_string(const ExpressionKey& key) {
  std::string out;
  for (const std::string& t : key) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

enum class InstanceKind { Free, Constrained };

inline std::string_view to_string(InstanceKind k) {
  return k == InstanceKind::Free ? "free" : "constrained";
}

inline InstanceKind parse_instance_kind(std::string_view s) {
  if (s == "free") return InstanceKind::Free;
  if (s == "constrained") return InstanceKind::Constrained;
  throw ParseError("unknown instance kind '" + std::string(s) + "'");
}

struct Occurrence {
  int utterance_index = 0;
  Speaker speaker = Speaker::User;
  TokenSpan span;
  InstanceKind kind = InstanceKind::Free;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

/// Dialogue order: utterance, then span start.
inline bool occurrence_order(const Occurrence& a, const Occurrence& b) {
  if (a.utterance_index != b.utterance_index) return a.utterance_index < b.utterance_index;
  return a.span < b.span;
}

using CandidateSet = std::map<ExpressionKey, std::vector<Occurrence>>;

inline constexpr std::size_t kDefaultMaxNgram = 20;

/// Every mask-free canonical n-gram (n <= max_ngram) that appears in at
/// least one user turn and one agent turn, with all of its occurrences in
/// the dialogue. Within one utterance, self-overlapping matches are resolved
/// leftmost first.
///
/// Level-wise: an (n+1)-gram can only be shared if both of its n-gram
/// halves are, so each level only extends positions that survived the last.
inline CandidateSet mine_shared(const Dialogue& d, std::size_t max_ngram = kDefaultMaxNgram) {
  CandidateSet out;
  if (max_ngram == 0) return out;

  std::unordered_map<std::string, int> intern;
  std::vector<std::vector<int>> ids(d.utterances.size());
  std::vector<const std::string*> names;
  for (std::size_t u = 0; u < d.utterances.size(); ++u) {
    for (const NormalizedToken& t : d.utterances[u].tokens) {
      if (t.is_punct_mask) {
        ids[u].push_back(-1);
        continue;
      }
      auto [it, inserted] = intern.emplace(t.canonical, static_cast<int>(names.size()));
      if (inserted) names.push_back(&it->first);
      ids[u].push_back(it->second);
    }
  }

  // alive[u][i]: the n-gram starting at token i of utterance u is shared.
  std::vector<std::vector<char>> alive(d.utterances.size());
  for (std::size_t u = 0; u < ids.size(); ++u) alive[u].assign(ids[u].size(), 1);

  for (std::size_t n = 1; n <= max_ngram; ++n) {
    std::map<std::vector<int>, unsigned> speakers;  // bit 0 user, bit 1 agent
    std::vector<std::vector<char>> next(d.utterances.size());
    bool any = false;
    for (std::size_t u = 0; u < ids.size(); ++u) {
      next[u].assign(ids[u].size(), 0);
      if (ids[u].size() < n) continue;
      for (std::size_t i = 0; i + n <= ids[u].size(); ++i) {
        bool candidate = n == 1 ? ids[u][i] >= 0 : (alive[u][i] && alive[u][i + 1]);
        if (!candidate) continue;
        next[u][i] = 1;
        std::vector<int> gram(ids[u].begin() + i, ids[u].begin() + i + n);
        speakers[gram] |= d.utterances[u].speaker == Speaker::User ? 1u : 2u;
        any = true;
      }
    }
    if (!any) break;

    any = false;
    for (std::size_t u = 0; u < ids.size(); ++u) {
      std::map<std::vector<int>, std::size_t> last_end;
      for (std::size_t i = 0; i + n <= ids[u].size(); ++i) {
        if (!next[u][i]) continue;
        std::vector<int> gram(ids[u].begin() + i, ids[u].begin() + i + n);
        if (speakers[gram] != 3u) {
          next[u][i] = 0;
          continue;
        }
        any = true;
        auto [it, fresh] = last_end.emplace(gram, 0);
        if (!fresh && i < it->second) continue;  // overlaps the previous match
        it->second = i + n;
        ExpressionKey key;
        key.reserve(n);
        for (int id : gram) key.push_back(*names[static_cast<std::size_t>(id)]);
        out[key].push_back({d.utterances[u].index, d.utterances[u].speaker, {i, i + n},
                            InstanceKind::Free});
      }
    }
    if (!any) break;
    alive = std::move(next);
  }
  for (auto& [key, occs] : out) std::sort(occs.begin(), occs.end(), occurrence_order);
  return out;
}

/// Constrained iff a longer candidate has an occurrence in the same
/// utterance whose span contains this one; Free otherwise.
inline void classify_instances(CandidateSet& candidates) {
  struct Ref {
    std::size_t len;
    TokenSpan span;
    Occurrence* occ;
  };
  std::map<int, std::vector<Ref>> by_utt;
  for (auto& [key, occs] : candidates) {
    for (Occurrence& o : occs) by_utt[o.utterance_index].push_back({key.size(), o.span, &o});
  }
  for (auto& [utt, refs] : by_utt) {
    for (Ref& r : refs) {
      bool contained = std::any_of(refs.begin(), refs.end(), [&](const Ref& other) {
        return other.len > r.len && other.span.contains(r.span);
      });
      r.occ->kind = contained ? InstanceKind::Constrained : InstanceKind::Free;
    }
  }
}

/// Smallest utterance index j such that the occurrences at or before j
/// include both speakers and at least one free instance.
inline std::optional<int> establish(const std::vector<Occurrence>& occs) {
  std::vector<Occurrence> sorted = occs;
  std::sort(sorted.begin(), sorted.end(), occurrence_order);
  bool user = false, agent = false, free = false;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Occurrence& o = sorted[i];
    (o.speaker == Speaker::User ? user : agent) = true;
    free = free || o.kind == InstanceKind::Free;
    bool last_in_utt = i + 1 == sorted.size() || sorted[i + 1].utterance_index != o.utterance_index;
    if (last_in_utt && user && agent && free) return o.utterance_index;
  }
  return std::nullopt;
}

}  // namespace entrain

#endif  // ENTRAIN_EXPRESSION_HPP_
