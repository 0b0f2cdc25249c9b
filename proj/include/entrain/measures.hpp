// entrain/measures.hpp

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

// Dialogue- and expression-level entrainment measures. Every ratio is an
// exact Rational; rounding is left to display code.

#ifndef ENTRAIN_MEASURES_HPP_
#define ENTRAIN_MEASURES_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "entrain/corpus.hpp"
#include "entrain/lexicon.hpp"
#include "entrain/rational.hpp"

namespace entrain {

struct TurnEntrainment {
  int utterance_index = 0;
  Speaker speaker = Speaker::User;
  int count = 0;  // E_{s,j}

  friend bool operator==(const TurnEntrainment&, const TurnEntrainment&) = default;
};

struct ExpressionMeasures {
  int frequency = 0;
  int size = 0;
  int span = 0;
  Rational density;
  int priming = 0;
  int priming_distance = 0;

  friend bool operator==(const ExpressionMeasures&, const ExpressionMeasures&) = default;
};

struct DialogueMeasures {
  std::optional<Rational> entr_user;   // absent when the speaker never talks
  std::optional<Rational> entr_agent;
  int els = 0;
  std::optional<Rational> ier_user;    // absent when els == 0
  std::optional<Rational> ier_agent;
  Rational err_user;
  Rational err_agent;
  std::vector<TurnEntrainment> per_turn;
  std::map<std::string, ExpressionMeasures> per_expression;  // by key string

  friend bool operator==(const DialogueMeasures&, const DialogueMeasures&) = default;
};

/// E_{s,j}: free occurrences in turn j of entries established at or before j.
inline std::vector<TurnEntrainment> turn_counts(const DialogueLexicon& lex, const Dialogue& d) {
  std::vector<TurnEntrainment> out;
  out.reserve(d.utterances.size());
  for (const Utterance& u : d.utterances) out.push_back({u.index, u.speaker, 0});
  for (const LexiconEntry& e : lex.entries) {
    if (!e.established()) continue;
    for (const Occurrence& o : e.occurrences) {
      if (o.kind == InstanceKind::Free && o.utterance_index >= *e.established_at) {
        ++out.at(static_cast<std::size_t>(o.utterance_index - 1)).count;
      }
    }
  }
  return out;
}

/// Mean E_{s,j} over the speaker's own utterances.
inline Rational entr(const DialogueLexicon& lex, const Dialogue& d, Speaker s) {
  int n = d.count(s);
  if (n == 0) {
    throw MissingDataError("dialogue '" + d.id + "' has no " + std::string(to_string(s)) +
                           " utterances");
  }
  std::int64_t sum = 0;
  for (const TurnEntrainment& t : turn_counts(lex, d)) {
    if (t.speaker == s) sum += t.count;
  }
  return Rational(sum, n);
}

inline int els(const DialogueLexicon& lex) { return static_cast<int>(lex.established_count()); }

/// Share of established expressions the speaker initiated.
inline std::optional<Rational> ier(const DialogueLexicon& lex, Speaker s) {
  int total = els(lex);
  if (total == 0) return std::nullopt;
  int mine = 0;
  for (const LexiconEntry& e : lex.entries) {
    if (e.established() && e.initiator == s) ++mine;
  }
  return Rational(mine, total);
}

/// Tokens the speaker spends inside instances of established expressions,
/// over all non-mask tokens of the dialogue. A token covered by several
/// instances counts once.
inline Rational err(const DialogueLexicon& lex, const Dialogue& d, Speaker s) {
  std::int64_t total = 0;
  for (const Utterance& u : d.utterances) {
    for (const NormalizedToken& t : u.tokens) total += t.is_punct_mask ? 0 : 1;
  }
  if (total == 0) return Rational(0);
  std::set<std::pair<int, std::size_t>> covered;
  for (const LexiconEntry& e : lex.entries) {
    if (!e.established()) continue;
    for (const Occurrence& o : e.occurrences) {
      if (o.speaker != s) continue;
      for (std::size_t i = o.span.begin; i < o.span.end; ++i) covered.emplace(o.utterance_index, i);
    }
  }
  return Rational(static_cast<std::int64_t>(covered.size()), total);
}

inline ExpressionMeasures expression_measures(const LexiconEntry& e) {
  if (!e.established() || e.occurrences.empty()) {
    throw ContractViolation("expression_measures on unestablished entry '" + key_string(e.key) +
                            "'");
  }
  ExpressionMeasures m;
  std::set<int> utts;
  for (const Occurrence& o : e.occurrences) utts.insert(o.utterance_index);
  m.frequency = static_cast<int>(utts.size());
  m.size = static_cast<int>(e.key.size());
  m.span = *utts.rbegin() - *utts.begin() + 1;
  m.density = Rational(m.frequency, m.span);

  const int initiator_first = e.occurrences.front().utterance_index;
  std::optional<int> other_first;
  for (const Occurrence& o : e.occurrences) {
    if (o.speaker != e.initiator) {
      other_first = o.utterance_index;
      break;
    }
  }
  if (!other_first) {
    throw ContractViolation("established entry '" + key_string(e.key) + "' has one speaker");
  }
  for (const Occurrence& o : e.occurrences) {
    if (o.speaker == e.initiator && o.utterance_index < *other_first) ++m.priming;
  }
  m.priming_distance = *other_first - initiator_first;
  return m;
}

inline DialogueMeasures compute_measures(const DialogueLexicon& lex, const Dialogue& d) {
  DialogueMeasures m;
  if (d.count(Speaker::User) > 0) m.entr_user = entr(lex, d, Speaker::User);
  if (d.count(Speaker::Agent) > 0) m.entr_agent = entr(lex, d, Speaker::Agent);
  m.els = els(lex);
  m.ier_user = ier(lex, Speaker::User);
  m.ier_agent = ier(lex, Speaker::Agent);
  m.err_user = err(lex, d, Speaker::User);
  m.err_agent = err(lex, d, Speaker::Agent);
  m.per_turn = turn_counts(lex, d);
  for (const LexiconEntry& e : lex.entries) {
    if (e.established()) m.per_expression.emplace(key_string(e.key), expression_measures(e));
  }
  return m;
}

}  // namespace entrain

#endif  // ENTRAIN_MEASURES_HPP_
