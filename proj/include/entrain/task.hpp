// entrain/task.hpp

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

// Extraction-task samples and span-level scoring. A sample asks a model
// to mark, in one target utterance, every free instance of an expression
// established at or before that utterance, given a window of history.

#ifndef ENTRAIN_TASK_HPP_
#define ENTRAIN_TASK_HPP_

#include <istream>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "entrain/annotation.hpp"
#include "entrain/error.hpp"
#include "entrain/rational.hpp"

namespace entrain {

/// Number of preceding utterances a model sees; kFullHistory for all.
inline constexpr int kFullHistory = -1;

inline int parse_history(std::string_view s) {
  if (s == "full") return kFullHistory;
  try {
    int h = std::stoi(std::string(s));
    if (h >= 1 && std::to_string(h) == s) return h;
  } catch (const std::exception&) {
  }
  throw ParseError("history must be a positive integer or 'full', got '" + std::string(s) + "'");
}

inline std::string history_string(int h) { return h == kFullHistory ? "full" : std::to_string(h); }

enum class RoleSelection { Agent, User, Both };

inline RoleSelection parse_roles(std::string_view s) {
  if (s == "agent") return RoleSelection::Agent;
  if (s == "user") return RoleSelection::User;
  if (s == "both") return RoleSelection::Both;
  throw ParseError("roles must be agent, user or both, got '" + std::string(s) + "'");
}

struct ContextTurn {
  int index = 0;
  Speaker speaker = Speaker::User;
  std::string text;
};

struct GoldSpan {
  TokenSpan span;
  std::string key;
  /// False when no other-speaker use of the expression falls inside the
  /// history window, i.e. the model cannot know it is established.
  bool in_window = true;
};

struct ExtractionSample {
  std::string sample_id;  // "<dialogue_id>#<target_index>"
  std::string dialogue_id;
  int target_index = 0;
  Speaker role = Speaker::Agent;
  std::vector<ContextTurn> history;  // oldest first, ends at target_index - 1
  std::string target_text;
  std::vector<std::string> target_tokens;  // surface forms, mask tokens included
  std::vector<GoldSpan> gold_spans;        // sorted by span
  int out_of_window_gold = 0;
};

struct SampleOptions {
  int history = kFullHistory;
  RoleSelection roles = RoleSelection::Agent;
  /// Keep only targets with at least one gold span.
  bool only_positive = false;
};

inline std::string make_sample_id(const std::string& dialogue_id, int target_index) {
  return dialogue_id + "#" + std::to_string(target_index);
}

inline std::vector<ExtractionSample> build_samples(const AnnotatedDialogue& a,
                                                   const SampleOptions& opts) {
  const Dialogue& d = a.dialogue;
  std::vector<ExtractionSample> out;
  for (const Utterance& u : d.utterances) {
    if ((opts.roles == RoleSelection::Agent && u.speaker != Speaker::Agent) ||
        (opts.roles == RoleSelection::User && u.speaker != Speaker::User)) {
      continue;
    }
    const int t = u.index;
    const int first = opts.history == kFullHistory ? 1 : std::max(1, t - opts.history);
    ExtractionSample s;
    s.sample_id = make_sample_id(d.id, t);
    s.dialogue_id = d.id;
    s.target_index = t;
    s.role = u.speaker;
    for (int i = first; i < t; ++i) {
      const Utterance& h = d.at(i);
      s.history.push_back({h.index, h.speaker, h.raw_text});
    }
    s.target_text = u.raw_text;
    for (const NormalizedToken& tok : u.tokens) s.target_tokens.push_back(tok.surface);

    for (const LexiconEntry& e : a.lexicon.entries) {
      if (!e.established() || *e.established_at > t) continue;
      bool evidence = std::any_of(e.occurrences.begin(), e.occurrences.end(), [&](const Occurrence& o) {
        return o.speaker != u.speaker && o.utterance_index >= first && o.utterance_index < t;
      });
      for (const Occurrence& o : e.occurrences) {
        if (o.utterance_index != t || o.kind != InstanceKind::Free) continue;
        s.gold_spans.push_back({o.span, key_string(e.key), evidence});
        if (!evidence) ++s.out_of_window_gold;
      }
    }
    std::sort(s.gold_spans.begin(), s.gold_spans.end(),
              [](const GoldSpan& x, const GoldSpan& y) { return x.span < y.span; });
    if (opts.only_positive && s.gold_spans.empty()) continue;
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<ExtractionSample> build_samples(const std::vector<AnnotatedDialogue>& corpus,
                                                   const SampleOptions& opts) {
  std::vector<ExtractionSample> out;
  for (const AnnotatedDialogue& a : corpus) {
    auto s = build_samples(a, opts);
    out.insert(out.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interchange

inline Json sample_to_json(const ExtractionSample& s) {
  Json j;
  j["sample_id"] = s.sample_id;
  j["dialogue_id"] = s.dialogue_id;
  j["target_index"] = s.target_index;
  j["role"] = std::string(to_string(s.role));
  Json hist = Json::array();
  for (const ContextTurn& c : s.history) {
    hist.push_back(Json{{"index", c.index}, {"speaker", std::string(to_string(c.speaker))},
                        {"text", c.text}});
  }
  j["history"] = std::move(hist);
  j["target"] = Json{{"text", s.target_text}, {"tokens", s.target_tokens}};
  Json gold = Json::array();
  for (const GoldSpan& g : s.gold_spans) {
    gold.push_back(Json{{"span", Json::array({g.span.begin, g.span.end})},
                        {"key", g.key},
                        {"in_window", g.in_window}});
  }
  j["gold"] = std::move(gold);
  j["out_of_window_gold"] = s.out_of_window_gold;
  return j;
}

template <typename J>
ExtractionSample sample_from_json(const J& j) {
  using detail::require;
  ExtractionSample s;
  try {
    s.sample_id = require(j, "sample_id").template get<std::string>();
    s.dialogue_id = require(j, "dialogue_id").template get<std::string>();
    s.target_index = require(j, "target_index").template get<int>();
    s.role = parse_speaker(require(j, "role").template get<std::string>());
    for (const auto& c : require(j, "history")) {
      s.history.push_back({require(c, "index").template get<int>(),
                           parse_speaker(require(c, "speaker").template get<std::string>()),
                           require(c, "text").template get<std::string>()});
    }
    const auto& target = require(j, "target");
    s.target_text = require(target, "text").template get<std::string>();
    s.target_tokens = require(target, "tokens").template get<std::vector<std::string>>();
    for (const auto& g : require(j, "gold")) {
      auto [b, e] = detail::parse_span(require(g, "span"));
      s.gold_spans.push_back({{b, e},
                              require(g, "key").template get<std::string>(),
                              require(g, "in_window").template get<bool>()});
    }
    s.out_of_window_gold = require(j, "out_of_window_gold").template get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad sample record: ") + e.what());
  }
  return s;
}

/// Generic JSONL reader; `parse` turns one parsed line into a T.
template <typename T, typename F>
std::vector<T> read_jsonl(std::istream& in, const std::string& name, F parse) {
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse(Json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(name + ": line " + std::to_string(line_no) + ": " + e.what(), line_no,
                       e.byte);
    } catch (const Error& e) {
      throw ParseError(name + ": line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return out;
}

inline std::vector<ExtractionSample> read_samples(std::istream& in,
                                                  const std::string& name = "<samples>") {
  return read_jsonl<ExtractionSample>(in, name, [](const Json& j) { return sample_from_json(j); });
}

struct Prediction {
  std::string sample_id;
  std::vector<TokenSpan> spans;
};

inline Json prediction_to_json(const Prediction& p) {
  Json spans = Json::array();
  for (const TokenSpan& s : p.spans) spans.push_back(Json::array({s.begin, s.end}));
  return Json{{"sample_id", p.sample_id}, {"spans", std::move(spans)}};
}

inline std::vector<Prediction> read_predictions(std::istream& in,
                                                const std::string& name = "<predictions>") {
  return read_jsonl<Prediction>(in, name, [](const Json& j) {
    Prediction p;
    try {
      p.sample_id = detail::require(j, "sample_id").get<std::string>();
      for (const auto& s : detail::require(j, "spans")) {
        auto [b, e] = detail::parse_span(s);
        if (b == e) throw ParseError("empty predicted span");
        p.spans.push_back({b, e});
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad prediction record: ") + e.what());
    }
    return p;
  });
}

// ---------------------------------------------------------------------------
// Scoring

struct EvalResult {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  Rational precision;
  Rational recall;
  Rational f1;
};

/// Exact-span matching. A prediction equal to an in-window gold span is a
/// true positive; a prediction equal to an out-of-window gold span is
/// ignored; anything else is a false positive. Missed in-window spans and
/// every out-of-window span are false negatives. Samples without a
/// prediction count as predicting nothing.
inline EvalResult evaluate(const std::vector<Prediction>& predictions,
                           const std::vector<ExtractionSample>& samples) {
  std::unordered_map<std::string, const ExtractionSample*> by_id;
  for (const ExtractionSample& s : samples) by_id.emplace(s.sample_id, &s);
  std::unordered_map<std::string, std::set<TokenSpan>> predicted;
  for (const Prediction& p : predictions) {
    if (!by_id.count(p.sample_id)) {
      throw ValidationError("prediction for unknown sample id '" + p.sample_id + "'");
    }
    predicted[p.sample_id].insert(p.spans.begin(), p.spans.end());
  }
  EvalResult r;
  for (const ExtractionSample& s : samples) {
    std::map<TokenSpan, bool> gold;  // span -> in_window
    for (const GoldSpan& g : s.gold_spans) gold[g.span] = g.in_window;
    std::set<TokenSpan> hit;
    if (auto it = predicted.find(s.sample_id); it != predicted.end()) {
      for (const TokenSpan& p : it->second) {
        auto g = gold.find(p);
        if (g == gold.end()) {
          ++r.fp;
        } else if (g->second) {
          ++r.tp;
          hit.insert(p);
        }
      }
    }
    for (const auto& [span, in_window] : gold) {
      if (!in_window || !hit.count(span)) ++r.fn;
    }
  }
  r.precision = r.tp + r.fp > 0 ? Rational(r.tp, r.tp + r.fp) : Rational(0);
  r.recall = r.tp + r.fn > 0 ? Rational(r.tp, r.tp + r.fn) : Rational(0);
  Rational sum = r.precision + r.recall;
  r.f1 = sum.num() > 0 ? Rational(2) * r.precision * r.recall / sum : Rational(0);
  return r;
}

/// Reference predictor: every gold span the history window supports.
inline std::vector<Prediction> oracle_predictions(const std::vector<ExtractionSample>& samples) {
  std::vector<Prediction> out;
  out.reserve(samples.size());
  for (const ExtractionSample& s : samples) {
    Prediction p{s.sample_id, {}};
    for (const GoldSpan& g : s.gold_spans) {
      if (g.in_window) p.spans.push_back(g.span);
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline Json eval_to_json(const EvalResult& r) {
  return Json{{"tp", r.tp},
              {"fp", r.fp},
              {"fn", r.fn},
              {"precision", detail::rational_json(r.precision)},
              {"recall", detail::rational_json(r.recall)},
              {"f1", detail::rational_json(r.f1)}};
}

}  // namespace entrain

#endif  // ENTRAIN_TASK_HPP_
