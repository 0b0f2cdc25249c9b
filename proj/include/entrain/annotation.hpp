// entrain/annotation.hpp

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

// JSONL annotation records (schema 1), one dialogue per line. A record
// carries the normalized dialogue, its lexicon and its measures; reading it
// back gives the same AnnotatedDialogue.

#ifndef ENTRAIN_ANNOTATION_HPP_
#define ENTRAIN_ANNOTATION_HPP_

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "entrain/error.hpp"
#include "entrain/pipeline.hpp"

namespace entrain {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

namespace detail {

inline Json rational_json(const Rational& r) {
  return Json{{"exact", r.str()}, {"value", r.value()}};
}

inline Json rational_json(const std::optional<Rational>& r) {
  return r ? rational_json(*r) : Json(nullptr);
}

inline Json span_json(std::size_t b, std::size_t e) { return Json::array({b, e}); }

template <typename J>
const J& require(const J& obj, const char* key) {
  if (!obj.is_object()) throw ParseError(std::string("expected an object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

template <typename J>
Rational parse_rational(const J& j) {
  if (j.is_object()) return Rational::parse(require(j, "exact").template get<std::string>());
  if (j.is_string()) return Rational::parse(j.template get<std::string>());
  if (j.is_number_integer()) return Rational(j.template get<std::int64_t>());
  throw ParseError("expected a rational");
}

template <typename J>
std::optional<Rational> parse_optional_rational(const J& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return parse_rational(*it);
}

template <typename J>
std::pair<std::size_t, std::size_t> parse_span(const J& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("span must be [begin, end]");
  auto b = j[0].template get<std::size_t>();
  auto e = j[1].template get<std::size_t>();
  if (e < b) throw ParseError("span end before begin");
  return {b, e};
}

}  // namespace detail

inline Json to_json(const AnnotatedDialogue& a) {
  const Dialogue& d = a.dialogue;
  Json j;
  j["schema"] = kSchemaVersion;
  j["dialogue_id"] = d.id;
  j["split"] = std::string(to_string(d.split));
  j["domains"] = Json::array();
  for (const std::string& dom : d.domains) j["domains"].push_back(dom);

  Json utts = Json::array();
  for (const Utterance& u : d.utterances) {
    Json ju;
    ju["index"] = u.index;
    ju["speaker"] = std::string(to_string(u.speaker));
    ju["text"] = u.raw_text;
    Json toks = Json::array();
    for (const NormalizedToken& t : u.tokens) {
      toks.push_back(Json{{"surface", t.surface},
                          {"canonical", t.canonical},
                          {"span", detail::span_json(t.char_span.begin, t.char_span.end)},
                          {"mask", t.is_punct_mask}});
    }
    ju["tokens"] = std::move(toks);
    if (u.dialogue_act) {
      Json acts = Json::array();
      for (const DialogueAct& act : *u.dialogue_act) acts.push_back(Json::array({act.slot, act.value}));
      ju["dialogue_act"] = std::move(acts);
    }
    utts.push_back(std::move(ju));
  }
  j["utterances"] = std::move(utts);

  Json entries = Json::array();
  for (const LexiconEntry& e : a.lexicon.entries) {
    Json je;
    je["key"] = key_string(e.key);
    je["tokens"] = e.key;
    je["display_form"] = e.display_form;
    je["established_at"] = e.established_at ? Json(*e.established_at) : Json(nullptr);
    je["initiator"] = std::string(to_string(e.initiator));
    Json occs = Json::array();
    for (const Occurrence& o : e.occurrences) {
      occs.push_back(Json{{"utt", o.utterance_index},
                          {"speaker", std::string(to_string(o.speaker))},
                          {"span", detail::span_json(o.span.begin, o.span.end)},
                          {"kind", std::string(to_string(o.kind))}});
    }
    je["occurrences"] = std::move(occs);
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);

  const DialogueMeasures& m = a.measures;
  Json turns = Json::array();
  for (const TurnEntrainment& t : m.per_turn) {
    turns.push_back(Json{{"utt", t.utterance_index},
                         {"speaker", std::string(to_string(t.speaker))},
                         {"count", t.count}});
  }
  j["per_turn"] = std::move(turns);

  Json jm;
  jm["els"] = m.els;
  jm["entr_user"] = detail::rational_json(m.entr_user);
  jm["entr_agent"] = detail::rational_json(m.entr_agent);
  jm["ier_user"] = detail::rational_json(m.ier_user);
  jm["ier_agent"] = detail::rational_json(m.ier_agent);
  jm["err_user"] = detail::rational_json(m.err_user);
  jm["err_agent"] = detail::rational_json(m.err_agent);
  Json per_expr = Json::object();
  for (const auto& [key, em] : m.per_expression) {
    per_expr[key] = Json{{"frequency", em.frequency},
                         {"size", em.size},
                         {"span", em.span},
                         {"density", detail::rational_json(em.density)},
                         {"priming", em.priming},
                         {"priming_distance", em.priming_distance}};
  }
  jm["per_expression"] = std::move(per_expr);
  j["measures"] = std::move(jm);
  return j;
}

/// Inverse of to_json. Measures are read as stored, not recomputed.
template <typename J>
AnnotatedDialogue annotation_from_json(const J& j) {
  using detail::require;
  AnnotatedDialogue a;
  try {
    int schema = require(j, "schema").template get<int>();
    if (schema != kSchemaVersion) {
      throw ParseError("unsupported schema " + std::to_string(schema));
    }
    Dialogue& d = a.dialogue;
    d.id = require(j, "dialogue_id").template get<std::string>();
    if (auto it = j.find("split"); it != j.end()) d.split = parse_split(it->template get<std::string>());
    if (auto it = j.find("domains"); it != j.end()) {
      for (const auto& dom : *it) d.domains.insert(dom.template get<std::string>());
    }
    for (const auto& ju : require(j, "utterances")) {
      Utterance u;
      u.index = require(ju, "index").template get<int>();
      u.speaker = parse_speaker(require(ju, "speaker").template get<std::string>());
      u.raw_text = require(ju, "text").template get<std::string>();
      if (auto it = ju.find("tokens"); it != ju.end()) {
        for (const auto& jt : *it) {
          NormalizedToken t;
          t.surface = require(jt, "surface").template get<std::string>();
          t.canonical = require(jt, "canonical").template get<std::string>();
          auto [b, e] = detail::parse_span(require(jt, "span"));
          if (e > u.raw_text.size()) throw ParseError("token span outside utterance text");
          t.char_span = {b, e};
          t.is_punct_mask = require(jt, "mask").template get<bool>();
          u.tokens.push_back(std::move(t));
        }
      }
      if (auto it = ju.find("dialogue_act"); it != ju.end() && !it->is_null()) {
        std::vector<DialogueAct> acts;
        for (const auto& p : *it) {
          if (!p.is_array() || p.size() != 2) throw ParseError("dialogue_act items are [slot, value]");
          acts.push_back({p[0].template get<std::string>(), p[1].template get<std::string>()});
        }
        u.dialogue_act = std::move(acts);
      }
      d.utterances.push_back(std::move(u));
    }
    validate(d);

    a.lexicon.dialogue_id = d.id;
    for (const auto& je : require(j, "entries")) {
      LexiconEntry e;
      e.key = require(je, "tokens").template get<std::vector<std::string>>();
      if (e.key.empty()) throw ParseError("entry with empty key");
      e.display_form = require(je, "display_form").template get<std::string>();
      const auto& est = require(je, "established_at");
      if (!est.is_null()) e.established_at = est.template get<int>();
      e.initiator = parse_speaker(require(je, "initiator").template get<std::string>());
      for (const auto& jo : require(je, "occurrences")) {
        Occurrence o;
        o.utterance_index = require(jo, "utt").template get<int>();
        o.speaker = parse_speaker(require(jo, "speaker").template get<std::string>());
        auto [b, e2] = detail::parse_span(require(jo, "span"));
        o.span = {b, e2};
        o.kind = parse_instance_kind(require(jo, "kind").template get<std::string>());
        if (o.utterance_index < 1 || o.utterance_index > static_cast<int>(d.utterances.size()) ||
            o.span.end > d.at(o.utterance_index).tokens.size() || o.span.size() == 0) {
          throw ParseError("occurrence of '" + key_string(e.key) + "' outside the dialogue");
        }
        e.occurrences.push_back(o);
      }
      a.lexicon.entries.push_back(std::move(e));
    }

    DialogueMeasures& m = a.measures;
    const auto& jm = require(j, "measures");
    m.els = require(jm, "els").template get<int>();
    m.entr_user = detail::parse_optional_rational(jm, "entr_user");
    m.entr_agent = detail::parse_optional_rational(jm, "entr_agent");
    m.ier_user = detail::parse_optional_rational(jm, "ier_user");
    m.ier_agent = detail::parse_optional_rational(jm, "ier_agent");
    m.err_user = detail::parse_rational(require(jm, "err_user"));
    m.err_agent = detail::parse_rational(require(jm, "err_agent"));
    if (auto it = j.find("per_turn"); it != j.end()) {
      for (const auto& jt : *it) {
        m.per_turn.push_back({require(jt, "utt").template get<int>(),
                              parse_speaker(require(jt, "speaker").template get<std::string>()),
                              require(jt, "count").template get<int>()});
      }
    }
    if (auto it = jm.find("per_expression"); it != jm.end()) {
      for (const auto& [key, je] : it->items()) {
        ExpressionMeasures em;
        em.frequency = require(je, "frequency").template get<int>();
        em.size = require(je, "size").template get<int>();
        em.span = require(je, "span").template get<int>();
        em.density = detail::parse_rational(require(je, "density"));
        em.priming = require(je, "priming").template get<int>();
        em.priming_distance = require(je, "priming_distance").template get<int>();
        m.per_expression.emplace(key, em);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad annotation record: ") + e.what());
  }
  return a;
}

inline std::string to_jsonl_line(const AnnotatedDialogue& a) { return to_json(a).dump() + "\n"; }

/// Reads annotation JSONL. Errors name the file and line.
inline std::vector<AnnotatedDialogue> read_annotations(std::istream& in,
                                                       const std::string& name = "<input>") {
  std::vector<AnnotatedDialogue> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(annotation_from_json(Json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(name + ": line " + std::to_string(line_no) + ": " + e.what(), line_no,
                       e.byte);
    } catch (const Error& e) {
      throw ParseError(name + ": line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return out;
}

inline std::vector<AnnotatedDialogue> read_annotations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  return read_annotations(in, path.string());
}

/// Writes `content` to `path` through a temporary file in the same
/// directory and a rename, so readers never see a partial file. "-" means
/// stdout.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path == "-") {
    std::cout << content << std::flush;
    if (!std::cout) throw Error("write to stdout failed");
    return;
  }
  std::random_device rd;
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    out.close();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace entrain

#endif  // ENTRAIN_ANNOTATION_HPP_
