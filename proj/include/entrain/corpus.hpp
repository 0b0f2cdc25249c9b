// entrain/corpus.hpp

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

// Dialogue data model plus the two readers: MultiWOZ 2.1 style JSON and a
// plain "USER: ... / AGENT: ..." transcript format.

#ifndef ENTRAIN_CORPUS_HPP_
#define ENTRAIN_CORPUS_HPP_

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"

#include "entrain/error.hpp"
#include "entrain/token.hpp"

namespace entrain {

enum class Speaker { User, Agent };

inline Speaker other(Speaker s) { return s == Speaker::User ? Speaker::Agent : Speaker::User; }

inline std::string_view to_string(Speaker s) { return s == Speaker::User ? "user" : "agent"; }

inline Speaker parse_speaker(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "user") return Speaker::User;
  if (lower == "agent") return Speaker::Agent;
  throw ParseError("unknown speaker '" + std::string(s) + "'");
}

/// One slot-value pair of a dialogue-act annotation.
struct DialogueAct {
  std::string slot;
  std::string value;

  friend bool operator==(const DialogueAct&, const DialogueAct&) = default;
};

struct Utterance {
  int index = 0;  // 1-based turn number
  Speaker speaker = Speaker::User;
  std::string raw_text;
  std::vector<NormalizedToken> tokens;  // empty until normalized
  std::optional<std::vector<DialogueAct>> dialogue_act;
};

enum class Split { Train, Valid, Test, Unsplit };

inline std::string_view to_string(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Valid: return "valid";
    case Split::Test: return "test";
    case Split::Unsplit: break;
  }
  return "unsplit";
}

inline Split parse_split(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "valid" || s == "val" || s == "dev") return Split::Valid;
  if (s == "test") return Split::Test;
  if (s == "unsplit" || s == "all") return Split::Unsplit;
  throw ParseError("unknown split '" + std::string(s) + "'");
}

struct Dialogue {
  std::string id;
  std::set<std::string> domains;
  Split split = Split::Unsplit;
  std::vector<Utterance> utterances;

  int count(Speaker s) const {
    return static_cast<int>(std::count_if(utterances.begin(), utterances.end(),
                                          [s](const Utterance& u) { return u.speaker == s; }));
  }
  /// Utterance with the given 1-based index.
  const Utterance& at(int index) const { return utterances.at(static_cast<std::size_t>(index - 1)); }
  bool has_dialogue_acts() const {
    return std::any_of(utterances.begin(), utterances.end(),
                       [](const Utterance& u) { return u.dialogue_act.has_value(); });
  }
};

struct Corpus {
  Split split = Split::Unsplit;
  std::vector<Dialogue> dialogues;
};

/// Throws ValidationError naming the dialogue when an invariant fails:
/// at least one utterance, indices 1..n, alternating speakers, non-empty
/// text.
inline void validate(const Dialogue& d) {
  if (d.utterances.empty()) throw ValidationError("dialogue '" + d.id + "': empty log");
  for (std::size_t i = 0; i < d.utterances.size(); ++i) {
    const Utterance& u = d.utterances[i];
    if (u.index != static_cast<int>(i) + 1) {
      throw ValidationError("dialogue '" + d.id + "': utterance " + std::to_string(i + 1) +
                            " has index " + std::to_string(u.index));
    }
    if (i > 0 && u.speaker == d.utterances[i - 1].speaker) {
      throw ValidationError("dialogue '" + d.id + "': turns " + std::to_string(i) + " and " +
                            std::to_string(i + 1) + " are both by the " +
                            std::string(to_string(u.speaker)) + " (speakers must alternate)");
    }
    if (u.raw_text.find_first_not_of(" \t\r\n") == std::string::npos) {
      throw ValidationError("dialogue '" + d.id + "': utterance " + std::to_string(u.index) +
                            " is empty");
    }
  }
}

inline void validate(const Corpus& c) {
  std::unordered_set<std::string> seen;
  for (const Dialogue& d : c.dialogues) {
    if (!seen.insert(d.id).second) throw ValidationError("duplicate dialogue id '" + d.id + "'");
    validate(d);
  }
}

// ---------------------------------------------------------------------------
// Plain transcripts

/// Reads one dialogue from `USER: text` / `AGENT: text` lines. Role names
/// are case-insensitive; blank lines are skipped.
inline Dialogue parse_transcript(std::istream& in, std::string id) {
  Dialogue d;
  d.id = std::move(id);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto colon = line.find(':');
    std::string role = colon == std::string::npos ? line : line.substr(0, colon);
    role.erase(0, role.find_first_not_of(" \t"));
    Speaker speaker;
    try {
      speaker = parse_speaker(role);
    } catch (const ParseError&) {
      throw ParseError("line " + std::to_string(line_no) + ": unknown role prefix '" + role +
                           "' (expected USER or AGENT)",
                       line_no);
    }
    std::string text = line.substr(colon + 1);
    text.erase(0, text.find_first_not_of(" \t"));
    text.erase(text.find_last_not_of(" \t") + 1);
    if (text.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty utterance", line_no);
    }
    Utterance u;
    u.index = static_cast<int>(d.utterances.size()) + 1;
    u.speaker = speaker;
    u.raw_text = std::move(text);
    d.utterances.push_back(std::move(u));
  }
  if (d.utterances.empty()) throw ParseError("no utterances");
  validate(d);
  return d;
}

inline Dialogue load_transcript(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  try {
    return parse_transcript(in, path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

// ---------------------------------------------------------------------------
// MultiWOZ

namespace detail {

inline const std::array<std::string_view, 7> kMultiwozDomains = {
    "taxi", "hotel", "attraction", "train", "restaurant", "police", "hospital"};

inline bool is_multiwoz_domain(std::string_view s) {
  return std::find(kMultiwozDomains.begin(), kMultiwozDomains.end(), s) != kMultiwozDomains.end();
}

inline std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Finds which top-level key (dialogue id) encloses a syntax error, so the
// message can name it.
class DialogueLocator : public nlohmann::json_sax<nlohmann::json> {
 public:
  std::string current;
  std::size_t error_offset = 0;
  std::string error_message;

  bool null() override { return true; }
  bool boolean(bool) override { return true; }
  bool number_integer(number_integer_t) override { return true; }
  bool number_unsigned(number_unsigned_t) override { return true; }
  bool number_float(number_float_t, const string_t&) override { return true; }
  bool string(string_t&) override { return true; }
  bool binary(binary_t&) override { return true; }
  bool start_object(std::size_t) override { ++depth_; return true; }
  bool end_object() override { --depth_; return true; }
  bool start_array(std::size_t) override { ++depth_; return true; }
  bool end_array() override { --depth_; return true; }
  bool key(string_t& k) override {
    if (depth_ == 1) current = k;
    return true;
  }
  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    error_offset = position;
    error_message = ex.what();
    return false;
  }

 private:
  int depth_ = 0;
};

inline std::set<std::string> multiwoz_domains(const nlohmann::ordered_json& dlg) {
  std::set<std::string> out;
  if (auto g = dlg.find("goal"); g != dlg.end() && g->is_object()) {
    for (const auto& [k, v] : g->items()) {
      if (is_multiwoz_domain(k) && ((v.is_object() && !v.empty()) || (v.is_array() && !v.empty())))
        out.insert(k);
    }
  }
  if (!out.empty()) return out;
  auto log = dlg.find("log");
  if (log == dlg.end() || !log->is_array()) return out;
  for (const auto& turn : *log) {
    if (auto m = turn.find("metadata"); m != turn.end() && m->is_object()) {
      for (const auto& [dom, slots] : m->items()) {
        if (!is_multiwoz_domain(dom) || !slots.is_object()) continue;
        for (const char* part : {"semi", "book"}) {
          auto p = slots.find(part);
          if (p == slots.end() || !p->is_object()) continue;
          for (const auto& [slot, value] : p->items()) {
            if (value.is_string() && !value.get<std::string>().empty() &&
                value.get<std::string>() != "not mentioned")
              out.insert(dom);
          }
        }
      }
    }
    if (auto a = turn.find("dialog_act"); a != turn.end() && a->is_object()) {
      for (const auto& [act, pairs] : a->items()) {
        std::string dom = lowercase(act.substr(0, act.find('-')));
        if (is_multiwoz_domain(dom)) out.insert(dom);
      }
    }
  }
  return out;
}

inline std::unordered_set<std::string> read_id_list(const std::filesystem::path& p) {
  std::unordered_set<std::string> ids;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (!line.empty()) ids.insert(line);
  }
  return ids;
}

}  // namespace detail

/// Dialogue ids belonging to the held-out splits. When a MultiWOZ 2.1
/// data.json sits next to valListFile.txt / testListFile.txt, train is
/// everything listed in neither.
struct SplitLists {
  std::unordered_set<std::string> valid;
  std::unordered_set<std::string> test;

  bool empty() const { return valid.empty() && test.empty(); }
  Split split_of(const std::string& id) const {
    if (valid.count(id)) return Split::Valid;
    if (test.count(id)) return Split::Test;
    return Split::Train;
  }
};

struct MultiwozOptions {
  /// Drop dialogues that fail validation instead of aborting the load.
  bool skip_invalid = false;
};

/// Parses MultiWOZ-style JSON text: an object mapping dialogue id to
/// {"goal": ..., "log": [{"text", "metadata", "dialog_act"}, ...]}. Even log
/// positions are the user, odd ones the agent, unless a turn carries a
/// "speaker" or "role" label. Dialogues outside `split`
/// (according to `lists`) are skipped; ids of invalid dialogues skipped under
/// `skip_invalid` are appended to `skipped` when given.
inline Corpus parse_multiwoz(std::string_view text, Split split, const SplitLists& lists = {},
                             MultiwozOptions opts = {},
                             std::vector<std::string>* skipped = nullptr) {
  nlohmann::ordered_json root;
  try {
    root = nlohmann::ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    detail::DialogueLocator loc;
    nlohmann::json::sax_parse(text.begin(), text.end(), &loc);
    std::string where = loc.current.empty() ? "" : " in dialogue '" + loc.current + "'";
    throw ParseError("malformed JSON" + where + " at byte " + std::to_string(e.byte) + ": " +
                         e.what(),
                     std::nullopt, e.byte);
  }
  if (!root.is_object()) throw ParseError("MultiWOZ file must be a JSON object of dialogues");

  Corpus corpus;
  corpus.split = split;
  std::unordered_set<std::string> seen;
  for (const auto& [id, dlg] : root.items()) {
    if (split != Split::Unsplit && !lists.empty() && lists.split_of(id) != split) continue;
    if (!seen.insert(id).second) throw ValidationError("duplicate dialogue id '" + id + "'");
    auto log = dlg.is_object() ? dlg.find("log") : dlg.end();
    if (!dlg.is_object() || log == dlg.end() || !log->is_array()) {
      throw ParseError("dialogue '" + id + "': missing \"log\" array");
    }
    Dialogue d;
    d.id = id;
    d.domains = detail::multiwoz_domains(dlg);
    d.split = lists.empty() ? split : lists.split_of(id);
    int index = 0;
    for (const auto& turn : *log) {
      ++index;
      auto t = turn.is_object() ? turn.find("text") : turn.end();
      if (!turn.is_object() || t == turn.end() || !t->is_string()) {
        throw ParseError("dialogue '" + id + "': log entry " + std::to_string(index) +
                         " has no \"text\" string");
      }
      Utterance u;
      u.index = index;
      u.speaker = (index % 2 == 1) ? Speaker::User : Speaker::Agent;
      // An explicit role label overrides position; validation then catches
      // logs whose labels do not alternate.
      for (const char* field : {"speaker", "role"}) {
        auto r = turn.find(field);
        if (r == turn.end() || !r->is_string()) continue;
        std::string role = detail::lowercase(r->get<std::string>());
        if (role == "user" || role == "usr") {
          u.speaker = Speaker::User;
        } else if (role == "system" || role == "sys" || role == "agent") {
          u.speaker = Speaker::Agent;
        } else {
          throw ParseError("dialogue '" + id + "': log entry " + std::to_string(index) +
                           " has unknown role '" + r->get<std::string>() + "'");
        }
        break;
      }
      u.raw_text = t->get<std::string>();
      if (auto a = turn.find("dialog_act"); a != turn.end() && a->is_object()) {
        std::vector<DialogueAct> acts;
        for (const auto& [act, pairs] : a->items()) {
          if (!pairs.is_array()) continue;
          for (const auto& pair : pairs) {
            if (pair.is_array() && pair.size() >= 2 && pair[0].is_string() && pair[1].is_string())
              acts.push_back({pair[0].get<std::string>(), pair[1].get<std::string>()});
          }
        }
        u.dialogue_act = std::move(acts);
      }
      d.utterances.push_back(std::move(u));
    }
    try {
      validate(d);
      if (d.utterances.front().speaker != Speaker::User)
        throw ValidationError("dialogue '" + id + "': first turn must be the user");
    } catch (const ValidationError&) {
      if (!opts.skip_invalid) throw;
      if (skipped) skipped->push_back(id);
      continue;
    }
    corpus.dialogues.push_back(std::move(d));
  }
  return corpus;
}

inline Corpus load_multiwoz(const std::filesystem::path& path, Split split,
                            MultiwozOptions opts = {},
                            std::vector<std::string>* skipped = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  SplitLists lists;
  auto dir = path.parent_path();
  if (std::filesystem::exists(dir / "valListFile.txt"))
    lists.valid = detail::read_id_list(dir / "valListFile.txt");
  if (std::filesystem::exists(dir / "testListFile.txt"))
    lists.test = detail::read_id_list(dir / "testListFile.txt");
  try {
    return parse_multiwoz(buf.str(), split, lists, opts, skipped);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.offset());
  }
}

}  // namespace entrain

#endif  // ENTRAIN_CORPUS_HPP_
