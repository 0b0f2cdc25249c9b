// entrain/normalize.hpp

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

// Tokenization and canonical forms. Two surface forms that should count as
// the same expression ("Centre"/"center", "four"/"4", "restaurants"/
// "restaurant") end up with identical canonical strings; punctuation is
// replaced by per-occurrence random masks so it can never be shared.

#ifndef ENTRAIN_NORMALIZE_HPP_
#define ENTRAIN_NORMALIZE_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "entrain/corpus.hpp"
#include "entrain/error.hpp"
#include "entrain/porter.hpp"
#include "entrain/resources.hpp"
#include "entrain/token.hpp"

namespace entrain {

inline std::unordered_map<std::string, std::string> default_number_words() {
  return {
      {"zero", "0"},     {"one", "1"},       {"two", "2"},        {"three", "3"},
      {"four", "4"},     {"five", "5"},      {"six", "6"},        {"seven", "7"},
      {"eight", "8"},    {"nine", "9"},      {"ten", "10"},       {"eleven", "11"},
      {"twelve", "12"},  {"thirteen", "13"}, {"fourteen", "14"},  {"fifteen", "15"},
      {"sixteen", "16"}, {"seventeen", "17"}, {"eighteen", "18"}, {"nineteen", "19"},
      {"twenty", "20"},  {"thirty", "30"},   {"forty", "40"},     {"fifty", "50"},
      {"sixty", "60"},   {"seventy", "70"},  {"eighty", "80"},    {"ninety", "90"},
      {"hundred", "100"},
  };
}

struct NormalizationConfig {
  std::unordered_map<std::string, std::string> spelling_map;  // en-GB -> en-US
  std::unordered_map<std::string, std::string> number_words = default_number_words();
  int mask_bits = 64;
  std::uint64_t rng_seed = 0;
  StemmerKind stemmer = StemmerKind::Porter;

  void check() const {
    if (mask_bits < 16 || mask_bits > 64) {
      throw ValidationError("mask_bits must be in [16, 64], got " + std::to_string(mask_bits));
    }
    auto single_lower_word = [](const std::string& w) {
      if (w.empty()) return false;
      for (unsigned char c : w) {
        if (std::isspace(c) || (c < 0x80 && std::isupper(c))) return false;
      }
      return true;
    };
    for (const auto& [k, v] : spelling_map) {
      if (!single_lower_word(k) || !single_lower_word(v)) {
        throw ValidationError("spelling map entry '" + k + "' -> '" + v +
                              "' is not a pair of single lowercase words");
      }
    }
    for (const auto& [k, v] : number_words) {
      if (!single_lower_word(k) || !single_lower_word(v)) {
        throw ValidationError("number word entry '" + k + "' -> '" + v + "' is malformed");
      }
    }
  }
};

inline std::unordered_map<std::string, std::string> load_spelling_map(
    const std::filesystem::path& path) {
  std::unordered_map<std::string, std::string> out;
  for (auto& [gb, us] : read_pair_list(path)) out[gb] = detail::trim(us);
  return out;
}

/// Defaults plus the bundled spelling map from `data_dir`.
inline NormalizationConfig default_normalization(const std::filesystem::path& data_dir) {
  NormalizationConfig cfg;
  cfg.spelling_map = load_spelling_map(data_dir / "spelling_en_us.tsv");
  return cfg;
}

/// Applies a `key = value` config file on top of `cfg`. Recognized keys:
/// stemmer, mask_bits, rng_seed, spelling_map (path), number_words (path to
/// a word<TAB>digits file, replaces the table) and number_word.<word>.
/// Relative paths resolve against the config file's directory.
inline void apply_config_file(NormalizationConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingDataError("cannot open config '" + path.string() + "'");
  auto resolve = [&](const std::string& v) {
    std::filesystem::path p(v);
    return p.is_relative() ? path.parent_path() / p : p;
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    auto fail = [&](const std::string& msg) {
      throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": " + msg, line_no);
    };
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = detail::trim(std::string_view(t).substr(0, eq));
    std::string value = detail::trim(std::string_view(t).substr(eq + 1));
    try {
      if (key == "stemmer") {
        cfg.stemmer = parse_stemmer(value);
      } else if (key == "mask_bits") {
        cfg.mask_bits = std::stoi(value);
      } else if (key == "rng_seed") {
        cfg.rng_seed = std::stoull(value);
      } else if (key == "spelling_map") {
        cfg.spelling_map = load_spelling_map(resolve(value));
      } else if (key == "number_words") {
        cfg.number_words.clear();
        for (auto& [w, d] : read_pair_list(resolve(value))) cfg.number_words[w] = detail::trim(d);
      } else if (key.rfind("number_word.", 0) == 0 && key.size() > 12) {
        cfg.number_words[key.substr(12)] = value;
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      fail("bad value for '" + key + "'");
    } catch (const std::out_of_range&) {
      fail("value out of range for '" + key + "'");
    }
  }
  cfg.check();
}

// ---------------------------------------------------------------------------
// Tokenization

struct RawToken {
  std::string surface;
  CharSpan span;

  friend bool operator==(const RawToken&, const RawToken&) = default;
};

namespace detail {

/// Decodes one UTF-8 code point at `i`; malformed bytes decode as themselves.
inline char32_t decode_utf8(std::string_view s, std::size_t i, std::size_t* len) {
  auto b = static_cast<unsigned char>(s[i]);
  auto cont = [&](std::size_t k) {
    return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  if (b < 0x80) {
    *len = 1;
    return b;
  }
  if ((b & 0xE0) == 0xC0 && cont(1)) {
    *len = 2;
    return ((b & 0x1F) << 6) | (s[i + 1] & 0x3F);
  }
  if ((b & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    *len = 3;
    return ((b & 0x0F) << 12) | ((s[i + 1] & 0x3F) << 6) | (s[i + 2] & 0x3F);
  }
  if ((b & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    *len = 4;
    return ((b & 0x07) << 18) | ((s[i + 1] & 0x3F) << 12) | ((s[i + 2] & 0x3F) << 6) |
           (s[i + 3] & 0x3F);
  }
  *len = 1;
  return b;
}

inline bool is_punct_cp(char32_t c) {
  if (c < 0x80) return std::ispunct(static_cast<int>(c)) != 0;
  switch (c) {
    case 0x00A1: case 0x00AB: case 0x00B7: case 0x00BB: case 0x00BF:
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2015:
    case 0x2018: case 0x2019: case 0x201A: case 0x201B:
    case 0x201C: case 0x201D: case 0x201E: case 0x201F:
    case 0x2022: case 0x2026: case 0x2039: case 0x203A:
      return true;
    default:
      return false;
  }
}

inline bool is_space_cp(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f' ||
         c == 0x00A0;
}

}  // namespace detail

/// True iff `s` is non-empty and made only of punctuation characters.
inline bool is_punctuation_token(std::string_view s) {
  if (s.empty()) return false;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t len = 0;
    if (!detail::is_punct_cp(detail::decode_utf8(s, i, &len))) return false;
    i += len;
  }
  return true;
}

/// Whitespace split, then every leading and trailing punctuation character
/// becomes its own token. Punctuation between word characters stays.
inline std::vector<RawToken> tokenize(std::string_view text) {
  struct Cp {
    std::size_t pos, len;
    bool punct;
  };
  std::vector<RawToken> out;
  std::vector<Cp> chunk;
  auto flush = [&] {
    if (chunk.empty()) return;
    std::size_t lo = 0, hi = chunk.size();
    while (lo < hi && chunk[lo].punct) ++lo;
    while (hi > lo && chunk[hi - 1].punct) --hi;
    auto emit = [&](std::size_t b, std::size_t e) {
      out.push_back({std::string(text.substr(b, e - b)), {b, e}});
    };
    for (std::size_t k = 0; k < lo; ++k) emit(chunk[k].pos, chunk[k].pos + chunk[k].len);
    if (lo < hi) emit(chunk[lo].pos, chunk[hi - 1].pos + chunk[hi - 1].len);
    for (std::size_t k = std::max(lo, hi); k < chunk.size(); ++k) {
      emit(chunk[k].pos, chunk[k].pos + chunk[k].len);
    }
    chunk.clear();
  };
  for (std::size_t i = 0; i < text.size();) {
    std::size_t len = 0;
    char32_t c = detail::decode_utf8(text, i, &len);
    if (detail::is_space_cp(c)) {
      flush();
    } else {
      chunk.push_back({i, len, detail::is_punct_cp(c)});
    }
    i += len;
  }
  flush();
  return out;
}

// ---------------------------------------------------------------------------
// Canonical forms

namespace detail {

/// ASCII plus the Latin-1 capitals (U+00C0..U+00DE except U+00D7).
inline std::string to_lower_utf8(std::string_view s) {
  std::string out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto c = static_cast<unsigned char>(out[i]);
    if (c < 0x80) {
      out[i] = static_cast<char>(std::tolower(c));
    } else if (c == 0xC3 && i + 1 < out.size()) {
      auto d = static_cast<unsigned char>(out[i + 1]);
      if (d >= 0x80 && d <= 0x9E && d != 0x97) out[i + 1] = static_cast<char>(d + 0x20);
      ++i;
    }
  }
  return out;
}

inline bool all_ascii_alpha(std::string_view s) {
  if (s.empty()) return false;
  for (unsigned char c : s) {
    if (!std::isalpha(c)) return false;
  }
  return true;
}

/// "twenty-one" -> "21" when both halves are number words; else unchanged.
inline std::string map_number(const std::string& w,
                              const std::unordered_map<std::string, std::string>& numbers) {
  if (auto it = numbers.find(w); it != numbers.end()) return it->second;
  auto dash = w.find('-');
  if (dash == std::string::npos || w.find('-', dash + 1) != std::string::npos) return w;
  auto tens = numbers.find(w.substr(0, dash));
  auto units = numbers.find(w.substr(dash + 1));
  if (tens == numbers.end() || units == numbers.end()) return w;
  try {
    int t = std::stoi(tens->second), u = std::stoi(units->second);
    if (t >= 20 && t % 10 == 0 && t < 100 && u >= 1 && u <= 9) return std::to_string(t + u);
  } catch (const std::exception&) {
  }
  return w;
}

inline std::string normalize_once(const std::string& w, const NormalizationConfig& cfg) {
  std::string s = w;
  if (auto it = cfg.spelling_map.find(s); it != cfg.spelling_map.end()) s = it->second;
  s = map_number(s, cfg.number_words);
  // Only purely alphabetic words go through the stemmer, so "i'm", "14:00"
  // and digit strings are left alone.
  if (all_ascii_alpha(s)) s = stem_word(s, cfg.stemmer);
  return s;
}

}  // namespace detail

/// lowercase -> spelling map -> number words -> stem, repeated until the
/// output no longer changes so that the result is a fixed point.
inline std::string normalize_token(std::string_view surface, const NormalizationConfig& cfg) {
  std::string cur = detail::to_lower_utf8(surface);
  for (int i = 0; i < 16; ++i) {
    std::string next = detail::normalize_once(cur, cfg);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Punctuation masks

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = kDigits[v & 0xF];
  return s;
}

}  // namespace detail

/// Draws the k-bit masks for one dialogue. Seeded from (rng_seed, dialogue
/// id), so the sequence depends on neither scheduling nor other dialogues.
/// Masks look like "#p <dialogue-tag>:<hex>"; the space means no token
/// produced by tokenize() can ever equal one.
class MaskGenerator {
 public:
  MaskGenerator(std::uint64_t rng_seed, std::string_view dialogue_id, int bits)
      : tag_(detail::hex64(detail::fnv1a(dialogue_id))),
        engine_(detail::splitmix64(rng_seed ^ detail::fnv1a(dialogue_id))),
        bits_(bits) {
    if (bits < 16 || bits > 64) {
      throw ContractViolation("mask bits must be in [16, 64], got " + std::to_string(bits));
    }
  }

  std::string next() {
    const std::uint64_t mask = bits_ == 64 ? ~0ULL : ((1ULL << bits_) - 1);
    if (bits_ < 64 && used_.size() > mask) {
      throw ContractViolation("mask space of " + std::to_string(bits_) + " bits exhausted");
    }
    for (;;) {
      std::uint64_t v = engine_() & mask;
      if (used_.insert(v).second) return "#p " + tag_ + ":" + detail::hex64(v);
    }
  }

 private:
  std::string tag_;
  std::mt19937_64 engine_;
  int bits_;
  std::unordered_set<std::uint64_t> used_;
};

inline bool is_mask(std::string_view canonical) { return canonical.rfind("#p ", 0) == 0; }

inline std::string mask_punctuation(std::string_view surface, MaskGenerator& gen) {
  if (!is_punctuation_token(surface)) {
    throw ContractViolation("mask_punctuation called on non-punctuation token '" +
                            std::string(surface) + "'");
  }
  return gen.next();
}

/// Fills `tokens` of every utterance; raw text is untouched.
inline Dialogue normalize_dialogue(Dialogue d, const NormalizationConfig& cfg) {
  MaskGenerator gen(cfg.rng_seed, d.id, cfg.mask_bits);
  for (Utterance& u : d.utterances) {
    u.tokens.clear();
    for (RawToken& t : tokenize(u.raw_text)) {
      NormalizedToken nt;
      nt.char_span = t.span;
      if (is_punctuation_token(t.surface)) {
        nt.canonical = mask_punctuation(t.surface, gen);
        nt.is_punct_mask = true;
      } else {
        nt.canonical = normalize_token(t.surface, cfg);
      }
      nt.surface = std::move(t.surface);
      u.tokens.push_back(std::move(nt));
    }
  }
  return d;
}

}  // namespace entrain

#endif  // ENTRAIN_NORMALIZE_HPP_
