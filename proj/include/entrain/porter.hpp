// entrain/porter.hpp

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

// Porter suffix-stripping stemmer.
//
// Two variants are provided. Porter is Martin Porter's own reference
// implementation (the "tartarus" C version: words of one or two letters are
// left alone, -bli -> -ble, -logi -> -log). Nltk adds the NLTK default-mode
// departures on top (irregular-form table, -ies/-ied on four-letter words,
// y -> i only after a consonant, -fulli, two-letter *o). Neither lowercases:
// callers pass lowercase input.

#ifndef ENTRAIN_PORTER_HPP_
#define ENTRAIN_PORTER_HPP_

#include <string>
#include <string_view>
#include <unordered_map>

#include "entrain/error.hpp"

namespace entrain {

enum class StemmerKind { Porter, Nltk, None };

inline std::string_view to_string(StemmerKind k) {
  switch (k) {
    case StemmerKind::Porter: return "porter";
    case StemmerKind::Nltk: return "nltk";
    case StemmerKind::None: break;
  }
  return "none";
}

inline StemmerKind parse_stemmer(std::string_view s) {
  if (s == "porter") return StemmerKind::Porter;
  if (s == "nltk") return StemmerKind::Nltk;
  if (s == "none") return StemmerKind::None;
  throw ParseError("unknown stemmer '" + std::string(s) + "' (porter, nltk, none)");
}

class PorterStemmer {
 public:
  explicit PorterStemmer(bool nltk_extensions = false) : nltk_(nltk_extensions) {}

  std::string operator()(std::string_view word) const {
    std::string w(word);
    if (nltk_) {
      if (auto it = irregular().find(w); it != irregular().end()) return it->second;
    }
    if (w.size() <= 2) return w;
    w = step1a(std::move(w));
    w = step1b(std::move(w));
    w = step1c(std::move(w));
    w = step2(std::move(w));
    w = step3(std::move(w));
    w = step4(std::move(w));
    w = step5a(std::move(w));
    w = step5b(std::move(w));
    return w;
  }

 private:
  static bool is_vowel_letter(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  }

  // y is a consonant at the start of a word or after a vowel.
  static bool is_consonant(std::string_view w, std::size_t i) {
    if (is_vowel_letter(w[i])) return false;
    if (w[i] != 'y') return true;
    return i == 0 ? true : !is_consonant(w, i - 1);
  }

  // m in [C](VC){m}[V].
  static int measure(std::string_view stem) {
    int m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < stem.size(); ++i) {
      bool cons = is_consonant(stem, i);
      if (cons && prev_vowel) ++m;
      prev_vowel = !cons;
    }
    return m;
  }

  static bool contains_vowel(std::string_view stem) {
    for (std::size_t i = 0; i < stem.size(); ++i)
      if (!is_consonant(stem, i)) return true;
    return false;
  }

  static bool ends_double_consonant(std::string_view w) {
    return w.size() >= 2 && w.back() == w[w.size() - 2] && is_consonant(w, w.size() - 1);
  }

  // *o: stem ends consonant-vowel-consonant, last not w, x or y.
  bool ends_cvc(std::string_view w) const {
    if (w.size() >= 3 && is_consonant(w, w.size() - 3) && !is_consonant(w, w.size() - 2) &&
        is_consonant(w, w.size() - 1) && w.back() != 'w' && w.back() != 'x' && w.back() != 'y')
      return true;
    return nltk_ && w.size() == 2 && !is_consonant(w, 0) && is_consonant(w, 1);
  }

  static bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
  }

  enum class Cond { kNone, kMeasurePositive, kMeasureAboveOne };

  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
    Cond cond;
  };

  // First rule whose suffix matches decides; if its condition fails the word
  // is returned unchanged.
  template <std::size_t N>
  static std::string apply_rules(std::string w, const Rule (&rules)[N]) {
    for (const Rule& r : rules) {
      if (!ends_with(w, r.suffix)) continue;
      std::string_view stem(w.data(), w.size() - r.suffix.size());
      bool ok = r.cond == Cond::kNone ||
                (r.cond == Cond::kMeasurePositive && measure(stem) > 0) ||
                (r.cond == Cond::kMeasureAboveOne && measure(stem) > 1);
      if (!ok) return w;
      return std::string(stem) + std::string(r.replacement);
    }
    return w;
  }

  std::string step1a(std::string w) const {
    if (nltk_ && w.size() == 4 && ends_with(w, "ies")) return w.substr(0, 1) + "ie";
    static constexpr Rule rules[] = {
        {"sses", "ss", Cond::kNone},
        {"ies", "i", Cond::kNone},
        {"ss", "ss", Cond::kNone},
        {"s", "", Cond::kNone},
    };
    return apply_rules(std::move(w), rules);
  }

  std::string step1b(std::string w) const {
    if (nltk_ && ends_with(w, "ied")) {
      return w.size() == 4 ? w.substr(0, 1) + "ie" : w.substr(0, w.size() - 3) + "i";
    }
    if (ends_with(w, "eed")) {
      std::string_view stem(w.data(), w.size() - 3);
      return measure(stem) > 0 ? std::string(stem) + "ee" : w;
    }
    std::string stem;
    if (ends_with(w, "ed") && contains_vowel(std::string_view(w.data(), w.size() - 2))) {
      stem = w.substr(0, w.size() - 2);
    } else if (ends_with(w, "ing") && contains_vowel(std::string_view(w.data(), w.size() - 3))) {
      stem = w.substr(0, w.size() - 3);
    } else {
      return w;
    }
    if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz")) return stem + "e";
    if (ends_double_consonant(stem)) {
      char last = stem.back();
      if (last != 'l' && last != 's' && last != 'z') stem.pop_back();
      return stem;
    }
    if (measure(stem) == 1 && ends_cvc(stem)) return stem + "e";
    return stem;
  }

  std::string step1c(std::string w) const {
    if (!ends_with(w, "y")) return w;
    std::string_view stem(w.data(), w.size() - 1);
    bool ok = nltk_ ? (stem.size() > 1 && is_consonant(stem, stem.size() - 1))
                    : contains_vowel(stem);
    if (ok) w.back() = 'i';
    return w;
  }

  std::string step2(std::string w) const {
    if (nltk_ && ends_with(w, "alli") &&
        measure(std::string_view(w.data(), w.size() - 4)) > 0) {
      return step2(w.substr(0, w.size() - 4) + "al");
    }
    static constexpr Rule rules[] = {
        {"ational", "ate", Cond::kMeasurePositive},
        {"tional", "tion", Cond::kMeasurePositive},
        {"enci", "ence", Cond::kMeasurePositive},
        {"anci", "ance", Cond::kMeasurePositive},
        {"izer", "ize", Cond::kMeasurePositive},
        {"bli", "ble", Cond::kMeasurePositive},
        {"alli", "al", Cond::kMeasurePositive},
        {"entli", "ent", Cond::kMeasurePositive},
        {"eli", "e", Cond::kMeasurePositive},
        {"ousli", "ous", Cond::kMeasurePositive},
        {"ization", "ize", Cond::kMeasurePositive},
        {"ation", "ate", Cond::kMeasurePositive},
        {"ator", "ate", Cond::kMeasurePositive},
        {"alism", "al", Cond::kMeasurePositive},
        {"iveness", "ive", Cond::kMeasurePositive},
        {"fulness", "ful", Cond::kMeasurePositive},
        {"ousness", "ous", Cond::kMeasurePositive},
        {"aliti", "al", Cond::kMeasurePositive},
        {"iviti", "ive", Cond::kMeasurePositive},
        {"biliti", "ble", Cond::kMeasurePositive},
    };
    for (const Rule& r : rules) {
      if (ends_with(w, r.suffix)) return apply_rules(std::move(w), rules);
    }
    if (nltk_) {
      if (ends_with(w, "fulli")) {
        std::string_view stem(w.data(), w.size() - 5);
        return measure(stem) > 0 ? std::string(stem) + "ful" : w;
      }
      // NLTK measures the stem with the 'l' of -logi still attached.
      if (ends_with(w, "logi")) {
        return measure(std::string_view(w.data(), w.size() - 3)) > 0
                   ? w.substr(0, w.size() - 4) + "log"
                   : w;
      }
      return w;
    }
    if (ends_with(w, "logi")) {
      std::string_view stem(w.data(), w.size() - 4);
      return measure(stem) > 0 ? std::string(stem) + "log" : w;
    }
    return w;
  }

  static std::string step3(std::string w) {
    static constexpr Rule rules[] = {
        {"icate", "ic", Cond::kMeasurePositive},
        {"ative", "", Cond::kMeasurePositive},
        {"alize", "al", Cond::kMeasurePositive},
        {"iciti", "ic", Cond::kMeasurePositive},
        {"ical", "ic", Cond::kMeasurePositive},
        {"ful", "", Cond::kMeasurePositive},
        {"ness", "", Cond::kMeasurePositive},
    };
    return apply_rules(std::move(w), rules);
  }

  static std::string step4(std::string w) {
    static constexpr Rule before_ion[] = {
        {"al", "", Cond::kMeasureAboveOne},    {"ance", "", Cond::kMeasureAboveOne},
        {"ence", "", Cond::kMeasureAboveOne},  {"er", "", Cond::kMeasureAboveOne},
        {"ic", "", Cond::kMeasureAboveOne},    {"able", "", Cond::kMeasureAboveOne},
        {"ible", "", Cond::kMeasureAboveOne},  {"ant", "", Cond::kMeasureAboveOne},
        {"ement", "", Cond::kMeasureAboveOne}, {"ment", "", Cond::kMeasureAboveOne},
        {"ent", "", Cond::kMeasureAboveOne},
    };
    static constexpr Rule after_ion[] = {
        {"ou", "", Cond::kMeasureAboveOne},  {"ism", "", Cond::kMeasureAboveOne},
        {"ate", "", Cond::kMeasureAboveOne}, {"iti", "", Cond::kMeasureAboveOne},
        {"ous", "", Cond::kMeasureAboveOne}, {"ive", "", Cond::kMeasureAboveOne},
        {"ize", "", Cond::kMeasureAboveOne},
    };
    for (const Rule& r : before_ion) {
      if (ends_with(w, r.suffix)) return apply_rules(std::move(w), before_ion);
    }
    if (ends_with(w, "ion")) {
      std::string_view stem(w.data(), w.size() - 3);
      if (measure(stem) > 1 && !stem.empty() && (stem.back() == 's' || stem.back() == 't'))
        return std::string(stem);
      return w;
    }
    return apply_rules(std::move(w), after_ion);
  }

  std::string step5a(std::string w) const {
    if (!ends_with(w, "e")) return w;
    std::string_view stem(w.data(), w.size() - 1);
    int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) return std::string(stem);
    return w;
  }

  static std::string step5b(std::string w) {
    if (ends_with(w, "ll") && measure(std::string_view(w.data(), w.size() - 1)) > 1) w.pop_back();
    return w;
  }

  static const std::unordered_map<std::string, std::string>& irregular() {
    static const std::unordered_map<std::string, std::string> table = {
        {"sky", "sky"},         {"skies", "sky"},       {"dying", "die"},
        {"lying", "lie"},       {"tying", "tie"},       {"news", "news"},
        {"innings", "inning"},  {"inning", "inning"},   {"outings", "outing"},
        {"outing", "outing"},   {"cannings", "canning"}, {"canning", "canning"},
        {"howe", "howe"},       {"proceed", "proceed"}, {"exceed", "exceed"},
        {"succeed", "succeed"},
    };
    return table;
  }

  bool nltk_;
};

/// Stems one lowercase word with the chosen variant.
inline std::string stem_word(std::string_view word, StemmerKind kind) {
  static const PorterStemmer porter(false);
  static const PorterStemmer nltk(true);
  switch (kind) {
    case StemmerKind::Porter: return porter(word);
    case StemmerKind::Nltk: return nltk(word);
    case StemmerKind::None: break;
  }
  return std::string(word);
}

}  // namespace entrain

#endif  // ENTRAIN_PORTER_HPP_
