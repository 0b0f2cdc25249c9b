// entrain/pipeline.hpp

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

// normalize -> lexicon -> measures for one dialogue or a whole corpus.

#ifndef ENTRAIN_PIPELINE_HPP_
#define ENTRAIN_PIPELINE_HPP_

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "entrain/corpus.hpp"
#include "entrain/filter.hpp"
#include "entrain/lexicon.hpp"
#include "entrain/measures.hpp"
#include "entrain/normalize.hpp"

namespace entrain {

struct AnnotatedDialogue {
  Dialogue dialogue;  // normalized
  DialogueLexicon lexicon;
  DialogueMeasures measures;
};

class Annotator {
 public:
  /// Dictionaries are loaded from `data_dir` and normalized with `norm`.
  Annotator(NormalizationConfig norm, const std::filesystem::path& data_dir,
            LexiconConfig lex = {})
      : norm_(std::move(norm)),
        dicts_(FilterDictionaries::load(data_dir, norm_)),
        lex_(lex) {
    norm_.check();
  }

  Annotator(NormalizationConfig norm, FilterDictionaries dicts, LexiconConfig lex = {})
      : norm_(std::move(norm)), dicts_(std::move(dicts)), lex_(lex) {
    norm_.check();
  }

  AnnotatedDialogue annotate(const Dialogue& raw) const {
    AnnotatedDialogue a;
    a.dialogue = normalize_dialogue(raw, norm_);
    a.lexicon = build_lexicon(a.dialogue, &dicts_, lex_);
    a.measures = compute_measures(a.lexicon, a.dialogue);
    return a;
  }

  const NormalizationConfig& normalization() const { return norm_; }
  const FilterDictionaries& dictionaries() const { return dicts_; }
  const LexiconConfig& lexicon_config() const { return lex_; }

 private:
  NormalizationConfig norm_;
  FilterDictionaries dicts_;
  LexiconConfig lex_;
};

/// Applies `fn` to indices [0, n) on up to `jobs` threads. Results are
/// written by index, so the output never depends on scheduling. The first
/// exception (lowest index) is rethrown after all workers stop.
template <typename T>
std::vector<T> parallel_map(std::size_t n, unsigned jobs, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

inline std::vector<AnnotatedDialogue> annotate_corpus(const Corpus& corpus, const Annotator& a,
                                                      unsigned jobs = 1) {
  return parallel_map<AnnotatedDialogue>(corpus.dialogues.size(), jobs, [&](std::size_t i) {
    return a.annotate(corpus.dialogues[i]);
  });
}

}  // namespace entrain

#endif  // ENTRAIN_PIPELINE_HPP_
