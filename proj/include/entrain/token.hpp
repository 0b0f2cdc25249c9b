// entrain/token.hpp

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

#ifndef ENTRAIN_TOKEN_HPP_
#define ENTRAIN_TOKEN_HPP_

#include <compare>
#include <cstddef>
#include <string>

namespace entrain {

/// Half-open byte range [begin, end) into an utterance's raw text.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend auto operator<=>(const CharSpan&, const CharSpan&) = default;
};

/// Half-open token range [begin, end) into an utterance's token list.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(const TokenSpan& o) const { return begin <= o.begin && o.end <= end; }
  bool overlaps(const TokenSpan& o) const { return begin < o.end && o.begin < end; }
  friend auto operator<=>(const TokenSpan&, const TokenSpan&) = default;
};

/// One token after normalization. `canonical` is what sharing is decided
/// on; `surface` and `char_span` keep the link back to the original text.
struct NormalizedToken {
  std::string surface;
  std::string canonical;
  CharSpan char_span;
  bool is_punct_mask = false;

  friend bool operator==(const NormalizedToken&, const NormalizedToken&) = default;
};

}  // namespace entrain

#endif  // ENTRAIN_TOKEN_HPP_
