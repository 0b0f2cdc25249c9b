// entrain/resources.hpp

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

// Locating and reading the bundled data files (dictionaries, spelling map).

#ifndef ENTRAIN_RESOURCES_HPP_
#define ENTRAIN_RESOURCES_HPP_

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "entrain/error.hpp"

#ifndef ENTRAIN_DATA_DIR
#define ENTRAIN_DATA_DIR ""
#endif

namespace entrain {

/// Explicit directory if given, else $ENTRAIN_DICTS, else the directory
/// compiled in at build time.
inline std::filesystem::path resolve_data_dir(const std::filesystem::path& explicit_dir = {}) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("ENTRAIN_DICTS"); env != nullptr && *env != '\0') return env;
  std::filesystem::path built_in = ENTRAIN_DATA_DIR;
  if (built_in.empty()) {
    throw MissingDataError("no data directory: pass --dicts or set ENTRAIN_DICTS");
  }
  return built_in;
}

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::ifstream open_data_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingDataError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace detail

/// One entry per line; blank lines and lines starting with '#' skipped.
inline std::vector<std::string> read_word_list(const std::filesystem::path& path) {
  std::ifstream in = detail::open_data_file(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.push_back(std::move(t));
  }
  return out;
}

/// `left<TAB>right` lines. The right-hand side keeps its inner and edge
/// spaces (context patterns depend on them); only a trailing CR is dropped.
inline std::vector<std::pair<std::string, std::string>> read_pair_list(
    const std::filesystem::path& path) {
  std::ifstream in = detail::open_data_file(path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": expected TAB",
                       line_no);
    }
    std::string left = detail::trim(std::string_view(line).substr(0, tab));
    std::string right = line.substr(tab + 1);
    if (left.empty() || right.empty()) {
      throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": empty field",
                       line_no);
    }
    out.emplace_back(std::move(left), std::move(right));
  }
  return out;
}

}  // namespace entrain

#endif  // ENTRAIN_RESOURCES_HPP_
