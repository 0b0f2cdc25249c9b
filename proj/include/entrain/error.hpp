// entrain/error.hpp

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

#ifndef ENTRAIN_ERROR_HPP_
#define ENTRAIN_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace entrain {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input. Carries the line (text formats) or byte offset (JSON)
/// when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what,
                      std::optional<std::size_t> line = std::nullopt,
                      std::optional<std::size_t> offset = std::nullopt)
      : Error(what), line_(line), offset_(offset) {}

  std::optional<std::size_t> line() const { return line_; }
  std::optional<std::size_t> offset() const { return offset_; }

 private:
  std::optional<std::size_t> line_;
  std::optional<std::size_t> offset_;
};

/// Well-formed input that breaks a data-model invariant (e.g. two
/// consecutive turns by the same speaker).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An analysis needs data the input does not carry (dialogue acts, domain
/// tags, enough groups...).
class MissingDataError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition. The CLI maps this to exit 2.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace entrain

#endif  // ENTRAIN_ERROR_HPP_
