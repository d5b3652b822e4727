// Copyright 2026 The Voiceind Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VOICEIND_ERROR_HPP_
#define VOICEIND_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace voiceind {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Invalid value for a domain type (zero vector, bad epsilon, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed input text.  line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Filesystem-level failure (missing file, unreadable stream).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace voiceind

#endif  // VOICEIND_ERROR_HPP_
