//
// Copyright 2026 The anonarray Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef ANONARRAY_ERROR_HPP_
#define ANONARRAY_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace anonarray {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied argument violates an operation's precondition (t out of
// range, index out of bounds, schema mismatch, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A document could not be parsed. `line` and `column` are 1-based; zero means
// the position is unknown.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, std::size_t column,
             const std::string& message)
      : Error(Format(file, line, column, message)),
        file_(std::move(file)),
        line_(line),
        column_(column) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string Format(const std::string& file, std::size_t line,
                            std::size_t column, const std::string& message) {
    std::string out = file.empty() ? std::string("<input>") : file;
    if (line > 0) {
      out += ":" + std::to_string(line);
      if (column > 0) out += ":" + std::to_string(column);
    }
    return out + ": " + message;
  }

  std::string file_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace anonarray

#endif  // ANONARRAY_ERROR_HPP_
