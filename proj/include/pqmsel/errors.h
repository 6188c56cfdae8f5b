// Copyright 2026 The pqmsel Authors
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

#ifndef PQMSEL_ERRORS_H
#define PQMSEL_ERRORS_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pqmsel {

/// Invalid caller input: bad index, length mismatch, malformed bit-string.
class ArgumentError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A request would exceed a configured size cap (qubits, branches).
class CapacityError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. The message carries the path and line number.
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string &source, std::size_t line, const std::string &what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
    explicit ParseError(const std::string &what) : std::runtime_error(what), line_(0) {}

    std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

/// Training could not run (e.g. a single-class training view).
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class TrainingError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace pqmsel

#endif  // PQMSEL_ERRORS_H
