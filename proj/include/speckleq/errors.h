// Copyright 2026 The speckleq Authors
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

#ifndef SPECKLEQ_ERRORS_H
#define SPECKLEQ_ERRORS_H

#include <stdexcept>
#include <string>

namespace speckleq {

/// Matrix or ensemble dimension is zero or inconsistent.
struct InvalidDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Row/column/mode selection is repeated, out of range, or does not fit the matrix.
struct InvalidSelection : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A model field failed validation. `field()` names the offending field.
class ValidationError : public std::invalid_argument {
   public:
    ValidationError(std::string field, const std::string &what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
    const std::string &field() const noexcept { return field_; }

   private:
    std::string field_;
};

/// Argument outside the mathematical domain of a function.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Too few samples for the requested statistic.
struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Samples with zero mean or zero spread where a ratio is required.
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Line is 1-based; 0 when not attributable to a line.
class ParseError : public std::runtime_error {
   public:
    ParseError(std::string source, size_t line, const std::string &what)
        : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
          line_(line) {}
    size_t line() const noexcept { return line_; }

   private:
    size_t line_;
};

}  // namespace speckleq

#endif
