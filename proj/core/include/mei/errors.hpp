// Copyright 2026 The MEI Metrics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEI__ERRORS_HPP_
#define MEI__ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mei
{

/// Base for all errors raised on malformed or inconsistent caller input.
class InputError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// A required column is missing or the header is malformed.
class SchemaError : public InputError
{
public:
  SchemaError(const std::string & what, std::string column)
  : InputError(what), column_(std::move(column))
  {
  }

  const std::string & column() const noexcept { return column_; }

private:
  std::string column_;
};

/// A single data row failed validation.
class RowError : public InputError
{
public:
  RowError(const std::string & what, std::size_t line)
  : InputError("line " + std::to_string(line) + ": " + what), line_(line)
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class NotFoundError : public InputError
{
public:
  using InputError::InputError;
};

class UnsupportedFormatError : public InputError
{
public:
  using InputError::InputError;
};

}  // namespace mei

#endif  // MEI__ERRORS_HPP_
