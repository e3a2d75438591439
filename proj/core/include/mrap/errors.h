// Copyright 2026 The MrAP Authors
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

#ifndef MRAP_ERRORS_H_
#define MRAP_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrap {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (bad id, bad fraction, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input text could not be parsed. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Data does not support the requested computation (e.g. an attribute type
// without observed values).
class DataError : public Error {
 public:
  using Error::Error;
};

class InsufficientSupport : public Error {
 public:
  using Error::Error;
};

class DegenerateRegressor : public Error {
 public:
  using Error::Error;
};

class NonInvertibleSlope : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

}  // namespace mrap

#endif  // MRAP_ERRORS_H_
