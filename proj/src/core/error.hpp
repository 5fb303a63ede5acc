// Copyright 2026 the netdimred authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace ndr {

// Exception hierarchy used throughout the core. The C API maps each type to
// a distinct status code, so keep the taxonomy small and stable.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller handed us something that violates a precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// File could not be opened/read/written.
class IoError : public Error {
 public:
  using Error::Error;
};

// File contents could not be interpreted (CSV structure, JSON config).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Numerical failure: singular matrix, zero variance, non-convergence that
// cannot be reported through a flag.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace ndr
