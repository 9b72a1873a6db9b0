// Copyright 2026 The Surro Authors
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

namespace surro {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (bad header, too few rows, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Linear algebra breakdown: non-positive-definite covariance, singular
// normal equations.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A caller violated a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace surro
