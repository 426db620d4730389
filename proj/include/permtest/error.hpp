// Copyright 2026 The permtest Authors.
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

namespace permtest {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live on domains of different sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A numeric argument is outside its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A mapping is not a bijection on {0, ..., n-1}.
class InvalidPermutation : public Error {
 public:
  using Error::Error;
};

// An invalid probability vector (negative entry, bad normalization, empty).
class InvalidPmf : public Error {
 public:
  using Error::Error;
};

class EmptySampleError : public Error {
 public:
  using Error::Error;
};

// A hard-instance generator cannot build the requested object.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// A bounded search ran out of budget.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace permtest
