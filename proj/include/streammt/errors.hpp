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

#ifndef STREAMMT_ERRORS_HPP
#define STREAMMT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace streammt {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A boundary position outside the admissible range [0, chunk length].
class BoundaryDomainError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration values (bad k, bad boundary lists, bad flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Missing, malformed or degenerate data (empty corpora, all-zero designs).
class DataError : public Error {
 public:
  using Error::Error;
};

// Numerical failure during training (divergence, non-finite loss).
class TrainingError : public Error {
 public:
  using Error::Error;
};

// Decoder asked to continue from a target context it cannot account for.
class DecoderStateError : public Error {
 public:
  using Error::Error;
};

// Trace contents inconsistent with the hypothesis they are paired with.
class TraceMismatchError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failures (unreadable/unwritable paths).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace streammt

#endif  // STREAMMT_ERRORS_HPP
