// gagap/errors.hpp
//
// Copyright 2026 Gagap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAGAP_ERRORS_HPP
#define GAGAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gagap {

// Root of all library errors. Subclasses split into two families for the
// CLI's exit-code contract: ValidationError (caller broke a documented
// precondition or supplied bad config/input schema -> exit 1) and
// RuntimeError (the environment or data failed at run time -> exit 2).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class RuntimeError : public Error {
 public:
  using Error::Error;
};

// --- syllabify ---
class InvalidWordError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class NoNucleusError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// --- disfluency ---
class EmptyInputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class NotProlongableError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class ForbiddenPositionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class ProvenanceMismatchError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

// --- metrics ---
class DivisionByZeroReferenceError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};
class EmptyCorpusError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// --- audio ---
class MalformedWavError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};
class UnsupportedFormatError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

// --- synthesis ---
class NoVoicesError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class InvalidRequestError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class InvalidResponseError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};
// A transient transport failure; the retry wrapper may try again.
class RetryableError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};
// Retries exhausted.
class GiveUpError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

// --- pipeline ---
class SchemaError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class IoError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};
class InsufficientSpeakersError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace gagap

#endif  // GAGAP_ERRORS_HPP
