// Copyright 2026 The gpcqc Authors
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

#ifndef GPCQC_ERROR_HPP
#define GPCQC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpcqc {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An argument is outside the domain of the operation (|x| > 1, bad support, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A constructed object would exceed a configured cardinality cap.
class SizeError : public Error {
  public:
    using Error::Error;
};

/// A circuit would need more qubits than the dense simulator allows.
class WidthCapError : public Error {
  public:
    WidthCapError(const std::string &what, std::size_t requested, std::size_t cap)
        : Error(what), requested_(requested), cap_(cap) {}
    std::size_t requested() const noexcept { return requested_; }
    std::size_t cap() const noexcept { return cap_; }

  private:
    std::size_t requested_;
    std::size_t cap_;
};

/// The a-priori frontier search ran out of candidates with non-zero weight.
class ExhaustionError : public Error {
  public:
    ExhaustionError(const std::string &what, std::size_t reachable)
        : Error(what), reachable_(reachable) {}
    std::size_t reachable() const noexcept { return reachable_; }

  private:
    std::size_t reachable_;
};

/// Invalid user configuration; the message names the offending field.
class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace gpcqc

#endif  // GPCQC_ERROR_HPP
