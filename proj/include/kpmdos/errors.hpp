// Copyright 2026 The kpmdos Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Exception types shared by every module. The C API maps each of them to a
 * distinct status code.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace kpmdos {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Request exceeds a configured size cap (dense ED, statevector width).
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input (circuit dump, config, CSV/JSON files).
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string &msg) {
    if (!cond) {
        throw DomainError(msg);
    }
}

} // namespace kpmdos
