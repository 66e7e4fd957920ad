// Copyright 2026 The flyq Authors
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

#ifndef FLYQ_ERRORS_H
#define FLYQ_ERRORS_H

#include <stdexcept>
#include <string>

namespace flyq {

/// Thrown when an operation requires a normalized state and did not get one.
class InvalidStateError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Thrown when a request exceeds a hard size limit (rail count, dense matrix size).
class CapacityError : public std::length_error {
   public:
    using std::length_error::length_error;
};

/// Thrown when a circuit cannot be scheduled or simulated as configured
/// (missing source, undefined segment, unexpanded macro).
class ConfigurationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace flyq

#endif
