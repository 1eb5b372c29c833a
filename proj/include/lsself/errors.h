// Copyright 2026 The lsself Authors
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

#ifndef LSSELF_ERRORS_H
#define LSSELF_ERRORS_H

#include <stdexcept>
#include <string>

namespace lsself {

/// Input outside an operation's domain (bad prime, bad index, bad delta).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Mismatched shapes, missing generators, inconsistent supports.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical precondition did not hold within tolerance.
struct PreconditionError : std::runtime_error {
    PreconditionError(const std::string &what, double residual)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

/// A requested object would exceed the configured size cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lsself

#endif
