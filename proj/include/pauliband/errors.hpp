// Copyright 2026 The pauliband Authors
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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pauliband {

/// Thrown when an operation is asked to build something larger than it supports
/// (dense oracles, exact propagators).
class ResourceLimitError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// The requested reference or mode does not apply to the given input.
class UnsupportedError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// A search did not reach its target below the step cap.
class NotFoundError : public std::runtime_error {
   public:
    NotFoundError(const std::string &what, std::int64_t best_steps, double best_error)
        : std::runtime_error(what), best_steps_(best_steps), best_error_(best_error) {}

    std::int64_t best_steps() const noexcept { return best_steps_; }
    double best_error() const noexcept { return best_error_; }

   private:
    std::int64_t best_steps_;
    double best_error_;
};

}  // namespace pauliband
