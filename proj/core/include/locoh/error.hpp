// Copyright 2026 The locoh Authors
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

#ifndef LOCOH_ERROR_HPP
#define LOCOH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace locoh {

/// Error classes surfaced by the library. The CLI maps them to exit codes.
enum class ErrorKind {
    kInvalidArgument,    // malformed input, failed precondition
    kDimensionMismatch,  // operands on incompatible spaces
    kDimensionOverflow,  // problem too large for dense desk-scale simulation
    kDegenerateInput,    // e.g. every measurement outcome below the cutoff
    kNonCommuting,       // ensemble violates the commuting assumption
    kUnderDetermined,    // not enough data to fit
};

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string &what) {
    if (!cond) fail(kind, what);
}

}  // namespace locoh

#endif
