// Copyright 2026 The ghzswap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ghzswap {

enum class ErrorCode {
    InvalidArity,
    NotCanonical,
    InvalidPermutation,
    InvalidSubset,
    ClosedFormUnavailable,
    ResourceLimit,
    InvalidArgument,
    Parse,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArity: return "invalid-arity";
        case ErrorCode::NotCanonical: return "not-canonical";
        case ErrorCode::InvalidPermutation: return "invalid-permutation";
        case ErrorCode::InvalidSubset: return "invalid-subset";
        case ErrorCode::ClosedFormUnavailable: return "closed-form-unavailable";
        case ErrorCode::ResourceLimit: return "resource-limit";
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::Parse: return "parse-error";
    }
    return "unknown";
}

/// Library-wide exception; `code()` tells callers which contract was violated.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ghzswap
