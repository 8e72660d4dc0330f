// Copyright 2026 The overlapq Authors
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace overlapq {

enum class ErrorCode {
    kInvalidInput,
    kStateAlreadyTransformed,
    kUnsupportedConfiguration,
    kPostselectionImpossible,
    kGramNotPsd,
    kNotPsd,
    kIncompleteSettings,
    kSizeLimit,
    kParse,
};

/// Stable machine-readable name of an error code, used in CLI diagnostics.
std::string_view error_code_name(ErrorCode code);

/// True for failures of the numerics themselves rather than of the input.
bool is_numerical_failure(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace overlapq
