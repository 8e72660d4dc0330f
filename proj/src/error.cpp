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

#include "overlapq/error.hpp"

namespace overlapq {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidInput: return "invalid-input";
        case ErrorCode::kStateAlreadyTransformed: return "state-already-transformed";
        case ErrorCode::kUnsupportedConfiguration: return "unsupported-configuration";
        case ErrorCode::kPostselectionImpossible: return "postselection-impossible";
        case ErrorCode::kGramNotPsd: return "gram-not-PSD";
        case ErrorCode::kNotPsd: return "not-PSD";
        case ErrorCode::kIncompleteSettings: return "incomplete-settings";
        case ErrorCode::kSizeLimit: return "size-limit";
        case ErrorCode::kParse: return "parse-error";
    }
    return "unknown";
}

bool is_numerical_failure(ErrorCode code) {
    return code == ErrorCode::kPostselectionImpossible;
}

}  // namespace overlapq
