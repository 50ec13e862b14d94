// Copyright 2026 The msdrive Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "msdrive/error.hpp"

namespace msd {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::not_hermitian: return "not_hermitian";
        case ErrorCode::degenerate_control: return "degenerate_control";
        case ErrorCode::degenerate_spectrum: return "degenerate_spectrum";
        case ErrorCode::step_too_large: return "step_too_large";
        case ErrorCode::propagation_failure: return "propagation_failure";
        case ErrorCode::config: return "config";
        case ErrorCode::io: return "io";
    }
    return "unknown";
}

}  // namespace msd
