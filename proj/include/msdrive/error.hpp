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

#pragma once

#include <stdexcept>
#include <string>

namespace msd {

enum class ErrorCode {
    invalid_argument,
    not_hermitian,
    degenerate_control,   // both couplings vanish, or R = 2*sqrt(eta^2 + thetadot^2) underflows
    degenerate_spectrum,  // eigenvalue gap below threshold where a nondegenerate spectrum is required
    step_too_large,       // eigenvector continuity lost between finite-difference samples
    propagation_failure,  // norm/trace drift or positivity violation during integration
    config,
    io,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Base exception for everything thrown by the library. The C API maps
/// `code()` onto `msd_status`.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace msd
