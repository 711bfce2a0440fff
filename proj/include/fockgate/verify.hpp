// Copyright 2026 The fockgate Authors
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

#ifndef FOCKGATE_VERIFY_HPP
#define FOCKGATE_VERIFY_HPP

#include <string>
#include <string_view>
#include <vector>

namespace fockgate {

/// Minimum exact-vs-asymptotic fidelity at alpha = 6, alpha * phi = 1, n = 1,
/// r = 0. The measured value is 0.97242, in line with 1 - 1/alpha^2.
inline constexpr double kConvergenceFidelityAtAlpha6 = 0.97;

struct VerificationCheck {
    std::string suite;
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Suite names accepted by run_verification, excluding "all".
const std::vector<std::string>& verification_suites();

/// Runs one suite, or every suite for "all". Throws ParameterError for an
/// unknown name.
std::vector<VerificationCheck> run_verification(std::string_view suite);

}  // namespace fockgate

#endif  // FOCKGATE_VERIFY_HPP
