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

#ifndef FOCKGATE_ERRORS_HPP
#define FOCKGATE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fockgate {

/// Mismatched or out-of-range basis dimensions.
class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// The truncated basis cannot hold the requested state to tolerance.
class CutoffTooSmallError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An iterative numeric method failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A physical parameter lies outside its admissible domain.
class ParameterError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace fockgate

#endif  // FOCKGATE_ERRORS_HPP
