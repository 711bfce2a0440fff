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

#ifndef FOCKGATE_LAGUERRE_HPP
#define FOCKGATE_LAGUERRE_HPP

#include <vector>

namespace fockgate {

/// Generalized Laguerre polynomial L_n^{(k)}(x) by the ascending three-term
/// recurrence
///   (m+1) L_{m+1} = (2m+1+k-x) L_m - (m+k) L_{m-1}.
template <typename Real>
Real associated_laguerre(int n, int k, Real x) {
    if (n == 0) return Real(1);
    Real prev = Real(1);
    Real cur = Real(1 + k) - x;
    for (int m = 1; m < n; ++m) {
        const Real next = ((Real(2 * m + 1 + k) - x) * cur - Real(m + k) * prev) / Real(m + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// All of L_0^{(k)}(x) .. L_{count-1}^{(k)}(x) in one pass of the recurrence.
template <typename Real>
std::vector<Real> associated_laguerre_sequence(int count, int k, Real x) {
    std::vector<Real> out;
    if (count <= 0) return out;
    out.reserve(count);
    out.push_back(Real(1));
    if (count == 1) return out;
    out.push_back(Real(1 + k) - x);
    for (int m = 1; m + 1 < count; ++m) {
        out.push_back(((Real(2 * m + 1 + k) - x) * out[m] - Real(m + k) * out[m - 1]) / Real(m + 1));
    }
    return out;
}

}  // namespace fockgate

#endif  // FOCKGATE_LAGUERRE_HPP
