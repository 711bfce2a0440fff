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

#ifndef FOCKGATE_MINIMIZE_HPP
#define FOCKGATE_MINIMIZE_HPP

#include <cmath>
#include <utility>

namespace fockgate {

/// Golden-section search for a minimum of a unimodal f on [lo, hi]. Returns
/// the final bracket.
template <typename F>
std::pair<double, double> golden_section_bracket(F&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return {lo, hi};
}

/// Argmin of f on [lo, hi] by golden-section search.
template <typename F>
double golden_section_minimize(F&& f, double lo, double hi, double tol) {
    const auto [a, b] = golden_section_bracket(f, lo, hi, tol);
    const double mid = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(mid);
    const double fb = f(b);
    if (fa <= fm && fa <= fb) return a;
    if (fm <= fb) return mid;
    return b;
}

}  // namespace fockgate

#endif  // FOCKGATE_MINIMIZE_HPP
