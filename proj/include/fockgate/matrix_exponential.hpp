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

#ifndef FOCKGATE_MATRIX_EXPONENTIAL_HPP
#define FOCKGATE_MATRIX_EXPONENTIAL_HPP

#include <Eigen/Dense>

#include <array>
#include <cmath>

#include "fockgate/errors.hpp"

namespace fockgate {

namespace detail {

/// Pade approximant of degree m: returns U (odd part) and V (even part) with
/// exp(A) ~= (V - U)^{-1} (V + U).
template <typename Matrix, std::size_t N>
void pade_low_order(const Matrix& a, const std::array<double, N>& b, Matrix& u, Matrix& v) {
    using Scalar = typename Matrix::Scalar;
    const Matrix ident = Matrix::Identity(a.rows(), a.cols());
    const Matrix a2 = a * a;
    Matrix odd = Scalar(b[1]) * ident;
    Matrix even = Scalar(b[0]) * ident;
    Matrix power = ident;
    for (std::size_t j = 2; j < N; j += 2) {
        power = power * a2;
        even += Scalar(b[j]) * power;
        if (j + 1 < N) odd += Scalar(b[j + 1]) * power;
    }
    u.noalias() = a * odd;
    v = even;
}

template <typename Matrix>
void pade13(const Matrix& a, Matrix& u, Matrix& v) {
    using Scalar = typename Matrix::Scalar;
    static constexpr std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    const Matrix ident = Matrix::Identity(a.rows(), a.cols());
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    Matrix inner = Scalar(b[13]) * a6 + Scalar(b[11]) * a4 + Scalar(b[9]) * a2;
    Matrix odd = a6 * inner;
    odd += Scalar(b[7]) * a6 + Scalar(b[5]) * a4 + Scalar(b[3]) * a2 + Scalar(b[1]) * ident;
    u.noalias() = a * odd;
    inner = Scalar(b[12]) * a6 + Scalar(b[10]) * a4 + Scalar(b[8]) * a2;
    v = a6 * inner;
    v += Scalar(b[6]) * a6 + Scalar(b[4]) * a4 + Scalar(b[2]) * a2 + Scalar(b[0]) * ident;
}

}  // namespace detail

/// Dense matrix exponential by scaling and squaring with Pade approximants of
/// degree 3, 5, 7, 9 or 13 chosen from the 1-norm (Higham's 2005 thresholds).
template <typename Derived>
typename Derived::PlainObject matrix_exponential(const Eigen::MatrixBase<Derived>& input) {
    using Matrix = typename Derived::PlainObject;
    if (input.rows() != input.cols()) {
        throw DimensionError("matrix_exponential: matrix must be square");
    }
    const Matrix a = input;
    const Eigen::Index dim = a.rows();
    if (dim == 0) return a;

    const double norm1 = static_cast<double>(a.cwiseAbs().colwise().sum().maxCoeff());
    Matrix u(dim, dim);
    Matrix v(dim, dim);
    int squarings = 0;

    if (norm1 < 1.495585217958292e-2) {
        detail::pade_low_order(a, std::array<double, 4>{120.0, 60.0, 12.0, 1.0}, u, v);
    } else if (norm1 < 2.539398330063230e-1) {
        detail::pade_low_order(a, std::array<double, 6>{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0}, u, v);
    } else if (norm1 < 9.504178996162932e-1) {
        detail::pade_low_order(
            a,
            std::array<double, 8>{17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0},
            u, v);
    } else if (norm1 < 2.097847961257068) {
        detail::pade_low_order(a,
                               std::array<double, 10>{17643225600.0, 8821612800.0, 2075673600.0,
                                                      302702400.0, 30270240.0, 2162160.0, 110880.0,
                                                      3960.0, 90.0, 1.0},
                               u, v);
    } else {
        constexpr double theta13 = 5.371920351148152;
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
        const Matrix scaled = a / typename Matrix::Scalar(std::ldexp(1.0, squarings));
        detail::pade13(scaled, u, v);
    }

    Matrix result = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) {
        result = (result * result).eval();
    }
    return result;
}

}  // namespace fockgate

#endif  // FOCKGATE_MATRIX_EXPONENTIAL_HPP
