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

#ifndef FOCKGATE_FOCK_HPP
#define FOCKGATE_FOCK_HPP

// Truncated number-basis linear algebra for one and two bosonic modes.
//
// Truncation is never hidden: states carry the norm deficit 1 - |psi|^2 as
// `leakage`, and constructors refuse bases too small for the requested
// state instead of renormalizing.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "fockgate/errors.hpp"
#include "fockgate/laguerre.hpp"
#include "fockgate/matrix_exponential.hpp"

namespace fockgate {

inline constexpr int kMaxCutoff = 512;
inline constexpr int kTailLevels = 8;
inline constexpr double kDefaultLeakageTolerance = 1e-10;

template <typename Real>
using Complex = std::complex<Real>;
template <typename Real>
using ComplexVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using ComplexMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Selects a factor of a two-mode Hilbert space.
enum class Mode { first, second };

namespace detail {

inline void check_cutoff(Eigen::Index cutoff, const char* where) {
    if (cutoff < 1 || cutoff > kMaxCutoff) {
        throw DimensionError(std::string(where) + ": cutoff " + std::to_string(cutoff) +
                             " outside [1, " + std::to_string(kMaxCutoff) + "]");
    }
}

template <typename Real>
Real norm_slack() {
    return std::max<Real>(Real(1e-12), Real(64) * std::numeric_limits<Real>::epsilon());
}

template <typename Real>
Real hermitian_slack() {
    return std::max<Real>(Real(1e-10), Real(1024) * std::numeric_limits<Real>::epsilon());
}

template <typename Real>
Real deficit(Real norm_squared) {
    return std::max(Real(0), Real(1) - norm_squared);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// State and operator types
// ---------------------------------------------------------------------------

/// Pure state of one mode in the basis |0>..|cutoff-1>.
template <typename Real = double>
class FockVector {
   public:
    using Scalar = Complex<Real>;
    using Vector = ComplexVector<Real>;

    explicit FockVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
        detail::check_cutoff(amplitudes_.size(), "FockVector");
        const Real n2 = amplitudes_.squaredNorm();
        if (!(n2 <= Real(1) + detail::norm_slack<Real>())) {
            throw ParameterError("FockVector: squared norm " + std::to_string(static_cast<double>(n2)) +
                                 " exceeds one");
        }
        leakage_ = detail::deficit(n2);
    }

    int cutoff() const { return static_cast<int>(amplitudes_.size()); }
    const Vector& amplitudes() const { return amplitudes_; }
    Real leakage() const { return leakage_; }
    Real norm_squared() const { return amplitudes_.squaredNorm(); }
    Scalar operator[](int k) const { return amplitudes_(k); }

    /// Probability weight held by the top `levels` basis states; a proxy for
    /// truncation damage when the producing operator was itself unitary.
    Real tail_weight(int levels = kTailLevels) const {
        const int n = std::min(levels, cutoff());
        return amplitudes_.tail(n).squaredNorm();
    }

   private:
    Vector amplitudes_;
    Real leakage_ = 0;
};

/// Mixed single-mode state. Hermitian with trace 1 - leakage.
template <typename Real = double>
class DensityOperator {
   public:
    using Scalar = Complex<Real>;
    using Matrix = ComplexMatrix<Real>;

    explicit DensityOperator(Matrix matrix) : matrix_(std::move(matrix)) {
        if (matrix_.rows() != matrix_.cols()) throw DimensionError("DensityOperator: matrix must be square");
        detail::check_cutoff(matrix_.rows(), "DensityOperator");
        const Real herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
        if (herm > detail::hermitian_slack<Real>()) {
            throw ParameterError("DensityOperator: matrix is not Hermitian (defect " +
                                 std::to_string(static_cast<double>(herm)) + ")");
        }
        const Real tr = trace();
        if (tr > Real(1) + detail::hermitian_slack<Real>()) {
            throw ParameterError("DensityOperator: trace " + std::to_string(static_cast<double>(tr)) +
                                 " exceeds one");
        }
        leakage_ = detail::deficit(tr);
    }

    static DensityOperator from_pure(const FockVector<Real>& psi) {
        Matrix m = psi.amplitudes() * psi.amplitudes().adjoint();
        return DensityOperator(std::move(m));
    }

    int cutoff() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    Real leakage() const { return leakage_; }
    Real trace() const { return matrix_.diagonal().real().sum(); }
    Scalar operator()(int i, int j) const { return matrix_(i, j); }

    Real min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().minCoeff();
    }

   private:
    Matrix matrix_;
    Real leakage_ = 0;
};

/// Single-mode operator in a truncated basis. When `unitary_up_to_truncation`
/// is set, M^dagger M = I holds on the top-left (cutoff - boundary_buffer)
/// block; the remaining rows and columns are damaged by truncation.
template <typename Real = double>
class OperatorMatrix {
   public:
    using Scalar = Complex<Real>;
    using Matrix = ComplexMatrix<Real>;

    explicit OperatorMatrix(Matrix matrix, bool unitary_up_to_truncation = false, int boundary_buffer = 0)
        : matrix_(std::move(matrix)), unitary_(unitary_up_to_truncation), buffer_(boundary_buffer) {
        if (matrix_.rows() != matrix_.cols()) throw DimensionError("OperatorMatrix: matrix must be square");
        detail::check_cutoff(matrix_.rows(), "OperatorMatrix");
    }

    int cutoff() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    bool unitary_up_to_truncation() const { return unitary_; }
    int boundary_buffer() const { return buffer_; }
    Scalar operator()(int i, int j) const { return matrix_(i, j); }

    OperatorMatrix adjoint() const { return OperatorMatrix(matrix_.adjoint(), unitary_, buffer_); }

    /// max |(M^dagger M - I)_{ij}| over the top-left (cutoff - buffer) block.
    Real interior_unitarity_defect(int buffer) const {
        const Eigen::Index k = std::max<Eigen::Index>(0, matrix_.rows() - buffer);
        if (k == 0) return Real(0);
        const Matrix gram = matrix_.leftCols(k).adjoint() * matrix_.leftCols(k);
        return (gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
    }

   private:
    Matrix matrix_;
    bool unitary_ = false;
    int buffer_ = 0;
};

template <typename Real>
OperatorMatrix<Real> operator*(const OperatorMatrix<Real>& lhs, const OperatorMatrix<Real>& rhs) {
    if (lhs.cutoff() != rhs.cutoff()) throw DimensionError("operator product: cutoff mismatch");
    return OperatorMatrix<Real>(lhs.matrix() * rhs.matrix(),
                                lhs.unitary_up_to_truncation() && rhs.unitary_up_to_truncation(),
                                std::max(lhs.boundary_buffer(), rhs.boundary_buffer()));
}

template <typename Real>
FockVector<Real> operator*(const OperatorMatrix<Real>& op, const FockVector<Real>& psi) {
    if (op.cutoff() != psi.cutoff()) throw DimensionError("operator action: cutoff mismatch");
    return FockVector<Real>(op.matrix() * psi.amplitudes());
}

/// M rho M^dagger.
template <typename Real>
DensityOperator<Real> conjugate(const OperatorMatrix<Real>& op, const DensityOperator<Real>& rho) {
    if (op.cutoff() != rho.cutoff()) throw DimensionError("conjugate: cutoff mismatch");
    ComplexMatrix<Real> m = op.matrix() * rho.matrix() * op.matrix().adjoint();
    m = (m + m.adjoint()) * Real(0.5);
    return DensityOperator<Real>(std::move(m));
}

/// Pure state on mode_a (x) mode_b, amplitudes(n_a, n_b). Flattened index is
/// n_a * cutoff_b + n_b.
template <typename Real = double>
class TwoModeState {
   public:
    using Matrix = ComplexMatrix<Real>;

    explicit TwoModeState(Matrix amplitudes) : amplitudes_(std::move(amplitudes)) {
        detail::check_cutoff(amplitudes_.rows(), "TwoModeState");
        detail::check_cutoff(amplitudes_.cols(), "TwoModeState");
        const Real n2 = amplitudes_.squaredNorm();
        if (!(n2 <= Real(1) + detail::norm_slack<Real>())) {
            throw ParameterError("TwoModeState: squared norm exceeds one");
        }
        leakage_ = detail::deficit(n2);
    }

    int cutoff_a() const { return static_cast<int>(amplitudes_.rows()); }
    int cutoff_b() const { return static_cast<int>(amplitudes_.cols()); }
    const Matrix& amplitudes() const { return amplitudes_; }
    Real leakage() const { return leakage_; }

    Real mean_photon_number() const {
        Real total = 0;
        for (Eigen::Index i = 0; i < amplitudes_.rows(); ++i) {
            for (Eigen::Index j = 0; j < amplitudes_.cols(); ++j) {
                total += Real(i + j) * std::norm(amplitudes_(i, j));
            }
        }
        return total;
    }

   private:
    Matrix amplitudes_;
    Real leakage_ = 0;
};

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

template <typename Real = double>
FockVector<Real> fock_state(int n, int cutoff) {
    detail::check_cutoff(cutoff, "fock_state");
    if (n < 0 || n >= cutoff) {
        throw DimensionError("fock_state: photon number " + std::to_string(n) + " outside basis of size " +
                             std::to_string(cutoff));
    }
    ComplexVector<Real> v = ComplexVector<Real>::Zero(cutoff);
    v(n) = Real(1);
    return FockVector<Real>(std::move(v));
}

/// Coherent state alpha^k e^{-|alpha|^2/2} / sqrt(k!) truncated to `cutoff`.
template <typename Real = double>
FockVector<Real> coherent_state(Complex<Real> alpha, int cutoff, Real tol = Real(kDefaultLeakageTolerance)) {
    detail::check_cutoff(cutoff, "coherent_state");
    ComplexVector<Real> v(cutoff);
    v(0) = std::exp(-std::norm(alpha) / Real(2));
    for (int k = 1; k < cutoff; ++k) {
        v(k) = v(k - 1) * alpha / std::sqrt(Real(k));
    }
    FockVector<Real> psi(std::move(v));
    if (psi.leakage() >= tol) {
        throw CutoffTooSmallError("coherent_state: |alpha|=" + std::to_string(static_cast<double>(std::abs(alpha))) +
                                  " leaks " + std::to_string(static_cast<double>(psi.leakage())) +
                                  " beyond cutoff " + std::to_string(cutoff));
    }
    return psi;
}

/// Zero-pads or truncates to a new cutoff. Truncation shows up as leakage.
template <typename Real>
FockVector<Real> resized(const FockVector<Real>& psi, int cutoff) {
    detail::check_cutoff(cutoff, "resized");
    ComplexVector<Real> v = ComplexVector<Real>::Zero(cutoff);
    const int keep = std::min(cutoff, psi.cutoff());
    v.head(keep) = psi.amplitudes().head(keep);
    return FockVector<Real>(std::move(v));
}

template <typename Real>
DensityOperator<Real> resized(const DensityOperator<Real>& rho, int cutoff) {
    detail::check_cutoff(cutoff, "resized");
    ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(cutoff, cutoff);
    const int keep = std::min(cutoff, rho.cutoff());
    m.topLeftCorner(keep, keep) = rho.matrix().topLeftCorner(keep, keep);
    return DensityOperator<Real>(std::move(m));
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

template <typename Real = double>
OperatorMatrix<Real> annihilation_matrix(int cutoff) {
    detail::check_cutoff(cutoff, "annihilation_matrix");
    ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(cutoff, cutoff);
    for (int k = 1; k < cutoff; ++k) m(k - 1, k) = std::sqrt(Real(k));
    return OperatorMatrix<Real>(std::move(m));
}

template <typename Real = double>
OperatorMatrix<Real> creation_matrix(int cutoff) {
    return annihilation_matrix<Real>(cutoff).adjoint();
}

template <typename Real = double>
OperatorMatrix<Real> number_matrix(int cutoff) {
    detail::check_cutoff(cutoff, "number_matrix");
    ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(cutoff, cutoff);
    for (int k = 0; k < cutoff; ++k) m(k, k) = Real(k);
    return OperatorMatrix<Real>(std::move(m));
}

/// Boundary buffer for interior-block checks of an operator that displaces by
/// |g| in a basis of size `cutoff`. Column n of D(g) reaches up to about
/// (sqrt(n) + |g|)^2 plus a transition tail, so the trustworthy interior is
/// floor((sqrt(cutoff - 10 - 4|g|) - |g|)^2) levels.
inline int boundary_buffer(double displacement_abs, int cutoff) {
    const double room = static_cast<double>(cutoff) - 10.0 - 4.0 * displacement_abs;
    if (room <= 0.0) return cutoff;
    const double edge = std::sqrt(room) - displacement_abs;
    const int interior = edge > 0.0 ? static_cast<int>(std::floor(edge * edge)) : 0;
    return cutoff - std::min(interior, cutoff);
}

/// Displacement D(beta) from its closed-form matrix elements
///   <m|D|n> = sqrt(n!/m!) beta^{m-n} e^{-|beta|^2/2} L_n^{(m-n)}(|beta|^2),  m >= n,
///   <n|D|m> = sqrt(n!/m!) (-beta*)^{m-n} e^{-|beta|^2/2} L_n^{(m-n)}(|beta|^2).
/// Evaluated in long double and log space so that large Laguerre values and
/// tiny prefactors never overflow. Throws if D(beta)|0> leaks >= tol.
template <typename Real = double>
OperatorMatrix<Real> displacement_operator(Complex<Real> beta, int cutoff, Real tol = Real(kDefaultLeakageTolerance)) {
    using Wide = long double;
    detail::check_cutoff(cutoff, "displacement_operator");
    const int buffer = boundary_buffer(static_cast<double>(std::abs(beta)), cutoff);
    const Wide x = static_cast<Wide>(std::norm(beta));
    if (x == 0) {
        return OperatorMatrix<Real>(ComplexMatrix<Real>::Identity(cutoff, cutoff), true, buffer);
    }
    const Wide modulus = std::sqrt(x);
    const std::complex<Wide> unit(static_cast<Wide>(beta.real()) / modulus,
                                  static_cast<Wide>(beta.imag()) / modulus);
    const std::complex<Wide> unit_adj = -std::conj(unit);
    const Wide log_x = std::log(x);

    std::vector<Wide> log_factorial(cutoff);
    for (int j = 0; j < cutoff; ++j) log_factorial[j] = std::lgamma(static_cast<Wide>(j + 1));

    ComplexMatrix<Real> m(cutoff, cutoff);
    std::complex<Wide> phase_lower(1, 0);
    std::complex<Wide> phase_upper(1, 0);
    for (int k = 0; k < cutoff; ++k) {
        const std::vector<Wide> lag = associated_laguerre_sequence<Wide>(cutoff - k, k, x);
        for (int n = 0; n + k < cutoff; ++n) {
            const int row = n + k;
            const Wide log_pref =
                Wide(0.5) * (log_factorial[n] - log_factorial[row]) + Wide(0.5) * Wide(k) * log_x - x / Wide(2);
            const Wide magnitude = std::exp(log_pref) * lag[n];
            const std::complex<Wide> lower = magnitude * phase_lower;
            m(row, n) = Complex<Real>(static_cast<Real>(lower.real()), static_cast<Real>(lower.imag()));
            if (k > 0) {
                const std::complex<Wide> upper = magnitude * phase_upper;
                m(n, row) = Complex<Real>(static_cast<Real>(upper.real()), static_cast<Real>(upper.imag()));
            }
        }
        phase_lower *= unit;
        phase_upper *= unit_adj;
    }

    const Real vacuum_leak = detail::deficit<Real>(m.col(0).squaredNorm());
    if (vacuum_leak >= tol) {
        throw CutoffTooSmallError("displacement_operator: |beta|=" + std::to_string(static_cast<double>(modulus)) +
                                  " needs a larger cutoff than " + std::to_string(cutoff));
    }
    return OperatorMatrix<Real>(std::move(m), true, buffer);
}

/// Independent construction exp(beta a^dagger - beta* a) of the truncated
/// generator. Agrees with displacement_operator on the interior block only.
template <typename Real = double>
OperatorMatrix<Real> displacement_operator_exponential(Complex<Real> beta, int cutoff) {
    const ComplexMatrix<Real> a = annihilation_matrix<Real>(cutoff).matrix();
    const ComplexMatrix<Real> generator = beta * a.adjoint() - std::conj(beta) * a;
    return OperatorMatrix<Real>(matrix_exponential(generator), true,
                                boundary_buffer(static_cast<double>(std::abs(beta)), cutoff));
}

/// 1 - sum_{2k < cutoff} |<2k|S(r)|0>|^2 from the closed-form squeezed vacuum.
template <typename Real = double>
Real squeezed_vacuum_leakage(Real r, int cutoff) {
    const Real t2 = std::pow(std::tanh(r), 2);
    Real term = Real(1) / std::cosh(r);
    Real total = 0;
    for (int k = 0; 2 * k < cutoff; ++k) {
        if (k > 0) term *= t2 * Real(2 * k - 1) / Real(2 * k);
        total += term;
    }
    return detail::deficit(total);
}

/// Squeeze S(r) = exp(r (a^dagger^2 - a^2) / 2) by matrix exponential of the
/// truncated generator. |r| <= 2.
template <typename Real = double>
OperatorMatrix<Real> squeeze_operator(Real r, int cutoff, Real tol = Real(kDefaultLeakageTolerance)) {
    if (!(std::abs(r) <= Real(2))) {
        throw ParameterError("squeeze_operator: |r| must not exceed 2");
    }
    detail::check_cutoff(cutoff, "squeeze_operator");
    if (r == Real(0)) {
        return OperatorMatrix<Real>(ComplexMatrix<Real>::Identity(cutoff, cutoff), true, boundary_buffer(0.0, cutoff));
    }
    if (squeezed_vacuum_leakage(r, cutoff) >= tol) {
        throw CutoffTooSmallError("squeeze_operator: r=" + std::to_string(static_cast<double>(r)) +
                                  " needs a larger cutoff than " + std::to_string(cutoff));
    }
    const ComplexMatrix<Real> a = annihilation_matrix<Real>(cutoff).matrix();
    const ComplexMatrix<Real> a2 = a * a;
    const ComplexMatrix<Real> generator = (r / Real(2)) * (a2.adjoint() - a2);
    return OperatorMatrix<Real>(matrix_exponential(generator), true, boundary_buffer(0.0, cutoff));
}

// ---------------------------------------------------------------------------
// Measurements and distances
// ---------------------------------------------------------------------------

template <typename Real>
Complex<Real> inner_product(const FockVector<Real>& x, const FockVector<Real>& y) {
    if (x.cutoff() != y.cutoff()) throw DimensionError("inner_product: cutoff mismatch");
    return x.amplitudes().dot(y.amplitudes());
}

template <typename Real>
RealVector<Real> photon_pmf(const FockVector<Real>& psi) {
    return psi.amplitudes().cwiseAbs2();
}

template <typename Real>
RealVector<Real> photon_pmf(const DensityOperator<Real>& rho) {
    return rho.matrix().diagonal().real();
}

template <typename Real>
Real mean_photon_number(const FockVector<Real>& psi) {
    const RealVector<Real> p = photon_pmf(psi);
    return (RealVector<Real>::LinSpaced(p.size(), Real(0), Real(p.size() - 1)).array() * p.array()).sum();
}

template <typename Real>
Real mean_photon_number(const DensityOperator<Real>& rho) {
    const RealVector<Real> p = photon_pmf(rho);
    return (RealVector<Real>::LinSpaced(p.size(), Real(0), Real(p.size() - 1)).array() * p.array()).sum();
}

/// |<x|y>|^2.
template <typename Real>
Real fidelity(const FockVector<Real>& x, const FockVector<Real>& y) {
    return std::norm(inner_product(x, y));
}

/// <psi|rho|psi>.
template <typename Real>
Real fidelity(const FockVector<Real>& psi, const DensityOperator<Real>& rho) {
    if (psi.cutoff() != rho.cutoff()) throw DimensionError("fidelity: cutoff mismatch");
    return std::real(psi.amplitudes().dot(rho.matrix() * psi.amplitudes()));
}

/// (1/2) ||rho - sigma||_1.
template <typename Real>
Real trace_distance(const DensityOperator<Real>& rho, const DensityOperator<Real>& sigma) {
    if (rho.cutoff() != sigma.cutoff()) throw DimensionError("trace_distance: cutoff mismatch");
    const ComplexMatrix<Real> diff = rho.matrix() - sigma.matrix();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(diff, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum() / Real(2);
}

// ---------------------------------------------------------------------------
// Two modes
// ---------------------------------------------------------------------------

template <typename Real>
TwoModeState<Real> tensor(const FockVector<Real>& a, const FockVector<Real>& b) {
    return TwoModeState<Real>(a.amplitudes() * b.amplitudes().transpose());
}

template <typename Real>
DensityOperator<Real> partial_trace(const TwoModeState<Real>& state, Mode keep) {
    const ComplexMatrix<Real>& psi = state.amplitudes();
    ComplexMatrix<Real> rho = keep == Mode::first ? ComplexMatrix<Real>(psi * psi.adjoint())
                                                  : ComplexMatrix<Real>(psi.transpose() * psi.conjugate());
    rho = (rho + rho.adjoint()) * Real(0.5);
    return DensityOperator<Real>(std::move(rho));
}

/// Partial trace of a two-mode density matrix indexed n_a * cutoff_b + n_b.
template <typename Real>
DensityOperator<Real> partial_trace(const ComplexMatrix<Real>& rho, int cutoff_a, int cutoff_b, Mode keep) {
    if (rho.rows() != Eigen::Index(cutoff_a) * cutoff_b || rho.cols() != rho.rows()) {
        throw DimensionError("partial_trace: matrix does not match the declared cutoffs");
    }
    const int kept = keep == Mode::first ? cutoff_a : cutoff_b;
    const int traced = keep == Mode::first ? cutoff_b : cutoff_a;
    ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(kept, kept);
    for (int i = 0; i < kept; ++i) {
        for (int j = 0; j < kept; ++j) {
            Complex<Real> acc(0);
            for (int t = 0; t < traced; ++t) {
                const Eigen::Index row = keep == Mode::first ? Eigen::Index(i) * cutoff_b + t
                                                             : Eigen::Index(t) * cutoff_b + i;
                const Eigen::Index col = keep == Mode::first ? Eigen::Index(j) * cutoff_b + t
                                                             : Eigen::Index(t) * cutoff_b + j;
                acc += rho(row, col);
            }
            out(i, j) = acc;
        }
    }
    return DensityOperator<Real>(std::move(out));
}

// ---------------------------------------------------------------------------
// Cutoff management
// ---------------------------------------------------------------------------

/// Truncation damage of S(-r) D(beta) S(r) |n> computed at `cutoff`: the norm
/// deficit plus tail weight of the final state, or the tail weight of the
/// intermediate squeezed state if that is larger. Infinite if an operator
/// refuses the cutoff.
inline double round_trip_leakage(std::complex<double> beta, double r, int n, int cutoff, double tol) {
    try {
        FockVector<double> psi = fock_state(n, cutoff);
        double intermediate = 0;
        if (r != 0) {
            psi = squeeze_operator(r, cutoff, tol) * psi;
            intermediate = psi.tail_weight();
        }
        psi = displacement_operator(beta, cutoff, tol) * psi;
        if (r != 0) psi = squeeze_operator(-r, cutoff, tol) * psi;
        const double tail = r != 0 ? psi.tail_weight() : 0.0;
        return std::max(intermediate, psi.leakage() + tail);
    } catch (const CutoffTooSmallError&) {
        return std::numeric_limits<double>::infinity();
    }
}

/// Smallest validated cutoff for the anti-squeeze round trip of |n>. Starts at
/// ceil(|g|^2 + 6|g| + n e^{2r} + 10) with g = beta e^r and grows by 1.5x
/// until the measured leakage drops below tol.
inline int recommended_cutoff(std::complex<double> beta, double r, int n, double tol = kDefaultLeakageTolerance,
                              int cap = kMaxCutoff) {
    if (!(tol > 0)) throw ParameterError("recommended_cutoff: tol must be positive");
    if (n < 0) throw ParameterError("recommended_cutoff: n must be non-negative");
    const double g = std::abs(beta) * std::exp(r);
    int cutoff = static_cast<int>(std::ceil(g * g + 6.0 * g + n * std::exp(2.0 * r) + 10.0));
    cutoff = std::max(cutoff, n + 1);
    while (true) {
        if (cutoff > cap) {
            throw CutoffTooSmallError("recommended_cutoff: leakage above tolerance at the cap of " +
                                      std::to_string(cap));
        }
        if (round_trip_leakage(beta, r, n, cutoff, tol) < tol) return cutoff;
        const int grown = static_cast<int>(std::ceil(cutoff * 1.5));
        cutoff = (cutoff < cap && grown > cap) ? cap : grown;
    }
}

}  // namespace fockgate

#endif  // FOCKGATE_FOCK_HPP
