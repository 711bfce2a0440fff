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

#include "fockgate/analytic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "fockgate/errors.hpp"
#include "fockgate/laguerre.hpp"
#include "fockgate/minimize.hpp"

namespace fockgate {

namespace {

void check_eta(double eta, const char* where) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw ParameterError(std::string(where) + ": eta must lie in [0, 1]");
    }
}

// Bisection for a sign change of L_n on [lo, hi], signs taken in long double.
double bisect_laguerre_root(int n, double lo, double hi) {
    const auto value = [n](double x) { return associated_laguerre<long double>(n, 0, x); };
    long double f_lo = value(lo);
    if (f_lo == 0) return lo;
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const long double f_mid = value(mid);
        if (f_mid == 0) return mid;
        if ((f_mid < 0) == (f_lo < 0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return std::abs(value(lo)) <= std::abs(value(hi)) ? lo : hi;
}

// d/ds of the bracket form at s = |beta_eta|^2, up to the positive factor e^{-s}.
double p_fn_lossy_slope(double s, double eta) {
    return -2.0 * eta * (1.0 - s) + (1.0 - eta) - eta * (1.0 - s) * (1.0 - s) - (1.0 - eta) * s;
}

}  // namespace

void SignalParams::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be finite and non-negative");
    if (!std::isfinite(phi)) throw ParameterError("phi must be finite");
    if (!std::isfinite(r)) throw ParameterError("r must be finite");
    if (n < 0) throw ParameterError("n must be non-negative");
    check_eta(eta, "SignalParams");
}

Displacement Displacement::from(const SignalParams& params) {
    const std::complex<double> beta(0.0, params.alpha * params.phi);
    return {beta, std::sqrt(params.eta) * std::exp(params.r) * beta};
}

std::string_view to_string(Method method) {
    switch (method) {
        case Method::analytic:
            return "analytic";
        case Method::numeric:
            return "numeric";
        case Method::empirical:
            return "empirical";
    }
    return "unknown";
}

Method method_from_string(std::string_view name) {
    if (name == "analytic") return Method::analytic;
    if (name == "numeric") return Method::numeric;
    if (name == "empirical") return Method::empirical;
    throw ParameterError("unknown method '" + std::string(name) + "'");
}

void ErrorReport::validate() const {
    const auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(p_false_negative) || !in_unit(p_false_positive)) {
        throw ParameterError("ErrorReport: probabilities must lie in [0, 1]");
    }
    if (std_err.has_value() != (method == Method::empirical)) {
        throw ParameterError("ErrorReport: std_err must be present exactly for empirical reports");
    }
}

double laguerre(int n, int k, double x) {
    if (n < 0 || k < 0) throw ParameterError("laguerre: n and k must be non-negative");
    return associated_laguerre<double>(n, k, x);
}

std::vector<double> laguerre_roots(int n, double tol) {
    if (n < 1) throw ParameterError("laguerre_roots: n must be at least 1");
    if (!(tol > 0)) throw ParameterError("laguerre_roots: tol must be positive");

    // Jacobi matrix of the Laguerre weight: diagonal 2i+1, off-diagonal i.
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + 1.0;
    for (int i = 1; i < n; ++i) sub(i - 1) = static_cast<double>(i);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceError("laguerre_roots: eigensolver failed");
    const Eigen::VectorXd eig = solver.eigenvalues();

    std::vector<double> roots(n);
    for (int j = 0; j < n; ++j) {
        const double lo = j == 0 ? 0.0 : 0.5 * (eig(j - 1) + eig(j));
        const double hi = j == n - 1 ? eig(j) + std::max(1.0, 0.5 * (j > 0 ? eig(j) - eig(j - 1) : 1.0))
                                     : 0.5 * (eig(j) + eig(j + 1));
        const long double f_lo = associated_laguerre<long double>(n, 0, lo);
        const long double f_hi = associated_laguerre<long double>(n, 0, hi);
        if ((f_lo < 0) == (f_hi < 0)) {
            throw ConvergenceError("laguerre_roots: no sign change bracketing root " + std::to_string(j));
        }
        roots[j] = bisect_laguerre_root(n, lo, hi);
        // A double-precision root is only defined to within half an ulp, so the
        // residual is measured against |x L_n'(x)| once that exceeds one.
        const long double residual = std::abs(associated_laguerre<long double>(n, 0, roots[j]));
        const long double slope = std::abs(associated_laguerre<long double>(n - 1, 1, roots[j]));
        const long double scale = std::max<long double>(1, slope * roots[j]);
        if (!(residual <= tol * scale)) {
            throw ConvergenceError("laguerre_roots: residual " + std::to_string(static_cast<double>(residual)) +
                                   " above tolerance for root " + std::to_string(j) + " of L_" +
                                   std::to_string(n));
        }
    }
    return roots;
}

std::complex<double> displaced_fock_overlap(int n, std::complex<double> beta) {
    const double x = std::norm(beta);
    return {laguerre(n, 0, x) * std::exp(-x / 2.0), 0.0};
}

double p_fn_fock(int n, std::complex<double> beta) {
    return std::norm(displaced_fock_overlap(n, beta));
}

double p_fn_vacuum(std::complex<double> beta) {
    return std::exp(-std::norm(beta));
}

double poisson_count_prob(int count, std::complex<double> beta) {
    if (count < 0) throw ParameterError("poisson_count_prob: count must be non-negative");
    const double x = std::norm(beta);
    if (x == 0.0) return count == 0 ? 1.0 : 0.0;
    return std::exp(count * std::log(x) - x - std::lgamma(count + 1.0));
}

double p_fn_lossy(std::complex<double> beta_eta, double eta) {
    check_eta(eta, "p_fn_lossy");
    const double s = std::norm(beta_eta);
    return (eta * (1.0 - s) * (1.0 - s) + (1.0 - eta) * s) * std::exp(-s);
}

double p_fp_lossy(double eta) {
    check_eta(eta, "p_fp_lossy");
    return 1.0 - eta;
}

OperatingPoint optimal_operating_point(double eta, double r, double alpha) {
    if (!(alpha > 0.0)) throw ParameterError("optimal_operating_point: alpha must be positive");
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw ParameterError("optimal_operating_point: eta must lie in (0, 1]; no signal reaches the detector");
    }
    if (!std::isfinite(r)) throw ParameterError("optimal_operating_point: r must be finite");

    const auto objective = [eta](double b) { return p_fn_lossy({b, 0.0}, eta); };
    constexpr double kStep = 1e-2;
    constexpr int kPoints = 301;
    std::vector<double> values(kPoints);
    for (int i = 0; i < kPoints; ++i) values[i] = objective(i * kStep);

    int best = -1;
    for (int i = 1; i + 1 < kPoints; ++i) {
        if (values[i] < values[i - 1] && values[i] <= values[i + 1]) {
            best = i;
            break;
        }
    }
    if (best < 0) {
        throw ParameterError("optimal_operating_point: p_fn has no interior local minimum for eta = " +
                             std::to_string(eta));
    }

    double lo = (best - 1) * kStep;
    double hi = (best + 1) * kStep;
    const double coarse = golden_section_minimize(objective, lo, hi, 1e-9);

    // The objective is flat to O(dx^2) at its minimum, so finish on the sign
    // of the analytic slope.
    const auto slope = [eta](double b) { return p_fn_lossy_slope(b * b, eta); };
    double a = std::max(lo, coarse - 1e-6);
    double b = std::min(hi, coarse + 1e-6);
    if (!(slope(a) < 0.0 && slope(b) > 0.0)) {
        a = lo;
        b = hi;
    }
    if (slope(a) < 0.0 && slope(b) > 0.0) {
        while (b - a > 1e-13) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            (slope(mid) < 0.0 ? a : b) = mid;
        }
    }
    const double beta_eta = 0.5 * (a + b);

    OperatingPoint out;
    out.beta_eta = beta_eta;
    out.phi = beta_eta * std::exp(-r) / (std::sqrt(eta) * alpha);
    out.p_fn_min = objective(beta_eta);
    return out;
}

SensitivityBounds sensitivity_bounds(double mean_photons, double r) {
    if (!(mean_photons >= 1.0)) throw ParameterError("sensitivity_bounds: N must be at least 1");
    const double root = std::sqrt(mean_photons);
    return {1.0 / root, std::exp(-r) / root, 1.0 / mean_photons};
}

}  // namespace fockgate
