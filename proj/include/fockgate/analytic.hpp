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

#ifndef FOCKGATE_ANALYTIC_HPP
#define FOCKGATE_ANALYTIC_HPP

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

namespace fockgate {

/// Physical scenario: bright-port amplitude alpha, phase shift phi (rad),
/// squeeze factor r, input photon number n, detector efficiency eta.
struct SignalParams {
    double alpha = 0.0;
    double phi = 0.0;
    double r = 0.0;
    int n = 1;
    double eta = 1.0;

    /// Throws ParameterError unless alpha >= 0, n >= 0 and eta in [0, 1].
    void validate() const;
};

/// Dark-port displacement beta = i alpha phi and its detected counterpart
/// beta_eta = sqrt(eta) beta e^r.
struct Displacement {
    std::complex<double> beta;
    std::complex<double> beta_eta;

    static Displacement from(const SignalParams& params);
};

enum class Method { analytic, numeric, empirical };

std::string_view to_string(Method method);
/// Inverse of to_string; throws ParameterError on unknown names.
Method method_from_string(std::string_view name);

struct StdErr {
    double false_negative = 0.0;
    double false_positive = 0.0;
};

/// Detection error probabilities. std_err is present iff method is empirical.
struct ErrorReport {
    double p_false_negative = 0.0;
    double p_false_positive = 0.0;
    Method method = Method::analytic;
    std::optional<long long> trials;
    std::optional<StdErr> std_err;

    void validate() const;
};

struct SensitivityBounds {
    double snl = 0.0;
    double squeezed_snl = 0.0;
    double heisenberg = 0.0;
};

struct OperatingPoint {
    double beta_eta = 0.0;  ///< |beta_eta| at the minimum
    double phi = 0.0;       ///< |phi| producing it
    double p_fn_min = 0.0;
};

/// Generalized Laguerre polynomial L_n^{(k)}(x).
double laguerre(int n, int k, double x);

/// The n roots of L_n, ascending. Eigenvalues of the Gauss-Laguerre Jacobi
/// matrix, each polished by bisection on a sign-change bracket. Throws
/// ConvergenceError if |L_n(root)| > tol * max(1, |root L_n'(root)|).
std::vector<double> laguerre_roots(int n, double tol = 1e-12);

/// <n|D(beta)|n> = L_n(|beta|^2) e^{-|beta|^2/2}.
std::complex<double> displaced_fock_overlap(int n, std::complex<double> beta);

/// |L_n(|beta|^2)|^2 e^{-|beta|^2}.
double p_fn_fock(int n, std::complex<double> beta);

/// e^{-|beta|^2}: false-negative rate with vacuum in the dark port.
double p_fn_vacuum(std::complex<double> beta);

/// Poisson count distribution of a coherent state of amplitude beta.
double poisson_count_prob(int count, std::complex<double> beta);

/// [eta (1 - |b|^2)^2 + (1 - eta) |b|^2] e^{-|b|^2}, b = beta_eta. Single-photon
/// input only.
double p_fn_lossy(std::complex<double> beta_eta, double eta);

/// 1 - eta. Single-photon input only.
double p_fp_lossy(double eta);

/// Smallest-|beta_eta| local minimum of p_fn_lossy (grid step 1e-2 on [0, 3],
/// golden-section refinement, then bisection on the derivative sign to 1e-12).
/// The minimum sits at |beta_eta| = 1 whenever eta > 1/3. Throws
/// ParameterError for eta <= 0, alpha <= 0, or when no interior minimum exists
/// (eta <= 1/4).
OperatingPoint optimal_operating_point(double eta, double r, double alpha);

/// Shot-noise, squeezed shot-noise and Heisenberg phase bounds for N photons.
SensitivityBounds sensitivity_bounds(double mean_photons, double r);

}  // namespace fockgate

#endif  // FOCKGATE_ANALYTIC_HPP
