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

#include "fockgate/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>

#include "fockgate/analytic.hpp"
#include "fockgate/channels.hpp"
#include "fockgate/experiment.hpp"
#include "fockgate/fock.hpp"
#include "fockgate/interferometer.hpp"

namespace fockgate {

namespace {

using cd = std::complex<double>;

std::string label(const char* fmt, double a, double b = 0.0, double c = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), fmt, a, b, c);
    return buf;
}

VerificationCheck check(const std::string& suite, std::string name, double deviation, double tolerance) {
    return {suite, std::move(name), deviation, tolerance, deviation <= tolerance};
}

void overlap_suite(std::vector<VerificationCheck>& out) {
    for (int n = 0; n <= 10; ++n) {
        double worst = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const cd beta(0.0, std::sqrt(0.5 * i));
            const int cutoff = recommended_cutoff(beta, 0.0, n);
            const auto psi = displacement_operator(beta, cutoff) * fock_state(n, cutoff);
            worst = std::max(worst, std::abs(photon_pmf(psi)(n) - p_fn_fock(n, beta)));
        }
        out.push_back(check("overlap", label("|<%g|D(beta)|n>|^2 vs closed form, |beta|^2 in [0,10]", n), worst, 1e-8));
    }
}

void displacement_suite(std::vector<VerificationCheck>& out) {
    for (double b : {0.5, 1.0, 2.0, 3.0}) {
        for (int cutoff : {64, 128}) {
            const cd beta(0.6 * b, 0.8 * b);
            const auto analytic = displacement_operator(beta, cutoff);
            const auto expm = displacement_operator_exponential(beta, cutoff);
            const int k = cutoff - analytic.boundary_buffer();
            const double agree =
                (analytic.matrix().topLeftCorner(k, k) - expm.matrix().topLeftCorner(k, k)).cwiseAbs().maxCoeff();
            out.push_back(check("displacement",
                                label("Laguerre vs matrix exponential, |beta|=%g, cutoff %g", b, cutoff), agree,
                                1e-8));
            out.push_back(check("displacement", label("interior unitarity, |beta|=%g, cutoff %g", b, cutoff),
                                analytic.interior_unitarity_defect(analytic.boundary_buffer()), 1e-8));
        }
    }
    const int cutoff = 96;
    const cd b1(0.7, -0.4);
    const cd b2(-0.3, 0.9);
    const auto lhs = displacement_operator(b1, cutoff) * displacement_operator(b2, cutoff);
    const auto rhs = displacement_operator(b1 + b2, cutoff);
    const cd phase = std::exp(cd(0.0, std::imag(b1 * std::conj(b2))));
    const int k = cutoff - boundary_buffer(std::abs(b1) + std::abs(b2), cutoff);
    const double comp =
        (lhs.matrix().topLeftCorner(k, k) - phase * rhs.matrix().topLeftCorner(k, k)).cwiseAbs().maxCoeff();
    out.push_back(check("displacement", "D(b1) D(b2) = exp(i Im(b1 b2*)) D(b1 + b2)", comp, 1e-8));
}

void squeeze_suite(std::vector<VerificationCheck>& out) {
    constexpr int cutoff = 128;
    for (double r : {0.25, 0.5, 1.0}) {
        const auto squeeze = squeeze_operator(r, cutoff);
        const auto unsqueeze = squeeze_operator(-r, cutoff);
        const auto input = squeeze * fock_state(1, cutoff);
        for (double g : {0.5, 1.0, 1.5}) {
            const cd beta(0.0, g * std::exp(-r));
            const auto lhs = unsqueeze * (displacement_operator(beta, cutoff) * input);
            const auto rhs = displacement_operator(beta * std::exp(r), cutoff) * fock_state(1, cutoff);
            out.push_back(check("squeeze", label("S(-r) D(beta) S(r)|1> vs D(beta e^r)|1>, r=%g, |beta e^r|=%g", r, g),
                                1.0 - fidelity(lhs, rhs), 1e-8));
        }
    }
}

void kraus_suite(std::vector<VerificationCheck>& out) {
    for (int n = 0; n <= 3; ++n) {
        for (double b : {0.5, 1.5}) {
            const cd beta(0.3 * b, std::sqrt(0.91) * b);
            const int cutoff = recommended_cutoff(beta, 0.0, n);
            const auto rho =
                DensityOperator<double>::from_pure(displacement_operator(beta, cutoff) * fock_state(n, cutoff));
            for (double eta : {0.5, 0.9, 0.95, 1.0}) {
                const double dist = trace_distance(apply_loss_kraus(rho, LossChannel::make(eta, cutoff)),
                                                   apply_loss_dilation(rho, eta, cutoff));
                out.push_back(check("kraus", label("Kraus vs dilation, n=%g, |beta|=%g, eta=%g", n, b, eta), dist,
                                    1e-8));
            }
        }
    }
}

void rho_eta_suite(std::vector<VerificationCheck>& out) {
    // Coherences respond to truncation as the square root of the dropped
    // weight, so these cutoffs sit well above the leakage-based recommendation.
    for (double r : {0.0, 0.5}) {
        const int cutoff = r == 0.0 ? 64 : 96;
        for (double g : {0.5, 1.0, 1.5}) {
            const cd beta(0.0, g * std::exp(-r));
            const auto psi = r == 0.0 ? displacement_operator(beta, cutoff) * fock_state(1, cutoff)
                                      : AsymptoticDarkPort(1, r, true, cutoff).state(beta);
            const auto rho = DensityOperator<double>::from_pure(psi);
            for (double eta : {0.5, 0.9, 0.95}) {
                const double dist = trace_distance(apply_loss_dilation(rho, eta, cutoff),
                                                   lossy_mixture_analytic(beta, r, eta, cutoff));
                out.push_back(check("rho-eta",
                                    label("dilation vs closed-form mixture, r=%g, |beta e^r|=%g, eta=%g", r, g, eta),
                                    dist, 1e-8));
            }
        }
    }
}

void errors_suite(std::vector<VerificationCheck>& out) {
    for (double r : {0.0, 0.5}) {
        for (double eta : {0.5, 0.95, 1.0}) {
            double worst = 0.0;
            for (double b : {0.0, 0.5, 1.0, 1.5, 2.0}) {
                InterferometerConfig config;
                config.signal = params_for_beta_eta(b, 1, eta, r);
                const ErrorReport numeric = error_probabilities_numeric(config);
                worst = std::max({worst, std::abs(numeric.p_false_negative - p_fn_lossy({b, 0.0}, eta)),
                                  std::abs(numeric.p_false_positive - p_fp_lossy(eta))});
            }
            out.push_back(check("errors", label("numeric vs closed-form P_fn, P_fp, n=1, r=%g, eta=%g", r, eta),
                                worst, 1e-8));
        }
    }
}

void convergence_suite(std::vector<VerificationCheck>& out) {
    const std::vector<double> alphas = {2.0, 4.0, 6.0};
    const std::vector<double> fid = asymptotic_convergence_check(alphas, 1.0, 1, 0.0);
    double worst_drop = 0.0;
    for (std::size_t i = 1; i < fid.size(); ++i) worst_drop = std::max(worst_drop, fid[i - 1] - fid[i]);
    out.push_back(check("convergence", "exact vs asymptotic fidelity non-decreasing over alpha = 2, 4, 6",
                        worst_drop, 0.0));
    out.push_back(check("convergence", "exact vs asymptotic infidelity at alpha = 6, alpha phi = 1",
                        1.0 - fid.back(), 1.0 - kConvergenceFidelityAtAlpha6));
}

using SuiteFn = std::function<void(std::vector<VerificationCheck>&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"overlap", overlap_suite}, {"displacement", displacement_suite}, {"squeeze", squeeze_suite},
        {"kraus", kraus_suite},     {"rho-eta", rho_eta_suite},           {"errors", errors_suite},
        {"convergence", convergence_suite},
    };
    return suites;
}

}  // namespace

const std::vector<std::string>& verification_suites() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

std::vector<VerificationCheck> run_verification(std::string_view suite) {
    std::vector<VerificationCheck> out;
    bool found = false;
    for (const auto& [name, fn] : registry()) {
        if (suite == "all" || suite == name) {
            fn(out);
            found = true;
        }
    }
    if (!found) throw ParameterError("unknown verification suite '" + std::string(suite) + "'");
    return out;
}

}  // namespace fockgate
