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

#include "fockgate/interferometer.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "fockgate/errors.hpp"

using namespace fockgate;

namespace {

using cd = std::complex<double>;

InterferometerConfig make(double alpha, double phi, double r, int n, bool antisqueeze = true) {
    InterferometerConfig c;
    c.signal = {alpha, phi, r, n, 1.0};
    c.apply_antisqueeze = antisqueeze;
    return c;
}

}  // namespace

TEST(asymptotic, no_phase_no_change) {
    for (int n : {0, 1, 3}) {
        const auto out = dark_port_state_asymptotic(make(100.0, 0.0, 0.0, n));
        EXPECT_NEAR(std::norm(out[n]), 1.0, 1e-15);
    }
}

TEST(asymptotic, single_photon_vanishes_at_unit_displacement) {
    const auto out = dark_port_state_asymptotic(make(100.0, 0.01, 0.0, 1));
    EXPECT_LT(photon_pmf(out)(1), 1e-20);
}

TEST(asymptotic, antisqueezer_amplifies_displacement) {
    const double r = 0.5;
    const auto out = dark_port_state_asymptotic(make(100.0, std::exp(-r) / 100.0, r, 1));
    EXPECT_LT(photon_pmf(out)(1), 1e-8);
    EXPECT_LT(out.leakage(), 1e-10);
}

TEST(asymptotic, pmf_symmetric_in_phase_sign) {
    for (double r : {0.0, 0.5}) {
        const Eigen::VectorXd plus = photon_pmf(dark_port_state_asymptotic(make(50.0, 0.017, r, 2)));
        const Eigen::VectorXd minus = photon_pmf(dark_port_state_asymptotic(make(50.0, -0.017, r, 2)));
        EXPECT_LT((plus - minus).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(asymptotic, port_reports_truncation) {
    const AsymptoticDarkPort port(1, 0.0, true, 12);
    EXPECT_THROW(port.state(cd(0.0, 3.0)), CutoffTooSmallError);
    EXPECT_THROW(AsymptoticDarkPort(1, 1.5, true, 16), CutoffTooSmallError);
}

TEST(mach_zehnder, dark_mode_transform) {
    // For one photon in the dark mode the network acts as b -> b cos(phi) + i a sin(phi).
    for (double phi : {0.0, 0.3, 1.1}) {
        const auto mz = mach_zehnder(phi, 1);
        const Eigen::MatrixXcd& one = mz.block(1);  // basis index = photons in the bright mode
        EXPECT_NEAR(std::abs(one(0, 0) - std::cos(phi)), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(one(1, 0) - cd(0.0, std::sin(phi))), 0.0, 1e-14);
    }
}

TEST(mach_zehnder, conserves_photon_number) {
    const auto in = tensor(coherent_state(cd(2.0), 40), squeeze_operator(0.3, 24) * fock_state(1, 24));
    const auto out = mach_zehnder(0.37, 63).apply(in);
    EXPECT_NEAR(out.mean_photon_number(), in.mean_photon_number(), 1e-8);
}

TEST(exact, no_phase_returns_dark_input) {
    for (double r : {0.0, 0.4}) {
        const auto rho = dark_port_state_exact(make(3.0, 0.0, r, 1, false));
        const int c = rho.cutoff();
        auto expect = fock_state(1, c);
        if (r != 0.0) expect = squeeze_operator(r, c) * expect;
        EXPECT_GE(fidelity(expect, rho), 1.0 - 1e-8) << r;
        const auto round = dark_port_state_exact(make(3.0, 0.0, r, 1, true));
        EXPECT_GE(fidelity(fock_state(1, round.cutoff()), round), 1.0 - 1e-8) << r;
    }
}

TEST(exact, lone_photon_is_bernoulli) {
    for (double phi : {0.2, 0.7, 1.3}) {
        const Eigen::VectorXd pmf = photon_pmf(dark_port_state_exact(make(0.0, phi, 0.0, 1)));
        const double c2 = std::cos(phi) * std::cos(phi);
        EXPECT_NEAR(pmf(1), c2, 1e-12);
        EXPECT_NEAR(pmf(0), 1.0 - c2, 1e-12);
        EXPECT_NEAR(pmf.sum(), 1.0, 1e-12);
    }
}

TEST(exact, vacuum_input_gives_coherent_output) {
    // Dark amplitude is i alpha sin(phi); the asymptotic one is i alpha phi.
    for (double alpha : {2.0, 4.0, 6.0}) {
        const double phi = 1.0 / alpha;
        const auto rho = dark_port_state_exact(make(alpha, phi, 0.0, 0));
        const auto coh = coherent_state(cd(0.0, alpha * std::sin(phi)), rho.cutoff());
        EXPECT_GE(fidelity(coh, rho), 1.0 - 1e-10);
        const double gap = alpha * (phi - std::sin(phi));
        const std::vector<double> a{alpha};
        EXPECT_NEAR(asymptotic_convergence_check(a, 1.0, 0, 0.0)[0], std::exp(-gap * gap), 1e-10);
    }
}

TEST(exact, pmf_symmetric_in_phase_sign) {
    const Eigen::VectorXd plus = photon_pmf(dark_port_state_exact(make(3.0, 0.3, 0.0, 1)));
    const Eigen::VectorXd minus = photon_pmf(dark_port_state_exact(make(3.0, -0.3, 0.0, 1)));
    EXPECT_LT((plus - minus).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(exact, agrees_with_asymptotic_at_moderate_alpha) {
    // Measured 0.938494; the infidelity shrinks roughly as 1/alpha^2.
    const auto config = make(4.0, 0.25, 0.0, 1);
    const auto rho = dark_port_state_exact(config);
    const auto asym = resized(dark_port_state_asymptotic(config), rho.cutoff());
    EXPECT_GE(fidelity(asym, rho), 0.93);
}

TEST(exact, rejects_bright_amplitude_above_limit) {
    EXPECT_THROW(dark_port_state_exact(make(9.0, 0.1, 0.0, 1)), ParameterError);
}

TEST(convergence, fidelity_increases_with_alpha) {
    const std::vector<double> alphas{2.0, 4.0, 6.0};
    const auto fid = asymptotic_convergence_check(alphas, 1.0, 1, 0.0);
    ASSERT_EQ(fid.size(), 3u);
    EXPECT_LT(fid[0], fid[1]);
    EXPECT_LT(fid[1], fid[2]);
    EXPECT_GE(fid[2], 0.97);
    EXPECT_LE(fid[2], 1.0 + 1e-12);
}

TEST(convergence, trace_distance_non_increasing) {
    double previous = 2.0;
    for (double alpha : {2.0, 4.0, 6.0}) {
        const auto config = make(alpha, 1.0 / alpha, 0.0, 1);
        const auto rho = dark_port_state_exact(config);
        const auto asym = DensityOperator<double>::from_pure(resized(dark_port_state_asymptotic(config), rho.cutoff()));
        const double d = trace_distance(asym, rho);
        EXPECT_LE(d, previous);
        previous = d;
    }
}

TEST(convergence, zero_phase_is_exact) {
    const std::vector<double> alphas{2.0, 4.0};
    // Only the bright-mode truncation (leakage below 1e-10) separates them.
    for (double f : asymptotic_convergence_check(alphas, 0.0, 1, 0.0)) EXPECT_NEAR(f, 1.0, 1e-10);
}

TEST(convergence, rejects_unsorted_alphas) {
    const std::vector<double> alphas{4.0, 2.0};
    EXPECT_THROW(asymptotic_convergence_check(alphas, 1.0, 1, 0.0), ParameterError);
}
