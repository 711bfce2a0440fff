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

#include "fockgate/channels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "fockgate/analytic.hpp"
#include "fockgate/errors.hpp"

using namespace fockgate;

namespace {

using cd = std::complex<double>;

DensityOperator<double> pure(const FockVector<double>& psi) { return DensityOperator<double>::from_pure(psi); }

FockVector<double> displaced_fock(int n, cd beta, int cutoff) {
    return displacement_operator(beta, cutoff) * fock_state(n, cutoff);
}

}  // namespace

TEST(beamsplitter, full_transmission_is_identity) {
    const auto bs = beamsplitter_unitary(1.0, 6, 5);
    EXPECT_LT((bs.matrix - Eigen::MatrixXcd::Identity(30, 30)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_TRUE(bs.unitary_up_to_truncation);
}

TEST(beamsplitter, blocks_are_unitary) {
    for (double t : {0.0, 0.3, 0.5, 0.95}) {
        const auto bs = PassiveTwoModeUnitary::beamsplitter(t, 20);
        for (int total = 0; total <= 20; ++total) {
            const Eigen::MatrixXcd& b = bs.block(total);
            ASSERT_EQ(b.rows(), total + 1);
            EXPECT_LT((b.adjoint() * b - Eigen::MatrixXcd::Identity(total + 1, total + 1)).cwiseAbs().maxCoeff(),
                      1e-13);
        }
        EXPECT_LT(beamsplitter_unitary(t, 12, 12).interior_unitarity_defect(), 1e-13);
    }
    EXPECT_THROW(PassiveTwoModeUnitary::beamsplitter(1.2, 4), ParameterError);
}

TEST(beamsplitter, single_photon_splits_bernoulli) {
    for (double eta : {0.1, 0.5, 0.95}) {
        const auto bs = PassiveTwoModeUnitary::beamsplitter(eta, 1);
        const auto out = bs.apply(tensor(fock_state(1, 2), fock_state(0, 1)));
        const Eigen::VectorXd pmf = photon_pmf(partial_trace(out, Mode::first));
        EXPECT_NEAR(pmf(1), eta, 1e-14);
        EXPECT_NEAR(pmf(0), 1.0 - eta, 1e-14);
    }
}

TEST(beamsplitter, conserves_photon_number_and_attenuates_coherent_light) {
    const cd alpha(1.1, -0.6);
    const auto in = tensor(coherent_state(alpha, 40), fock_state(2, 4));
    for (double t : {0.2, 0.5, 0.9}) {
        const auto bs = PassiveTwoModeUnitary::beamsplitter(t, 42);
        const auto out = bs.apply(in);
        EXPECT_NEAR(out.mean_photon_number(), in.mean_photon_number(), 1e-10);

        const auto coh = bs.apply(tensor(coherent_state(alpha, 40), fock_state(0, 1)));
        const auto kept = partial_trace(coh, Mode::first);
        EXPECT_GE(fidelity(coherent_state(std::sqrt(t) * alpha, kept.cutoff()), kept), 1.0 - 1e-8);
        const auto lost = partial_trace(coh, Mode::second);
        EXPECT_NEAR(mean_photon_number(lost), (1.0 - t) * std::norm(alpha), 1e-9);
    }
}

TEST(coupling, commuting_generators_compose) {
    const cd c1(0.3, 0.1);
    const cd c2 = 2.0 * c1;
    const auto lhs = PassiveTwoModeUnitary::coupling(c1, 10) * PassiveTwoModeUnitary::coupling(c2, 10);
    const auto rhs = PassiveTwoModeUnitary::coupling(c1 + c2, 10);
    for (int total = 0; total <= 10; ++total) {
        EXPECT_LT((lhs.block(total) - rhs.block(total)).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(phase_shift, diagonal_phases) {
    const auto p = PassiveTwoModeUnitary::phase_shift(0.4, -1.3, 5);
    const Eigen::MatrixXcd dense = p.dense(3, 3);
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            EXPECT_NEAR(std::abs(dense(a * 3 + b, a * 3 + b) - std::exp(cd(0.0, 0.4 * a - 1.3 * b))), 0.0, 1e-14);
        }
    }
}

TEST(loss_channel, kraus_structure_and_completeness) {
    for (double eta : {0.0, 0.3, 0.9, 1.0}) {
        const auto ch = LossChannel::make(eta, 24);
        ASSERT_EQ(static_cast<int>(ch.kraus_ops.size()), 24);
        EXPECT_LT(ch.completeness_defect(), 1e-10);
    }
    const auto ideal = LossChannel::make(1.0, 8);
    EXPECT_EQ(ideal.kraus_ops[0].matrix(), Eigen::MatrixXcd::Identity(8, 8));
    for (int k = 1; k < 8; ++k) EXPECT_EQ(ideal.kraus_ops[k].matrix().norm(), 0.0);
    EXPECT_THROW(LossChannel::make(-0.1, 8), ParameterError);
}

TEST(loss_channel, kraus_elements_match_beamsplitter_amplitudes) {
    // |<m|A_k|m+k>| = |<m, k| U_bs |m+k, 0>|.
    const double eta = 0.7;
    const int cutoff = 10;
    const auto ch = LossChannel::make(eta, cutoff);
    const auto bs = PassiveTwoModeUnitary::beamsplitter(eta, cutoff - 1);
    for (int total = 0; total < cutoff; ++total) {
        const Eigen::MatrixXcd& block = bs.block(total);  // index = photons in the first mode
        for (int k = 0; k <= total; ++k) {
            const int m = total - k;
            EXPECT_NEAR(std::abs(ch.kraus_ops[k](m, total)), std::abs(block(m, total)), 1e-13);
        }
    }
}

TEST(loss_channel, kraus_matches_dilation) {
    for (int n = 0; n <= 3; ++n) {
        for (double b : {0.5, 1.0, 1.5}) {
            const cd beta = std::polar(b, 0.4 + n);
            const int cutoff = recommended_cutoff(beta, 0.0, n);
            const auto rho = pure(displaced_fock(n, beta, cutoff));
            for (double eta : {0.5, 0.9, 0.95, 1.0}) {
                const auto k = apply_loss_kraus(rho, LossChannel::make(eta, cutoff));
                const auto d = apply_loss_dilation(rho, eta, cutoff);
                EXPECT_LE(trace_distance(k, d), 1e-8) << n << " " << b << " " << eta;
                EXPECT_NEAR(k.trace(), rho.trace(), 1e-10);
                EXPECT_GE(k.min_eigenvalue(), -1e-9);
                EXPECT_GE(d.min_eigenvalue(), -1e-9);
            }
        }
    }
}

TEST(loss_channel, mixed_input_through_dilation) {
    const int cutoff = 12;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    m += 0.5 * pure(fock_state(2, cutoff)).matrix();
    m += 0.5 * pure(coherent_state(cd(0.0, 0.4), cutoff)).matrix();
    const DensityOperator<double> rho(m);
    const auto k = apply_loss_kraus(rho, LossChannel::make(0.6, cutoff));
    EXPECT_LE(trace_distance(k, apply_loss_dilation(rho, 0.6, cutoff)), 1e-10);
    EXPECT_THROW(apply_loss_dilation(rho, 0.6, cutoff - 1), DimensionError);
    EXPECT_THROW(apply_loss_kraus(rho, LossChannel::make(0.6, cutoff + 1)), DimensionError);
}

TEST(loss_channel, limits) {
    const int cutoff = 32;
    const auto rho = pure(displaced_fock(1, cd(0.0, 1.2), cutoff));
    EXPECT_GE(fidelity(displaced_fock(1, cd(0.0, 1.2), cutoff), apply_loss_dilation(rho, 1.0, cutoff)), 1.0 - 1e-10);
    EXPECT_GE(fidelity(displaced_fock(1, cd(0.0, 1.2), cutoff),
                       apply_loss_kraus(rho, LossChannel::make(1.0, cutoff))),
              1.0 - 1e-10);
    const auto dark = apply_loss_kraus(rho, LossChannel::make(0.0, cutoff));
    EXPECT_NEAR(dark(0, 0).real(), rho.trace(), 1e-14);
    EXPECT_NEAR(dark.matrix().norm(), dark(0, 0).real(), 1e-14);
}

TEST(loss_channel, coherent_light_stays_coherent) {
    const cd beta(0.8, 1.3);
    const int cutoff = 48;
    const auto rho = pure(coherent_state(beta, cutoff));
    for (double eta : {0.25, 0.8}) {
        const auto expect = coherent_state(std::sqrt(eta) * beta, cutoff);
        EXPECT_GE(fidelity(expect, apply_loss_kraus(rho, LossChannel::make(eta, cutoff))), 1.0 - 1e-8);
        EXPECT_GE(fidelity(expect, apply_loss_dilation(rho, eta, cutoff)), 1.0 - 1e-8);
    }
}

TEST(loss_channel, composition_multiplies_efficiencies) {
    const int cutoff = 40;
    const auto rho = pure(displaced_fock(2, cd(0.3, 1.1), cutoff));
    const auto twice = apply_loss_kraus(apply_loss_kraus(rho, LossChannel::make(0.8, cutoff)),
                                        LossChannel::make(0.6, cutoff));
    EXPECT_LE(trace_distance(twice, apply_loss_kraus(rho, LossChannel::make(0.48, cutoff))), 1e-8);
}

TEST(loss_channel, single_photon_false_negative_matches_bracket) {
    const double eta = 0.95;
    const int cutoff = 48;
    for (double b : {0.5, 1.0, 1.5}) {
        const cd beta_eta(0.0, b);
        const auto rho = pure(displaced_fock(1, beta_eta / std::sqrt(eta), cutoff));
        const auto out = apply_loss_kraus(rho, LossChannel::make(eta, cutoff));
        EXPECT_NEAR(out(1, 1).real(), p_fn_lossy(beta_eta, eta), 1e-8) << b;
    }
}

TEST(lossy_mixture, closed_form_properties) {
    const int cutoff = 64;
    const auto ideal = lossy_mixture_analytic(cd(0.0, 1.0), 0.0, 1.0, cutoff);
    EXPECT_LE(trace_distance(ideal, pure(displaced_fock(1, cd(0.0, 1.0), cutoff))), 1e-12);
    const auto mix = lossy_mixture_analytic(cd(0.0, 1.0 / std::sqrt(0.95)), 0.0, 0.95, cutoff);
    EXPECT_NEAR(mix.trace(), 1.0, 1e-12);
    EXPECT_NEAR(mix(1, 1).real(), 0.0183939720585721, 1e-12);
}

TEST(lossy_mixture, dilation_reproduces_mixture) {
    // Coherences track truncation as the square root of the dropped weight,
    // hence the generous cutoff.
    const int cutoff = 64;
    for (double r : {0.0, 0.5, 1.0}) {
        for (double g : {0.5, 1.0, 1.5}) {
            const cd beta(0.0, g * std::exp(-r));
            const auto rho = pure(displaced_fock(1, beta * std::exp(r), cutoff));
            for (double eta : {0.5, 0.9, 0.95}) {
                EXPECT_LE(trace_distance(apply_loss_dilation(rho, eta, cutoff),
                                         lossy_mixture_analytic(beta, r, eta, cutoff)),
                          1e-8)
                    << r << " " << g << " " << eta;
            }
        }
    }
}
