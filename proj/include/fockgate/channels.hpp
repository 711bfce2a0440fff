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

#ifndef FOCKGATE_CHANNELS_HPP
#define FOCKGATE_CHANNELS_HPP

#include <complex>
#include <vector>

#include "fockgate/fock.hpp"

namespace fockgate {

/// Number-conserving two-mode unitary, stored as one dense block per total
/// photon number N = n_a + n_b. Block N is indexed by n_a in [0, N].
///
/// The basic element is exp(c a^dagger b - c^* a b^dagger), whose Heisenberg
/// action for real c = theta is
///   a -> a cos(theta) + b sin(theta),   b -> -a sin(theta) + b cos(theta).
class PassiveTwoModeUnitary {
   public:
    /// exp(c a^dagger b - c^* a b^dagger) on all blocks N <= max_total.
    static PassiveTwoModeUnitary coupling(std::complex<double> c, int max_total);

    /// Beamsplitter with power transmissivity t in the detector convention
    ///   signal -> sqrt(t) signal + sqrt(1-t) env,
    ///   env    -> -sqrt(1-t) signal + sqrt(t) env.
    static PassiveTwoModeUnitary beamsplitter(double transmissivity, int max_total);

    /// exp(i (phase_a a^dagger a + phase_b b^dagger b)).
    static PassiveTwoModeUnitary phase_shift(double phase_a, double phase_b, int max_total);

    int max_total() const { return static_cast<int>(blocks_.size()) - 1; }
    const Eigen::MatrixXcd& block(int total) const { return blocks_.at(total); }

    /// Apply this after `rhs` (matrix product order).
    PassiveTwoModeUnitary operator*(const PassiveTwoModeUnitary& rhs) const;

    /// Acts on a joint state. Every input level must satisfy
    /// n_a + n_b <= max_total; the output is truncated to the given cutoffs
    /// (0 means cutoff_a + cutoff_b - 1, which holds the result exactly).
    TwoModeState<double> apply(const TwoModeState<double>& state, int out_cutoff_a = 0,
                               int out_cutoff_b = 0) const;

    /// Dense matrix on the truncated space, row/column index n_a * cutoff_b + n_b.
    Eigen::MatrixXcd dense(int cutoff_a, int cutoff_b) const;

   private:
    explicit PassiveTwoModeUnitary(std::vector<Eigen::MatrixXcd> blocks) : blocks_(std::move(blocks)) {}
    std::vector<Eigen::MatrixXcd> blocks_;
};

/// Operator on mode_a (x) mode_b in a truncated basis.
struct TwoModeOperator {
    int cutoff_a = 0;
    int cutoff_b = 0;
    Eigen::MatrixXcd matrix;
    bool unitary_up_to_truncation = false;

    /// max |(U^dagger U - I)_{ij}| over columns with n_a + n_b < min(cutoff_a, cutoff_b).
    double interior_unitarity_defect() const;
};

/// Dense beamsplitter unitary (detector convention) on cutoff_a x cutoff_b.
TwoModeOperator beamsplitter_unitary(double transmissivity, int cutoff_a, int cutoff_b);

/// Pure-loss channel with efficiency eta in Kraus form,
///   <m|A_k|m+k> = sqrt(C(m+k, k)) sqrt(eta^m (1-eta)^k).
struct LossChannel {
    double eta = 1.0;
    int cutoff = 0;
    std::vector<OperatorMatrix<double>> kraus_ops;

    static LossChannel make(double eta, int cutoff);

    /// max |(sum_k A_k^dagger A_k - I)_{ij}| over the top-left (cutoff - buffer) block.
    double completeness_defect(int buffer = 0) const;
};

/// rho_eta = Tr_env(U (rho (x) |0><0|) U^dagger) with U the detector
/// beamsplitter. rho is split into its eigencomponents; each is dilated,
/// propagated block by block and traced over the environment.
DensityOperator<double> apply_loss_dilation(const DensityOperator<double>& rho, double eta, int env_cutoff);

/// sum_k A_k rho A_k^dagger.
DensityOperator<double> apply_loss_kraus(const DensityOperator<double>& rho, const LossChannel& channel);

/// Closed-form lossy single-photon state
///   eta |b,1><b,1| + (1 - eta) |b,0><b,0|,  b = sqrt(eta) beta e^r.
DensityOperator<double> lossy_mixture_analytic(std::complex<double> beta, double r, double eta, int cutoff);

}  // namespace fockgate

#endif  // FOCKGATE_CHANNELS_HPP
