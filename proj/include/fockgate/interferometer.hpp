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

#ifndef FOCKGATE_INTERFEROMETER_HPP
#define FOCKGATE_INTERFEROMETER_HPP

#include <optional>
#include <span>
#include <vector>

#include "fockgate/analytic.hpp"
#include "fockgate/channels.hpp"
#include "fockgate/fock.hpp"

namespace fockgate {

/// Largest bright-port amplitude the exact two-mode model accepts.
inline constexpr double kMaxExactAlpha = 8.0;

/// Scenario plus numeric cutoffs. A cutoff of 0 selects it automatically.
struct InterferometerConfig {
    SignalParams signal;
    int cutoff_dark = 0;
    int cutoff_bright = 0;          ///< exact model only
    bool apply_antisqueeze = true;  ///< second squeezer S(-r) before the detector

    void validate() const;
};

/// Dark-port cutoff for the config: the override, or recommended_cutoff.
int resolve_dark_cutoff(const InterferometerConfig& config);

/// The phi -> 0, alpha -> infinity model: output D(beta) S(r) |n>, followed by
/// S(-r) when the anti-squeezer is present. Squeeze matrices are built once so
/// that many displacements can share them.
class AsymptoticDarkPort {
   public:
    AsymptoticDarkPort(int n, double r, bool apply_antisqueeze, int cutoff);

    int cutoff() const { return cutoff_; }

    /// Dark-port output for displacement beta. Throws CutoffTooSmallError if
    /// the truncation damage reaches kDefaultLeakageTolerance.
    FockVector<double> state(std::complex<double> beta) const;

   private:
    int n_;
    int cutoff_;
    bool antisqueeze_;
    FockVector<double> input_;  // S(r)|n>
    std::optional<OperatorMatrix<double>> unsqueeze_;
};

FockVector<double> dark_port_state_asymptotic(const InterferometerConfig& config);

/// Symmetric Mach-Zehnder: 50/50 beamsplitter, arm phases (+phi, -phi), and
/// the inverse beamsplitter. Heisenberg action on (bright a, dark b):
///   b -> b cos(phi) + i a sin(phi),   a -> a cos(phi) + i b sin(phi).
PassiveTwoModeUnitary mach_zehnder(double phi, int max_total);

/// Exact dark-port state: |alpha>_bright (x) S(r)|n>_dark propagated through
/// mach_zehnder(phi), optional S(-r) on the dark output, bright mode traced
/// out. The result has cutoff cutoff_bright + cutoff_dark - 1 and is exact on
/// that space.
DensityOperator<double> dark_port_state_exact(const InterferometerConfig& config);

/// <psi_asym|rho_exact|psi_asym> for each alpha at fixed alpha * phi.
std::vector<double> asymptotic_convergence_check(std::span<const double> alphas, double alpha_phi, int n,
                                                 double r);

}  // namespace fockgate

#endif  // FOCKGATE_INTERFEROMETER_HPP
