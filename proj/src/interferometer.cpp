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

#include <cmath>
#include <numbers>
#include <string>

namespace fockgate {

namespace {

int bright_cutoff(double alpha, int requested) {
    if (requested > 0) return requested;
    int cutoff = static_cast<int>(std::ceil(alpha * alpha + 6.0 * alpha + 10.0));
    while (cutoff <= kMaxCutoff) {
        try {
            coherent_state<double>({alpha, 0.0}, cutoff);
            return cutoff;
        } catch (const CutoffTooSmallError&) {
            cutoff = static_cast<int>(std::ceil(cutoff * 1.5));
        }
    }
    throw CutoffTooSmallError("bright-port coherent state does not fit below the cutoff cap");
}

}  // namespace

void InterferometerConfig::validate() const {
    signal.validate();
    if (cutoff_dark < 0 || cutoff_dark > kMaxCutoff) throw DimensionError("cutoff_dark outside [0, 512]");
    if (cutoff_bright < 0 || cutoff_bright > kMaxCutoff) throw DimensionError("cutoff_bright outside [0, 512]");
}

int resolve_dark_cutoff(const InterferometerConfig& config) {
    if (config.cutoff_dark > 0) return config.cutoff_dark;
    const Displacement d = Displacement::from(config.signal);
    return recommended_cutoff(d.beta, config.signal.r, config.signal.n);
}

AsymptoticDarkPort::AsymptoticDarkPort(int n, double r, bool apply_antisqueeze, int cutoff)
    : n_(n), cutoff_(cutoff), antisqueeze_(apply_antisqueeze && r != 0.0), input_(fock_state(n, cutoff)) {
    if (r != 0.0) {
        input_ = squeeze_operator(r, cutoff) * input_;
        if (input_.tail_weight() >= kDefaultLeakageTolerance) {
            throw CutoffTooSmallError("squeezed input |" + std::to_string(n) + "> does not fit in cutoff " +
                                      std::to_string(cutoff));
        }
    }
    if (antisqueeze_) unsqueeze_ = squeeze_operator(-r, cutoff);
}

FockVector<double> AsymptoticDarkPort::state(std::complex<double> beta) const {
    FockVector<double> out = displacement_operator(beta, cutoff_) * input_;
    double damage = out.leakage();
    if (unsqueeze_) {
        out = *unsqueeze_ * out;
        damage = out.leakage() + out.tail_weight();
    }
    if (damage >= kDefaultLeakageTolerance) {
        throw CutoffTooSmallError("dark-port state leaks " + std::to_string(damage) + " at cutoff " +
                                  std::to_string(cutoff_));
    }
    return out;
}

FockVector<double> dark_port_state_asymptotic(const InterferometerConfig& config) {
    config.validate();
    const AsymptoticDarkPort port(config.signal.n, config.signal.r, config.apply_antisqueeze,
                                  resolve_dark_cutoff(config));
    return port.state(Displacement::from(config.signal).beta);
}

PassiveTwoModeUnitary mach_zehnder(double phi, int max_total) {
    const auto splitter = PassiveTwoModeUnitary::coupling({std::numbers::pi / 4.0, 0.0}, max_total);
    const auto recombiner = PassiveTwoModeUnitary::coupling({-std::numbers::pi / 4.0, 0.0}, max_total);
    return recombiner * PassiveTwoModeUnitary::phase_shift(phi, -phi, max_total) * splitter;
}

DensityOperator<double> dark_port_state_exact(const InterferometerConfig& config) {
    config.validate();
    const SignalParams& s = config.signal;
    if (s.alpha > kMaxExactAlpha) {
        throw ParameterError("dark_port_state_exact: alpha above the exact-model limit of 8");
    }
    const int cutoff_a = bright_cutoff(s.alpha, config.cutoff_bright);
    const int cutoff_b =
        config.cutoff_dark > 0 ? config.cutoff_dark : recommended_cutoff({0.0, 0.0}, s.r, s.n);
    const int cutoff_out = cutoff_a + cutoff_b - 1;
    if (cutoff_out > kMaxCutoff) throw CutoffTooSmallError("dark_port_state_exact: joint space above cutoff cap");

    FockVector<double> dark = fock_state(s.n, cutoff_b);
    if (s.r != 0.0) dark = squeeze_operator(s.r, cutoff_b) * dark;
    const FockVector<double> bright = coherent_state<double>({s.alpha, 0.0}, cutoff_a);

    const TwoModeState<double> out = mach_zehnder(s.phi, cutoff_out - 1).apply(tensor(bright, dark));
    DensityOperator<double> rho = partial_trace(out, Mode::second);
    if (config.apply_antisqueeze && s.r != 0.0) {
        rho = conjugate(squeeze_operator(-s.r, cutoff_out), rho);
    }
    return rho;
}

std::vector<double> asymptotic_convergence_check(std::span<const double> alphas, double alpha_phi, int n,
                                                 double r) {
    std::vector<double> fidelities;
    fidelities.reserve(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0.0)) throw ParameterError("asymptotic_convergence_check: alphas must be positive");
        if (i > 0 && !(alphas[i] > alphas[i - 1])) {
            throw ParameterError("asymptotic_convergence_check: alphas must be strictly ascending");
        }
        InterferometerConfig config;
        config.signal = {alphas[i], alpha_phi / alphas[i], r, n, 1.0};
        config.apply_antisqueeze = true;
        const DensityOperator<double> exact = dark_port_state_exact(config);
        const FockVector<double> asym = resized(dark_port_state_asymptotic(config), exact.cutoff());
        fidelities.push_back(fidelity(asym, exact));
    }
    return fidelities;
}

}  // namespace fockgate
