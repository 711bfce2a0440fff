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

#ifndef FOCKGATE_EXPERIMENT_HPP
#define FOCKGATE_EXPERIMENT_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fockgate/analytic.hpp"
#include "fockgate/channels.hpp"
#include "fockgate/interferometer.hpp"

namespace fockgate {

enum class Hypothesis { signal, no_signal };

std::string_view to_string(Hypothesis h);

/// Count equality with the no-signal photon number decides "no signal".
struct DecisionRule {
    int n_ref = 1;
};

Hypothesis decide(int count, const DecisionRule& rule);

struct TrialRecord {
    Hypothesis true_hypothesis = Hypothesis::signal;
    int count = 0;
    Hypothesis decision = Hypothesis::signal;
    std::uint64_t seed = 0;

    bool operator==(const TrialRecord&) const = default;
};

struct SweepRow {
    double beta_eta_abs = 0.0;
    double p_fn = 0.0;
    double p_fp = 0.0;
    Method method = Method::analytic;
};

/// Internal parallelism: FOCKGATE_THREADS if set to a positive integer,
/// otherwise the hardware concurrency.
int thread_count();

/// SignalParams whose detected displacement has modulus beta_eta_abs, with the
/// anti-squeezer in place: |beta| = beta_eta_abs e^{-r} / sqrt(eta), phi = |beta| / alpha.
SignalParams params_for_beta_eta(double beta_eta_abs, int n, double eta, double r, double alpha = 1.0);

/// Detector photon-count distributions under both hypotheses, computed from
/// the asymptotic dark-port states and the Kraus loss channel.
class DetectionModel {
   public:
    DetectionModel(int n, double eta, double r, bool apply_antisqueeze, int cutoff);

    int cutoff() const { return port_.cutoff(); }
    int n() const { return n_; }

    /// Detected photon pmf for dark-port displacement beta.
    Eigen::VectorXd pmf(std::complex<double> beta) const;

    /// P_fn = pmf_signal(n), P_fp = 1 - pmf_no_signal(n).
    ErrorReport errors(std::complex<double> beta) const;

   private:
    int n_;
    AsymptoticDarkPort port_;
    LossChannel channel_;
};

/// Numeric error probabilities for the config (cutoff resolved once and shared
/// by both hypotheses).
ErrorReport error_probabilities_numeric(const InterferometerConfig& config);

struct MonteCarloResult {
    ErrorReport report;
    std::vector<TrialRecord> records;  ///< empty unless requested
};

/// Inverse-CDF sampling of detector counts under both hypotheses, `trials`
/// each. Trial i (signal trials first, then no-signal) draws its uniform from
/// splitmix64(seed ^ i), so results do not depend on the thread schedule.
/// Probability lost to truncation maps to an overflow count that always
/// decides "signal".
MonteCarloResult monte_carlo(const InterferometerConfig& config, long long trials, std::uint64_t seed,
                             bool keep_records = false);

/// One row per |beta_eta| grid value: closed forms for n = 0 (vacuum
/// reference) and n = 1, numeric for n >= 2.
std::vector<SweepRow> sweep(std::span<const double> beta_eta_grid, int n, double eta, double r,
                            int cutoff_override = 0);

struct OptimizationResult {
    std::complex<double> beta;  ///< dark-port displacement i alpha phi
    double beta_eta_abs = 0.0;
    double phi = 0.0;
    ErrorReport report;
};

/// n = 1: analytic optimum. n >= 2: numeric P_fn minimized around each root
/// of L_n (golden section in |beta_eta|), smallest |beta_eta| among ties.
OptimizationResult optimize_operating_point(int n, double eta, double r, double alpha, int cutoff_override = 0);

}  // namespace fockgate

#endif  // FOCKGATE_EXPERIMENT_HPP
