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

#include "fockgate/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <limits>
#include <mutex>
#include <thread>

#include "fockgate/minimize.hpp"

namespace fockgate {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit_uniform(std::uint64_t key) {
    return static_cast<double>(splitmix64(key) >> 11) * 0x1.0p-53;
}

double clamp_probability(double p) {
    return std::clamp(p, 0.0, 1.0);
}

double count_probability(const Eigen::VectorXd& pmf, int count) {
    return count < pmf.size() ? pmf(count) : 0.0;
}

// Runs body(begin, end) over [0, total) split into contiguous chunks.
template <typename Body>
void parallel_chunks(long long total, Body&& body) {
    const long long workers = std::max<long long>(1, std::min<long long>(thread_count(), total / 1024 + 1));
    if (workers == 1) {
        body(0LL, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (long long w = 0; w < workers; ++w) {
        const long long begin = total * w / workers;
        const long long end = total * (w + 1) / workers;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& t : pool) t.join();
}

void check_unit(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw ParameterError("eta must lie in [0, 1]");
}

}  // namespace

std::string_view to_string(Hypothesis h) {
    return h == Hypothesis::signal ? "signal" : "no_signal";
}

Hypothesis decide(int count, const DecisionRule& rule) {
    if (count < 0) throw ParameterError("decide: count must be non-negative");
    return count == rule.n_ref ? Hypothesis::no_signal : Hypothesis::signal;
}

int thread_count() {
    unsigned hw = std::thread::hardware_concurrency();
    int threads = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("FOCKGATE_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) threads = static_cast<int>(std::min<long>(cap, 1024));
    }
    return threads;
}

SignalParams params_for_beta_eta(double beta_eta_abs, int n, double eta, double r, double alpha) {
    if (!(beta_eta_abs >= 0.0)) throw ParameterError("beta_eta must be non-negative");
    if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
    if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("eta must lie in (0, 1] to map beta_eta to a phase");
    const double beta_abs = beta_eta_abs * std::exp(-r) / std::sqrt(eta);
    return {alpha, beta_abs / alpha, r, n, eta};
}

DetectionModel::DetectionModel(int n, double eta, double r, bool apply_antisqueeze, int cutoff)
    : n_(n), port_(n, r, apply_antisqueeze, cutoff), channel_(LossChannel::make(eta, cutoff)) {}

Eigen::VectorXd DetectionModel::pmf(std::complex<double> beta) const {
    const auto rho = DensityOperator<double>::from_pure(port_.state(beta));
    return photon_pmf(apply_loss_kraus(rho, channel_));
}

ErrorReport DetectionModel::errors(std::complex<double> beta) const {
    ErrorReport report;
    report.method = Method::numeric;
    report.p_false_negative = clamp_probability(count_probability(pmf(beta), n_));
    report.p_false_positive = clamp_probability(1.0 - count_probability(pmf({0.0, 0.0}), n_));
    return report;
}

ErrorReport error_probabilities_numeric(const InterferometerConfig& config) {
    config.validate();
    const DetectionModel model(config.signal.n, config.signal.eta, config.signal.r, config.apply_antisqueeze,
                               resolve_dark_cutoff(config));
    return model.errors(Displacement::from(config.signal).beta);
}

MonteCarloResult monte_carlo(const InterferometerConfig& config, long long trials, std::uint64_t seed,
                             bool keep_records) {
    config.validate();
    if (trials < 1) throw ParameterError("monte_carlo: trials must be at least 1");
    const int n = config.signal.n;
    const DetectionModel model(n, config.signal.eta, config.signal.r, config.apply_antisqueeze,
                               resolve_dark_cutoff(config));

    const auto cumulative = [](const Eigen::VectorXd& pmf) {
        std::vector<double> cdf(pmf.size());
        double acc = 0.0;
        for (Eigen::Index k = 0; k < pmf.size(); ++k) {
            acc += std::max(0.0, pmf(k));
            cdf[k] = acc;
        }
        return cdf;
    };
    const std::vector<double> cdf_signal = cumulative(model.pmf(Displacement::from(config.signal).beta));
    const std::vector<double> cdf_null = cumulative(model.pmf({0.0, 0.0}));
    const DecisionRule rule{n};

    MonteCarloResult result;
    if (keep_records) result.records.resize(2 * trials);

    std::vector<long long> false_neg_parts;
    std::vector<long long> false_pos_parts;
    std::mutex merge;
    parallel_chunks(2 * trials, [&](long long begin, long long end) {
        long long false_neg = 0;
        long long false_pos = 0;
        for (long long i = begin; i < end; ++i) {
            const bool signal = i < trials;
            const std::vector<double>& cdf = signal ? cdf_signal : cdf_null;
            const std::uint64_t trial_seed = seed ^ static_cast<std::uint64_t>(i);
            const double u = unit_uniform(trial_seed);
            // Past the last cumulative value is the truncation overflow bucket.
            const int count = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            const Hypothesis decision = decide(count, rule);
            if (signal && decision == Hypothesis::no_signal) ++false_neg;
            if (!signal && decision == Hypothesis::signal) ++false_pos;
            if (keep_records) {
                result.records[i] = {signal ? Hypothesis::signal : Hypothesis::no_signal, count, decision,
                                     trial_seed};
            }
        }
        std::lock_guard lock(merge);
        false_neg_parts.push_back(false_neg);
        false_pos_parts.push_back(false_pos);
    });

    long long false_neg = 0;
    long long false_pos = 0;
    for (long long v : false_neg_parts) false_neg += v;
    for (long long v : false_pos_parts) false_pos += v;

    const double t = static_cast<double>(trials);
    ErrorReport& report = result.report;
    report.method = Method::empirical;
    report.trials = trials;
    report.p_false_negative = static_cast<double>(false_neg) / t;
    report.p_false_positive = static_cast<double>(false_pos) / t;
    report.std_err = StdErr{std::sqrt(report.p_false_negative * (1.0 - report.p_false_negative) / t),
                            std::sqrt(report.p_false_positive * (1.0 - report.p_false_positive) / t)};
    return result;
}

std::vector<SweepRow> sweep(std::span<const double> beta_eta_grid, int n, double eta, double r,
                            int cutoff_override) {
    if (n < 0) throw ParameterError("sweep: n must be non-negative");
    check_unit(eta);
    double largest = 0.0;
    for (double b : beta_eta_grid) {
        if (!(b >= 0.0) || !std::isfinite(b)) throw ParameterError("sweep: grid values must be finite and >= 0");
        largest = std::max(largest, b);
    }

    std::vector<SweepRow> rows(beta_eta_grid.size());
    if (n <= 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::complex<double> b(beta_eta_grid[i], 0.0);
            rows[i].beta_eta_abs = beta_eta_grid[i];
            rows[i].method = Method::analytic;
            if (n == 0) {
                rows[i].p_fn = p_fn_vacuum(b);
                rows[i].p_fp = 0.0;
            } else {
                rows[i].p_fn = p_fn_lossy(b, eta);
                rows[i].p_fp = p_fp_lossy(eta);
            }
        }
        return rows;
    }

    if (!(eta > 0.0)) throw ParameterError("sweep: eta must be positive for numeric curves");
    const auto beta_for = [eta, r](double b) { return std::complex<double>(0.0, b * std::exp(-r) / std::sqrt(eta)); };
    const int cutoff = cutoff_override > 0 ? cutoff_override : recommended_cutoff(beta_for(largest), r, n);
    const DetectionModel model(n, eta, r, true, cutoff);
    parallel_chunks(static_cast<long long>(rows.size()), [&](long long begin, long long end) {
        for (long long i = begin; i < end; ++i) {
            const ErrorReport e = model.errors(beta_for(beta_eta_grid[i]));
            rows[i] = {beta_eta_grid[i], e.p_false_negative, e.p_false_positive, Method::numeric};
        }
    });
    return rows;
}

OptimizationResult optimize_operating_point(int n, double eta, double r, double alpha, int cutoff_override) {
    if (!(alpha > 0.0)) throw ParameterError("optimize_operating_point: alpha must be positive");
    if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("optimize_operating_point: eta must lie in (0, 1]");
    if (n < 1) throw ParameterError("optimize_operating_point: vacuum input has no interior optimum");

    OptimizationResult out;
    if (n == 1) {
        const OperatingPoint op = optimal_operating_point(eta, r, alpha);
        out.beta_eta_abs = op.beta_eta;
        out.phi = op.phi;
        out.beta = {0.0, alpha * op.phi};
        out.report = {op.p_fn_min, p_fp_lossy(eta), Method::analytic, std::nullopt, std::nullopt};
        return out;
    }

    const std::vector<double> roots = laguerre_roots(n);
    std::vector<double> centers(roots.size());
    for (std::size_t j = 0; j < roots.size(); ++j) centers[j] = std::sqrt(roots[j]);

    const auto beta_for = [eta, r](double b) { return std::complex<double>(0.0, b * std::exp(-r) / std::sqrt(eta)); };
    const double reach = centers.back() + 0.5 * (centers.size() > 1 ? centers.back() - centers[centers.size() - 2] : 1.0);
    const int cutoff = cutoff_override > 0 ? cutoff_override : recommended_cutoff(beta_for(reach), r, n);
    const DetectionModel model(n, eta, r, true, cutoff);
    const auto objective = [&](double b) { return count_probability(model.pmf(beta_for(b)), n); };

    double best_b = 0.0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centers.size(); ++j) {
        const double lo = j == 0 ? 0.5 * centers[0] : 0.5 * (centers[j - 1] + centers[j]);
        const double hi = j + 1 < centers.size() ? 0.5 * (centers[j] + centers[j + 1]) : reach;
        const double b = golden_section_minimize(objective, lo, hi, 1e-9);
        const double value = objective(b);
        if (value < best_value - 1e-12) {
            best_value = value;
            best_b = b;
        }
    }

    out.beta_eta_abs = best_b;
    out.beta = beta_for(best_b);
    out.phi = out.beta.imag() / alpha;
    out.report = model.errors(out.beta);
    return out;
}

}  // namespace fockgate
