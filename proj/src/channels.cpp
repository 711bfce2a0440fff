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

#include <algorithm>
#include <cmath>
#include <string>

namespace fockgate {

namespace {

void check_unit_interval(double value, const char* what) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ParameterError(std::string(what) + " must lie in [0, 1]");
    }
}

void check_max_total(int max_total) {
    if (max_total < 0 || max_total > 2 * kMaxCutoff) {
        throw DimensionError("PassiveTwoModeUnitary: max_total outside [0, " + std::to_string(2 * kMaxCutoff) + "]");
    }
}

// sqrt(C(m+k, k) eta^m (1-eta)^k)
double kraus_coefficient(int m, int k, double eta) {
    if (eta == 0.0) return m == 0 ? 1.0 : 0.0;
    if (eta == 1.0) return k == 0 ? 1.0 : 0.0;
    const double log_binom = std::lgamma(m + k + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m + 1.0);
    return std::exp(0.5 * (log_binom + m * std::log(eta) + k * std::log1p(-eta)));
}

}  // namespace

PassiveTwoModeUnitary PassiveTwoModeUnitary::coupling(std::complex<double> c, int max_total) {
    check_max_total(max_total);
    std::vector<Eigen::MatrixXcd> blocks;
    blocks.reserve(max_total + 1);
    const std::complex<double> i_unit(0.0, 1.0);
    for (int total = 0; total <= max_total; ++total) {
        const int dim = total + 1;
        // H = i G with G = c a^dagger b - c^* a b^dagger restricted to the block.
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
        for (int k = 0; k < total; ++k) {
            const double amp = std::sqrt(static_cast<double>(k + 1) * (total - k));
            h(k + 1, k) = i_unit * c * amp;
            h(k, k + 1) = std::conj(h(k + 1, k));
        }
        if (dim == 1) {
            blocks.push_back(Eigen::MatrixXcd::Identity(1, 1));
            continue;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
        const Eigen::VectorXcd phases =
            (-i_unit * solver.eigenvalues().cast<std::complex<double>>()).array().exp().matrix();
        blocks.push_back(solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint());
    }
    return PassiveTwoModeUnitary(std::move(blocks));
}

PassiveTwoModeUnitary PassiveTwoModeUnitary::beamsplitter(double transmissivity, int max_total) {
    check_unit_interval(transmissivity, "beamsplitter transmissivity");
    return coupling({std::acos(std::sqrt(transmissivity)), 0.0}, max_total);
}

PassiveTwoModeUnitary PassiveTwoModeUnitary::phase_shift(double phase_a, double phase_b, int max_total) {
    check_max_total(max_total);
    std::vector<Eigen::MatrixXcd> blocks;
    blocks.reserve(max_total + 1);
    for (int total = 0; total <= max_total; ++total) {
        Eigen::VectorXcd diag(total + 1);
        for (int k = 0; k <= total; ++k) {
            diag(k) = std::polar(1.0, phase_a * k + phase_b * (total - k));
        }
        blocks.push_back(diag.asDiagonal().toDenseMatrix());
    }
    return PassiveTwoModeUnitary(std::move(blocks));
}

PassiveTwoModeUnitary PassiveTwoModeUnitary::operator*(const PassiveTwoModeUnitary& rhs) const {
    if (max_total() != rhs.max_total()) throw DimensionError("PassiveTwoModeUnitary: block count mismatch");
    std::vector<Eigen::MatrixXcd> blocks(blocks_.size());
    for (std::size_t n = 0; n < blocks_.size(); ++n) blocks[n] = blocks_[n] * rhs.blocks_[n];
    return PassiveTwoModeUnitary(std::move(blocks));
}

TwoModeState<double> PassiveTwoModeUnitary::apply(const TwoModeState<double>& state, int out_cutoff_a,
                                                  int out_cutoff_b) const {
    const int da = state.cutoff_a();
    const int db = state.cutoff_b();
    if (da + db - 2 > max_total()) {
        throw DimensionError("PassiveTwoModeUnitary::apply: state exceeds the largest photon-number block");
    }
    const int oa = out_cutoff_a > 0 ? out_cutoff_a : da + db - 1;
    const int ob = out_cutoff_b > 0 ? out_cutoff_b : da + db - 1;
    detail::check_cutoff(oa, "PassiveTwoModeUnitary::apply");
    detail::check_cutoff(ob, "PassiveTwoModeUnitary::apply");

    const Eigen::MatrixXcd& psi = state.amplitudes();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(oa, ob);
    for (int total = 0; total <= da + db - 2; ++total) {
        const int lo = std::max(0, total - db + 1);
        const int hi = std::min(total, da - 1);
        if (lo > hi) continue;
        Eigen::VectorXcd x(hi - lo + 1);
        for (int na = lo; na <= hi; ++na) x(na - lo) = psi(na, total - na);
        const Eigen::VectorXcd y = blocks_[total].middleCols(lo, hi - lo + 1) * x;
        for (int ma = std::max(0, total - ob + 1); ma <= std::min(total, oa - 1); ++ma) {
            out(ma, total - ma) = y(ma);
        }
    }
    return TwoModeState<double>(std::move(out));
}

Eigen::MatrixXcd PassiveTwoModeUnitary::dense(int cutoff_a, int cutoff_b) const {
    detail::check_cutoff(cutoff_a, "PassiveTwoModeUnitary::dense");
    detail::check_cutoff(cutoff_b, "PassiveTwoModeUnitary::dense");
    if (cutoff_a + cutoff_b - 2 > max_total()) {
        throw DimensionError("PassiveTwoModeUnitary::dense: cutoffs exceed the largest photon-number block");
    }
    const Eigen::Index dim = Eigen::Index(cutoff_a) * cutoff_b;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int na = 0; na < cutoff_a; ++na) {
        for (int nb = 0; nb < cutoff_b; ++nb) {
            const int total = na + nb;
            for (int ma = std::max(0, total - cutoff_b + 1); ma <= std::min(total, cutoff_a - 1); ++ma) {
                m(Eigen::Index(ma) * cutoff_b + (total - ma), Eigen::Index(na) * cutoff_b + nb) =
                    blocks_[total](ma, na);
            }
        }
    }
    return m;
}

double TwoModeOperator::interior_unitarity_defect() const {
    std::vector<Eigen::Index> cols;
    const int limit = std::min(cutoff_a, cutoff_b);
    for (int na = 0; na < cutoff_a; ++na) {
        for (int nb = 0; nb < cutoff_b; ++nb) {
            if (na + nb < limit) cols.push_back(Eigen::Index(na) * cutoff_b + nb);
        }
    }
    Eigen::MatrixXcd sub(matrix.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) sub.col(j) = matrix.col(cols[j]);
    const Eigen::MatrixXcd gram = sub.adjoint() * sub;
    return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

TwoModeOperator beamsplitter_unitary(double transmissivity, int cutoff_a, int cutoff_b) {
    const auto bs = PassiveTwoModeUnitary::beamsplitter(transmissivity, cutoff_a + cutoff_b - 2);
    return {cutoff_a, cutoff_b, bs.dense(cutoff_a, cutoff_b), true};
}

LossChannel LossChannel::make(double eta, int cutoff) {
    check_unit_interval(eta, "loss efficiency eta");
    detail::check_cutoff(cutoff, "LossChannel");
    LossChannel channel;
    channel.eta = eta;
    channel.cutoff = cutoff;
    channel.kraus_ops.reserve(cutoff);
    for (int k = 0; k < cutoff; ++k) {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff, cutoff);
        for (int m = 0; m + k < cutoff; ++m) a(m, m + k) = kraus_coefficient(m, k, eta);
        channel.kraus_ops.emplace_back(std::move(a));
    }
    return channel;
}

double LossChannel::completeness_defect(int buffer) const {
    const int k = std::max(0, cutoff - buffer);
    if (k == 0) return 0.0;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(k, k);
    for (const auto& op : kraus_ops) {
        sum += op.matrix().leftCols(k).adjoint() * op.matrix().leftCols(k);
    }
    return (sum - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
}

DensityOperator<double> apply_loss_dilation(const DensityOperator<double>& rho, double eta, int env_cutoff) {
    check_unit_interval(eta, "loss efficiency eta");
    const int dim = rho.cutoff();
    if (env_cutoff < dim) {
        throw DimensionError("apply_loss_dilation: environment cutoff must be at least the signal cutoff");
    }
    const auto bs = PassiveTwoModeUnitary::beamsplitter(eta, dim - 1);
    const FockVector<double> env_vacuum = fock_state(0, 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix());
    const Eigen::VectorXd& weights = solver.eigenvalues();
    const double scale = std::max(1.0, weights.cwiseAbs().maxCoeff());

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        if (std::abs(weights(j)) <= 1e-16 * scale) continue;
        const FockVector<double> component(solver.eigenvectors().col(j).normalized());
        const TwoModeState<double> joint = bs.apply(tensor(component, env_vacuum), dim, env_cutoff);
        out += weights(j) * partial_trace(joint, Mode::first).matrix();
    }
    out = (out + out.adjoint()) * 0.5;
    return DensityOperator<double>(std::move(out));
}

DensityOperator<double> apply_loss_kraus(const DensityOperator<double>& rho, const LossChannel& channel) {
    const int dim = rho.cutoff();
    if (channel.cutoff != dim) throw DimensionError("apply_loss_kraus: cutoff mismatch");
    const Eigen::MatrixXcd& in = rho.matrix();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    // A_k is supported on the k-th superdiagonal, so each term is a shifted
    // and reweighted copy of rho.
    for (int k = 0; k < dim; ++k) {
        const Eigen::MatrixXcd& a = channel.kraus_ops[k].matrix();
        const int len = dim - k;
        Eigen::VectorXd coef(len);
        for (int m = 0; m < len; ++m) coef(m) = a(m, m + k).real();
        out.topLeftCorner(len, len) +=
            (coef.asDiagonal() * in.bottomRightCorner(len, len) * coef.asDiagonal()).eval();
    }
    out = (out + out.adjoint()) * 0.5;
    return DensityOperator<double>(std::move(out));
}

DensityOperator<double> lossy_mixture_analytic(std::complex<double> beta, double r, double eta, int cutoff) {
    check_unit_interval(eta, "loss efficiency eta");
    const std::complex<double> beta_eta = std::sqrt(eta) * std::exp(r) * beta;
    const auto disp = displacement_operator<double>(beta_eta, cutoff);
    const Eigen::VectorXcd one = (disp * fock_state(1, cutoff)).amplitudes();
    const Eigen::VectorXcd zero = (disp * fock_state(0, cutoff)).amplitudes();
    Eigen::MatrixXcd m = eta * one * one.adjoint() + (1.0 - eta) * zero * zero.adjoint();
    return DensityOperator<double>(std::move(m));
}

}  // namespace fockgate
