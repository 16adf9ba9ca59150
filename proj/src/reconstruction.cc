// Copyright 2026 The pitomo Authors
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

#include "pitomo/reconstruction.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "pitomo/errors.h"
#include "pitomo/pi_algebra.h"

namespace pitomo {

const SettingCounts *CountData::find(const std::string &id) const {
    for (const auto &s : settings) {
        if (s.id == id) {
            return &s;
        }
    }
    return nullptr;
}

ClassHistogram class_histogram(const SettingCounts &counts, int num_qubits) {
    if (num_qubits < 1) {
        fail(ErrorKind::InvalidArgument, "qubit count must be at least 1");
    }
    ClassHistogram hist{std::vector<double>(static_cast<std::size_t>(num_qubits + 1), 0.0)};
    for (const auto &[bits, count] : counts.outcomes) {
        if (bits.size() != static_cast<std::size_t>(num_qubits)) {
            fail(ErrorKind::InvalidArgument, "setting '" + counts.id + "': bitstring '" + bits + "' has length " +
                                                 std::to_string(bits.size()) + ", expected " +
                                                 std::to_string(num_qubits));
        }
        std::size_t ones = 0;
        for (char c : bits) {
            if (c == '1') {
                ++ones;
            } else if (c != '0') {
                fail(ErrorKind::InvalidArgument, "setting '" + counts.id + "': bitstring '" + bits +
                                                     "' contains characters other than 0 and 1");
            }
        }
        hist.counts[ones] += static_cast<double>(count);
    }
    return hist;
}

Estimate setting_moment(const ClassHistogram &hist, int n) {
    const int N = hist.num_qubits();
    if (N < 1 || n < 0 || n > N - 1) {
        fail(ErrorKind::InvalidArgument, "setting moment needs 0 <= n <= N-1");
    }
    return histogram_mean(hist, [N, n](int w) { return class_moment_weight(N, n, w); });
}

std::vector<ClassHistogram> scheme_histograms(const Scheme &scheme, const CountData &data) {
    if (data.num_qubits != scheme.num_qubits()) {
        fail(ErrorKind::InvalidArgument, "count data has " + std::to_string(data.num_qubits) +
                                             " qubits, scheme has " + std::to_string(scheme.num_qubits()));
    }
    std::vector<ClassHistogram> out;
    std::string missing;
    for (std::size_t j = 0; j < scheme.num_settings(); ++j) {
        const std::string id = Scheme::setting_id(j);
        const SettingCounts *rec = data.find(id);
        if (rec == nullptr) {
            missing += (missing.empty() ? "" : ", ") + id;
            continue;
        }
        if (rec->direction && (rec->direction->vector() - scheme.direction(j).vector()).norm() > 1e-9) {
            fail(ErrorKind::InvalidArgument, "setting '" + id + "' was measured along a different direction "
                                                 "than the scheme specifies");
        }
        out.push_back(class_histogram(*rec, scheme.num_qubits()));
    }
    if (!missing.empty()) {
        fail(ErrorKind::IncompleteData, "no counts for scheme settings: " + missing);
    }
    return out;
}

BlochVector reconstruct(const Scheme &scheme, const CountData &data) {
    const auto histograms = scheme_histograms(scheme, data);
    return reconstruct(scheme, histograms);
}

BlochVector reconstruct(const Scheme &scheme, std::span<const ClassHistogram> histograms) {
    const int N = scheme.num_qubits();
    const std::size_t D = scheme.num_settings();
    if (histograms.size() != D) {
        fail(ErrorKind::IncompleteData, "expected " + std::to_string(D) + " setting histograms, got " +
                                            std::to_string(histograms.size()));
    }
    // moments[n][j]
    std::vector<std::vector<Estimate>> moments(static_cast<std::size_t>(N), std::vector<Estimate>(D));
    for (std::size_t j = 0; j < D; ++j) {
        if (histograms[j].num_qubits() != N) {
            fail(ErrorKind::InvalidArgument, "histogram of setting " + Scheme::setting_id(j) +
                                                 " has the wrong number of classes");
        }
        for (int n = 0; n < N; ++n) {
            moments[static_cast<std::size_t>(n)][j] = setting_moment(histograms[j], n);
        }
    }
    BlochVector out(N);
    for (const PiIndex &idx : out.basis()) {
        if (idx.is_identity()) {
            out.set_value(idx, 1.0);
            out.set_sigma(idx, 0.0);
            continue;
        }
        const auto c = scheme.coefficients(idx);
        const auto &m = moments[static_cast<std::size_t>(idx.n)];
        double value = 0.0;
        double var = 0.0;
        for (std::size_t j = 0; j < D; ++j) {
            value += c[j] * m[j].value;
            var += c[j] * c[j] * m[j].sigma * m[j].sigma;
        }
        out.set_value(idx, value);
        out.set_sigma(idx, std::sqrt(var));
    }
    return out;
}

namespace {

// Euclidean projection onto {x >= 0, sum x = 1}.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd &v) {
    std::vector<double> u(v.data(), v.data() + v.size());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumulative += u[j];
        double t = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0) {
            theta = t;
        }
    }
    return (v.array() - theta).cwiseMax(0.0).matrix();
}

struct SettingFrame {
    Eigen::Matrix2cd basis;
    std::vector<int> weight_of;  // Hamming weight of each basis index
};

std::vector<SettingFrame> setting_frames(const Scheme &scheme) {
    const int N = scheme.num_qubits();
    const std::size_t dim = std::size_t{1} << N;
    std::vector<int> weights(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        weights[b] = std::popcount(b);
    }
    std::vector<SettingFrame> out;
    for (const auto &a : scheme.directions()) {
        out.push_back(SettingFrame{measurement_basis(a), weights});
    }
    return out;
}

std::vector<double> frame_class_probabilities(const SettingFrame &frame, const Operator &rho, int N) {
    Operator rotated = rho;
    apply_local_unitary(rotated, frame.basis.adjoint());
    std::vector<double> p(static_cast<std::size_t>(N + 1), 0.0);
    for (Eigen::Index b = 0; b < rotated.rows(); ++b) {
        p[static_cast<std::size_t>(frame.weight_of[static_cast<std::size_t>(b)])] += rotated(b, b).real();
    }
    return p;
}

double likelihood_of(const std::vector<SettingFrame> &frames, std::span<const ClassHistogram> histograms,
                     const Operator &rho, int N) {
    double total = 0.0;
    for (std::size_t j = 0; j < frames.size(); ++j) {
        const auto p = frame_class_probabilities(frames[j], rho, N);
        for (int w = 0; w <= N; ++w) {
            double count = histograms[j].counts[static_cast<std::size_t>(w)];
            if (count == 0) {
                continue;
            }
            double pw = p[static_cast<std::size_t>(w)];
            if (!(pw > 0)) {
                return -std::numeric_limits<double>::infinity();
            }
            total += count * std::log(pw);
        }
    }
    return total;
}

void check_fit_inputs(const Scheme &scheme, std::span<const ClassHistogram> histograms, const DensityMatrix &initial) {
    const int N = scheme.num_qubits();
    check_dense_capacity(N);
    if (histograms.size() != scheme.num_settings()) {
        fail(ErrorKind::IncompleteData, "expected " + std::to_string(scheme.num_settings()) +
                                            " setting histograms, got " + std::to_string(histograms.size()));
    }
    for (const auto &h : histograms) {
        if (h.num_qubits() != N) {
            fail(ErrorKind::InvalidArgument, "histogram has the wrong number of classes");
        }
    }
    if (initial.num_qubits() != N) {
        fail(ErrorKind::InvalidArgument, "initial state has the wrong number of qubits");
    }
}

}  // namespace

DensityMatrix physical_projection(const BlochVector &b) {
    const DensityMatrix target = dense_from_bloch(b);
    Eigen::SelfAdjointEigenSolver<Operator> es(target.matrix());
    const Eigen::VectorXd eig = project_to_simplex(es.eigenvalues());
    Operator rho = es.eigenvectors() * eig.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    // The constraint set is permutation invariant, so the projection of a PI matrix is PI;
    // the twirl only removes rounding.
    return DensityMatrix(pi_twirl_operator(rho));
}

double log_likelihood(const Scheme &scheme, std::span<const ClassHistogram> histograms, const DensityMatrix &rho) {
    check_fit_inputs(scheme, histograms, rho);
    return likelihood_of(setting_frames(scheme), histograms, rho.matrix(), scheme.num_qubits());
}

MlFitResult ml_fit(const Scheme &scheme, const CountData &data, const DensityMatrix &initial,
                   std::size_t max_iterations, double tolerance) {
    const auto histograms = scheme_histograms(scheme, data);
    return ml_fit(scheme, histograms, initial, max_iterations, tolerance);
}

MlFitResult ml_fit(const Scheme &scheme, std::span<const ClassHistogram> histograms, const DensityMatrix &initial,
                   std::size_t max_iterations, double tolerance) {
    check_fit_inputs(scheme, histograms, initial);
    const int N = scheme.num_qubits();
    {
        Eigen::SelfAdjointEigenSolver<Operator> es(initial.matrix(), Eigen::EigenvaluesOnly);
        if (!(es.eigenvalues().minCoeff() > 0)) {
            fail(ErrorKind::InvalidArgument, "initial state for the likelihood fit must be positive definite");
        }
    }
    const auto frames = setting_frames(scheme);
    const Eigen::Index dim = initial.dimension();
    const double settings = static_cast<double>(frames.size());
    std::vector<double> totals;
    for (const auto &h : histograms) {
        double t = h.total();
        if (!(t > 0)) {
            fail(ErrorKind::InsufficientCounts, "every setting needs at least one count for the likelihood fit");
        }
        totals.push_back(t);
    }

    Operator rho = pi_twirl_operator(initial.matrix());
    rho /= rho.trace().real();
    double current = likelihood_of(frames, histograms, rho, N);
    MlFitResult result{DensityMatrix(rho), false, 0, {current}};
    double dilution = 1e3;
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        // R = (1/S) sum_j sum_w f_jw / p_jw Pi_jw; R = 1 at an interior maximum.
        Operator R = Operator::Zero(dim, dim);
        for (std::size_t j = 0; j < frames.size(); ++j) {
            const auto p = frame_class_probabilities(frames[j], rho, N);
            Operator diag = Operator::Zero(dim, dim);
            for (Eigen::Index b = 0; b < dim; ++b) {
                auto w = static_cast<std::size_t>(frames[j].weight_of[static_cast<std::size_t>(b)]);
                double f = histograms[j].counts[w] / totals[j];
                diag(b, b) = (f > 0 && p[w] > 0) ? f / p[w] : 0.0;
            }
            apply_local_unitary(diag, frames[j].basis);
            R += diag;
        }
        R /= settings;

        bool improved = false;
        double next_value = current;
        Operator next;
        for (; dilution > 1e-12; dilution /= 2) {
            Operator step = Operator::Identity(dim, dim) + dilution * R;
            next = step * rho * step.adjoint();
            next = (next + next.adjoint()) / 2.0;
            next /= next.trace().real();
            next_value = likelihood_of(frames, histograms, next, N);
            if (next_value >= current) {
                improved = true;
                break;
            }
        }
        result.iterations = iter + 1;
        if (!improved) {
            result.converged = true;
            break;
        }
        const double gain = next_value - current;
        rho = std::move(next);
        current = next_value;
        result.log_likelihood.push_back(current);
        dilution = std::min(dilution * 4, 1e3);
        if (gain <= tolerance * std::max(1.0, std::abs(current))) {
            result.converged = true;
            break;
        }
    }
    result.rho = DensityMatrix(pi_twirl_operator(rho));
    return result;
}

}  // namespace pitomo
