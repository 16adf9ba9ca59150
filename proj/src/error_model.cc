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

#include "pitomo/error_model.h"

#include <algorithm>
#include <cmath>

#include "pitomo/errors.h"
#include "pitomo/hamming.h"
#include "pitomo/pi_algebra.h"

namespace pitomo {

static void check_lambda(double lambda) {
    if (!(lambda > 1.0) || !std::isfinite(lambda)) {
        fail(ErrorKind::InvalidArgument, "expected counts per setting must exceed 1, got " + std::to_string(lambda));
    }
}

VarianceModel::VarianceModel(Kind kind, double lambda, std::optional<BlochVector> prior)
    : kind_(kind), lambda_(lambda), prior_(std::move(prior)) {
    check_lambda(lambda);
}

VarianceModel VarianceModel::white_noise(double lambda) {
    return VarianceModel(Kind::WhiteNoise, lambda, std::nullopt);
}

VarianceModel VarianceModel::state_based(BlochVector prior, double lambda) {
    return VarianceModel(Kind::StateBased, lambda, std::move(prior));
}

VarianceModel VarianceModel::state_based(const DensityMatrix &prior, double lambda) {
    return VarianceModel(Kind::StateBased, lambda, bloch_from_dense(prior));
}

VarianceModel &VarianceModel::with_setting_lambdas(std::vector<double> lambdas) {
    for (double l : lambdas) {
        check_lambda(l);
    }
    setting_lambdas_ = std::move(lambdas);
    return *this;
}

double VarianceModel::lambda(std::size_t setting) const {
    if (setting < setting_lambdas_.size()) {
        return setting_lambdas_[setting];
    }
    return lambda_;
}

double setting_variance(const Direction &a, int n, int num_qubits, const VarianceModel &model, std::size_t setting) {
    if (num_qubits < 1 || n < 0 || n > num_qubits - 1) {
        fail(ErrorKind::InvalidArgument, "setting variance needs 0 <= n <= N-1");
    }
    const double lambda = model.lambda(setting);
    check_lambda(lambda);
    if (model.kind() == VarianceModel::Kind::WhiteNoise) {
        return 1.0 / (binomial(num_qubits, n) * (lambda - 1.0));
    }
    const BlochVector &prior = *model.prior();
    if (prior.num_qubits() != num_qubits) {
        fail(ErrorKind::InvalidArgument, "prior state has " + std::to_string(prior.num_qubits()) +
                                             " qubits, scheme has " + std::to_string(num_qubits));
    }
    // The operator is diagonal in the outcome classes of the A basis, so its first two
    // moments follow from the class distribution.
    const auto p = class_probabilities(prior, a);
    double mean = 0.0;
    double second = 0.0;
    for (int w = 0; w <= num_qubits; ++w) {
        double h = class_moment_weight(num_qubits, n, w);
        mean += p[static_cast<std::size_t>(w)] * h;
        second += p[static_cast<std::size_t>(w)] * h * h;
    }
    return std::max(0.0, second - mean * mean) / (lambda - 1.0);
}

double bloch_element_variance(std::span<const double> coefficients, std::span<const double> setting_variances) {
    if (coefficients.size() != setting_variances.size()) {
        fail(ErrorKind::InvalidArgument, "coefficient row has " + std::to_string(coefficients.size()) +
                                             " entries but there are " + std::to_string(setting_variances.size()) +
                                             " setting variances");
    }
    double s = 0.0;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        s += coefficients[j] * coefficients[j] * setting_variances[j];
    }
    return s;
}

std::vector<std::vector<double>> setting_variance_table(std::span<const Direction> directions, int num_qubits,
                                                        const VarianceModel &model) {
    std::vector<std::vector<double>> table(directions.size(), std::vector<double>(static_cast<std::size_t>(num_qubits)));
    for (std::size_t j = 0; j < directions.size(); ++j) {
        for (int n = 0; n < num_qubits; ++n) {
            table[j][static_cast<std::size_t>(n)] = setting_variance(directions[j], n, num_qubits, model, j);
        }
    }
    return table;
}

std::vector<double> element_variances(const Scheme &scheme, const VarianceModel &model) {
    const int N = scheme.num_qubits();
    const auto table = setting_variance_table(scheme.directions(), N, model);
    const auto basis = enumerate_basis(N);
    std::vector<double> out(basis.size(), 0.0);
    std::vector<double> column(scheme.num_settings());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const PiIndex &idx = basis[i];
        if (idx.is_identity()) {
            continue;
        }
        for (std::size_t j = 0; j < column.size(); ++j) {
            column[j] = table[j][static_cast<std::size_t>(idx.n)];
        }
        out[i] = bloch_element_variance(scheme.coefficients(idx), column);
    }
    return out;
}

double e_total(const Scheme &scheme, const VarianceModel &model, Objective objective) {
    const auto basis = enumerate_basis(scheme.num_qubits());
    const auto vars = element_variances(scheme, model);
    double total = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (objective == Objective::FullCorrelations && basis[i].n != 0) {
            continue;
        }
        total += static_cast<double>(multiplicity(basis[i])) * vars[i];
    }
    return total;
}

double eps_max(const Scheme &scheme, const VarianceModel &model) {
    const auto vars = element_variances(scheme, model);
    return std::sqrt(*std::max_element(vars.begin(), vars.end()));
}

}  // namespace pitomo
