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

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pitomo/dense.h"
#include "pitomo/pi_basis.h"
#include "pitomo/scheme.h"

namespace pitomo {

/// Which Bloch elements the total uncertainty sums over.
enum class Objective {
    /// Only the full N-body correlations (n = 0).
    FullCorrelations,
    /// Every element.
    AllElements,
};

/// Poissonian counting model. lambda is the expected total count of a setting; the
/// variance of a setting moment is its quantum variance in the prior state divided by
/// (lambda - 1). Without a prior the analytic white-noise value is used.
class VarianceModel {
   public:
    enum class Kind { WhiteNoise, StateBased };

    static VarianceModel white_noise(double lambda);
    static VarianceModel state_based(BlochVector prior, double lambda);
    /// The prior's PI part is all that matters, so it is stored as a Bloch vector.
    static VarianceModel state_based(const DensityMatrix &prior, double lambda);

    /// Per-setting expected counts overriding the shared lambda.
    VarianceModel &with_setting_lambdas(std::vector<double> lambdas);

    Kind kind() const {
        return kind_;
    }
    double lambda() const {
        return lambda_;
    }
    double lambda(std::size_t setting) const;
    const std::optional<BlochVector> &prior() const {
        return prior_;
    }

   private:
    VarianceModel(Kind kind, double lambda, std::optional<BlochVector> prior);

    Kind kind_;
    double lambda_;
    std::vector<double> setting_lambdas_;
    std::optional<BlochVector> prior_;
};

/// Variance of the measured <(A^{(x)(N-n)} (x) 1^{(x)n})_PI> for setting `setting`.
double setting_variance(const Direction &a, int n, int num_qubits, const VarianceModel &model,
                        std::size_t setting = 0);

/// sum_j c_j^2 var_j.
double bloch_element_variance(std::span<const double> coefficients, std::span<const double> setting_variances);

/// table[j][n] = setting_variance(a_j, n) for n = 0..N-1.
std::vector<std::vector<double>> setting_variance_table(std::span<const Direction> directions, int num_qubits,
                                                        const VarianceModel &model);

/// Variance of every Bloch element of the scheme, in canonical class order. The
/// identity element is exact (variance 0).
std::vector<double> element_variances(const Scheme &scheme, const VarianceModel &model);

/// Squared total uncertainty: sum over classes of multiplicity x element variance.
double e_total(const Scheme &scheme, const VarianceModel &model, Objective objective = Objective::AllElements);

/// Largest standard deviation among the Bloch elements.
double eps_max(const Scheme &scheme, const VarianceModel &model);

}  // namespace pitomo
