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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pitomo/dense.h"
#include "pitomo/hamming.h"
#include "pitomo/scheme.h"

namespace pitomo {

/// Outcome histogram of one setting. Bitstring character i is qubit i+1; '0' is the +1
/// outcome of the measured observable.
struct SettingCounts {
    std::string id;
    std::optional<Direction> direction;
    std::map<std::string, std::uint64_t> outcomes;
};

struct CountData {
    int num_qubits = 0;
    std::string tag;
    std::vector<SettingCounts> settings;

    /// nullptr when absent.
    const SettingCounts *find(const std::string &id) const;
};

/// Groups outcomes by number of '1' characters. Throws invalid-argument for bitstrings
/// of the wrong length or alphabet.
ClassHistogram class_histogram(const SettingCounts &counts, int num_qubits);

/// Estimate of <(A^{(x)(N-n)} (x) 1^{(x)n})_PI> from one setting's histogram.
Estimate setting_moment(const ClassHistogram &hist, int n);

/// Per-setting histograms in scheme order. Throws incomplete-data listing missing ids.
std::vector<ClassHistogram> scheme_histograms(const Scheme &scheme, const CountData &data);

/// Bloch vector with sigmas from the scheme's coefficient table.
BlochVector reconstruct(const Scheme &scheme, const CountData &data);
BlochVector reconstruct(const Scheme &scheme, std::span<const ClassHistogram> histograms);

/// Nearest (Frobenius) unit-trace positive semidefinite matrix to dense_from_bloch(b).
/// The result is PI.
DensityMatrix physical_projection(const BlochVector &b);

struct MlFitResult {
    DensityMatrix rho;
    bool converged = false;
    std::size_t iterations = 0;
    /// Log-likelihood of the initial state and after every iteration.
    std::vector<double> log_likelihood;
};

/// Maximum-likelihood PI state for the class histograms of every scheme setting
/// (multinomial per setting). Diluted R rho R iteration; the likelihood never decreases.
MlFitResult ml_fit(const Scheme &scheme, std::span<const ClassHistogram> histograms, const DensityMatrix &initial,
                   std::size_t max_iterations = 2000, double tolerance = 1e-12);
MlFitResult ml_fit(const Scheme &scheme, const CountData &data, const DensityMatrix &initial,
                   std::size_t max_iterations = 2000, double tolerance = 1e-12);

/// Multinomial log-likelihood sum_{j,w} n_jw log p_jw of rho.
double log_likelihood(const Scheme &scheme, std::span<const ClassHistogram> histograms, const DensityMatrix &rho);

}  // namespace pitomo
