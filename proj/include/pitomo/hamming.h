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

#include <functional>
#include <vector>

#include "pitomo/pi_basis.h"

namespace pitomo {

/// A value with its one-sigma uncertainty.
struct Estimate {
    double value = 0.0;
    double sigma = 0.0;
};

/// Counts of one setting grouped by Hamming weight w (number of -1 outcomes).
/// Weights may be fractional so that exact expected counts can be represented.
struct ClassHistogram {
    std::vector<double> counts;

    int num_qubits() const {
        return static_cast<int>(counts.size()) - 1;
    }
    double total() const;
};

/// Eigenvalue of the normalized (A^{(x)(N-n)} (x) 1^{(x)n})_PI on outcome class w:
/// the mean product of N-n signs drawn without replacement from a string holding w
/// minus signs.
double class_moment_weight(int num_qubits, int n, int w);

/// Plug-in mean of g(w) under the histogram's frequencies; sigma^2 is the plug-in
/// variance divided by (total - 1). Throws insufficient-counts when total < 2.
Estimate histogram_mean(const ClassHistogram &hist, const std::function<double(int)> &g);

/// <(A^{(x)(N-n)} (x) 1^{(x)n})_PI> for n = 0..N (the last entry is 1), read off a
/// PI state's Bloch vector.
std::vector<double> setting_moments_from_bloch(const BlochVector &b, const Direction &a);

/// Probability of each outcome class w = 0..N when measuring A on every qubit of the PI
/// state b.
std::vector<double> class_probabilities(const BlochVector &b, const Direction &a);

}  // namespace pitomo
