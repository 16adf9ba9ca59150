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

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "pitomo/error_model.h"
#include "pitomo/scheme.h"

namespace pitomo {

/// Minimizes sum_j E_jj^2 c_j^2 subject to V c = v, via
/// c = E^-2 V^T (V E^-2 V^T)^-1 v. `weights` holds the diagonal of E (all > 0).
/// Throws singular-system when V E^-2 V^T is rank deficient.
Eigen::VectorXd solve_coefficients(const Eigen::MatrixXd &V, const Eigen::VectorXd &weights,
                                   const Eigen::VectorXd &v);
/// Same, solving for every column of `targets` at once.
Eigen::MatrixXd solve_coefficients(const Eigen::MatrixXd &V, const Eigen::VectorXd &weights,
                                   const Eigen::MatrixXd &targets);

/// Rows: classes with identity count n (canonical order); columns: settings.
/// Entry = coefficient of the class in expand_setting(a_j, n).
Eigen::MatrixXd design_matrix(std::span<const Direction> directions, int n, int num_qubits);

/// Solves the optimal coefficient table for fixed directions. A rank-deficient
/// direction set raises singular-system naming the class that cannot be resolved.
Scheme build_scheme(int num_qubits, std::vector<Direction> directions, const VarianceModel &model);

/// sum_{k,l} (v_k . v_l)^{2m}, diagonal included.
double frame_potential(std::span<const Direction> directions, int m);

/// D directions drawn uniformly from the sphere.
std::vector<Direction> random_directions(std::size_t count, std::uint64_t seed);

/// Seeded uniform start followed by descent on the m = 2 frame potential.
std::vector<Direction> init_directions(std::size_t count, std::uint64_t seed);

/// Maps a direction onto the az >= 0 hemisphere (ties broken by ay, then ax). A and -A
/// carry the same information.
Direction canonicalize(const Direction &a);

struct OptimizeOptions {
    Objective objective = Objective::AllElements;
    std::uint64_t seed = 1;
    /// Maximum number of perturbation trials.
    std::size_t budget = 20000;
};

struct OptimizationResult {
    Scheme scheme;
    double initial_objective;
    double objective;
    /// Objective after the initial guess and after every accepted step; non-increasing.
    std::vector<double> trace;
    std::size_t iterations = 0;
    std::size_t accepted = 0;
};

/// Random-rotation descent on the total uncertainty, started from init_directions.
/// Each trial rotates one direction by a small random angle about a random axis and is
/// kept only if it lowers the objective.
OptimizationResult optimize_scheme(int num_qubits, const VarianceModel &model, const OptimizeOptions &options = {});

/// The objective optimize_scheme minimizes, for a fixed direction set.
double scheme_objective(int num_qubits, std::span<const Direction> directions, const VarianceModel &model,
                        Objective objective);

}  // namespace pitomo
