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

#include <span>
#include <string>
#include <vector>

#include "pitomo/pi_basis.h"

namespace pitomo {

/// Minimal number of settings for N qubits: (N^2 + 3N + 2) / 2.
int num_settings(int num_qubits);

/// A PI tomography scheme: D_N settings, each measuring the same observable
/// A_j = a_j . sigma on every qubit, plus the reconstruction coefficients c_j for every
/// class (stored in canonical class order, one row of length D_N per class).
class Scheme {
   public:
    Scheme(int num_qubits, std::vector<Direction> directions, std::vector<std::vector<double>> coefficients,
           double lambda);

    int num_qubits() const {
        return num_qubits_;
    }
    std::size_t num_settings() const {
        return directions_.size();
    }
    const std::vector<Direction> &directions() const {
        return directions_;
    }
    const Direction &direction(std::size_t setting) const {
        return directions_.at(setting);
    }
    /// "s1", "s2", ... : the id a setting carries in count files.
    static std::string setting_id(std::size_t setting);

    std::span<const double> coefficients(const PiIndex &idx) const;
    const std::vector<std::vector<double>> &coefficient_table() const {
        return coefficients_;
    }
    double lambda() const {
        return lambda_;
    }

   private:
    int num_qubits_;
    std::vector<Direction> directions_;
    std::vector<std::vector<double>> coefficients_;
    double lambda_;
};

}  // namespace pitomo
