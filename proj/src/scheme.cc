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

#include "pitomo/scheme.h"

#include "pitomo/errors.h"

namespace pitomo {

int num_settings(int num_qubits) {
    if (num_qubits < 1) {
        fail(ErrorKind::InvalidArgument, "qubit count must be at least 1");
    }
    return (num_qubits * num_qubits + 3 * num_qubits + 2) / 2;
}

Scheme::Scheme(int num_qubits, std::vector<Direction> directions, std::vector<std::vector<double>> coefficients,
               double lambda)
    : num_qubits_(num_qubits),
      directions_(std::move(directions)),
      coefficients_(std::move(coefficients)),
      lambda_(lambda) {
    const auto expected = static_cast<std::size_t>(pitomo::num_settings(num_qubits));
    if (directions_.size() != expected) {
        fail(ErrorKind::InvalidArgument, "a " + std::to_string(num_qubits) + "-qubit scheme needs " +
                                             std::to_string(expected) + " settings, got " +
                                             std::to_string(directions_.size()));
    }
    if (coefficients_.size() != basis_size(num_qubits)) {
        fail(ErrorKind::InvalidArgument, "coefficient table must have one row per class (" +
                                             std::to_string(basis_size(num_qubits)) + "), got " +
                                             std::to_string(coefficients_.size()));
    }
    for (const auto &row : coefficients_) {
        if (row.size() != expected) {
            fail(ErrorKind::InvalidArgument, "coefficient row length must equal the setting count");
        }
    }
}

std::string Scheme::setting_id(std::size_t setting) {
    return "s" + std::to_string(setting + 1);
}

std::span<const double> Scheme::coefficients(const PiIndex &idx) const {
    if (idx.num_qubits() != num_qubits_) {
        fail(ErrorKind::InvalidArgument, "class " + idx.key() + " does not belong to this scheme");
    }
    return coefficients_[basis_position(idx)];
}

}  // namespace pitomo
