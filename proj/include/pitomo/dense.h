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
#include <complex>

#include "pitomo/pi_basis.h"

namespace pitomo {

using Complex = std::complex<double>;
/// Dense 2^N x 2^N operator. Qubit 1 is the most significant bit of the row index.
using Operator = Eigen::MatrixXcd;

/// Largest qubit count for which dense 2^N x 2^N objects are built (16 MB per matrix).
inline constexpr int kDenseQubitLimit = 10;

enum class Axis { X = 0, Y = 1, Z = 2 };

const char *axis_name(Axis axis);

/// Throws capacity when num_qubits exceeds kDenseQubitLimit.
void check_dense_capacity(int num_qubits);
/// log2 of a square operator's dimension; invalid-argument if not a power of two.
int qubits_for_dimension(Eigen::Index dim);

Eigen::Matrix2cd pauli(Axis axis);
/// A = ax X + ay Y + az Z.
Eigen::Matrix2cd setting_observable(const Direction &a);
/// Columns are the +1 and -1 eigenvectors of A: outcome bit 0 maps to +1.
Eigen::Matrix2cd measurement_basis(const Direction &a);

/// In place: op <- U^{(x)N} op U^{(x)N, dagger}, applied one qubit at a time.
void apply_local_unitary(Operator &op, const Eigen::Matrix2cd &u);

/// Hermitian N-qubit density operator (trace is not forced to 1; PSD is not
/// required, so unphysical reconstructions can be represented).
class DensityMatrix {
   public:
    /// Validates shape and Hermiticity (1e-10 relative); the stored matrix is exactly
    /// Hermitian.
    explicit DensityMatrix(Operator data);
    static DensityMatrix maximally_mixed(int num_qubits);
    static DensityMatrix pure(const Eigen::VectorXcd &psi);

    int num_qubits() const {
        return num_qubits_;
    }
    Eigen::Index dimension() const {
        return data_.rows();
    }
    const Operator &matrix() const {
        return data_;
    }
    double trace() const {
        return data_.trace().real();
    }
    /// Tr(rho op).
    Complex expectation(const Operator &op) const;

   private:
    int num_qubits_;
    Operator data_;
};

}  // namespace pitomo
