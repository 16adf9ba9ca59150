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

#include <map>
#include <vector>

#include "pitomo/dense.h"
#include "pitomo/pi_basis.h"

namespace pitomo {

/// Coefficients of (A^{(x)(N-n)} (x) 1^{(x)n})_PI in the normalized class basis:
/// a_x^k a_y^l a_z^m (k+l+m)!/(k! l! m!) on every class with identity count n.
/// Exactly zero coefficients are omitted.
std::map<PiIndex, double> expand_setting(const Direction &a, int n, int num_qubits);

/// Normalized class operator: the average of the multiplicity(idx) distinct Pauli
/// strings in the class.
Operator dense_basis_op(const PiIndex &idx);

/// Symmetrizes over all N! qubit permutations explicitly. N <= 8.
DensityMatrix pi_twirl_by_permutations(const DensityMatrix &rho);
/// Symmetrizes by averaging Pauli expectations within each class.
DensityMatrix pi_twirl(const DensityMatrix &rho);
/// Same as pi_twirl for an arbitrary (not necessarily Hermitian) operator.
Operator pi_twirl_operator(const Operator &op);

/// Tr(op B_idx) for every class, in canonical order (real parts).
std::vector<double> pi_class_traces(const Operator &op);

BlochVector bloch_from_dense(const DensityMatrix &rho);
/// rho_PI = 2^-N sum_idx multiplicity(idx) b(idx) B_idx.
DensityMatrix dense_from_bloch(const BlochVector &b);

/// |D_N^(e)>: equal superposition of all basis states with e ones.
Eigen::VectorXcd dicke_state(int num_qubits, int excitations);
/// Projector onto the symmetric subspace (rank N+1).
Operator symmetric_projector(int num_qubits);
/// J_axis^power with J_axis = (1/2) sum_k sigma_axis^(k).
Operator collective_op(int num_qubits, Axis axis, int power);

}  // namespace pitomo
