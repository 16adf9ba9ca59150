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

#include "pitomo/dense.h"

#include <algorithm>
#include <cmath>

#include "pitomo/errors.h"

namespace pitomo {

const char *axis_name(Axis axis) {
    switch (axis) {
        case Axis::X:
            return "x";
        case Axis::Y:
            return "y";
        case Axis::Z:
            return "z";
    }
    return "?";
}

void check_dense_capacity(int num_qubits) {
    if (num_qubits > kDenseQubitLimit) {
        fail(ErrorKind::Capacity, "dense representation limited to " + std::to_string(kDenseQubitLimit) +
                                      " qubits, got " + std::to_string(num_qubits));
    }
}

int qubits_for_dimension(Eigen::Index dim) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        fail(ErrorKind::InvalidArgument, "operator dimension " + std::to_string(dim) + " is not 2^N with N >= 1");
    }
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) {
        ++n;
    }
    return n;
}

Eigen::Matrix2cd pauli(Axis axis) {
    const Complex i(0, 1);
    Eigen::Matrix2cd p;
    switch (axis) {
        case Axis::X:
            p << 0, 1, 1, 0;
            break;
        case Axis::Y:
            p << 0, -i, i, 0;
            break;
        case Axis::Z:
            p << 1, 0, 0, -1;
            break;
    }
    return p;
}

Eigen::Matrix2cd setting_observable(const Direction &a) {
    return a.x() * pauli(Axis::X) + a.y() * pauli(Axis::Y) + a.z() * pauli(Axis::Z);
}

Eigen::Matrix2cd measurement_basis(const Direction &a) {
    double theta = std::acos(std::clamp(a.z(), -1.0, 1.0));
    double phi = std::atan2(a.y(), a.x());
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    Complex e = std::polar(1.0, phi);
    Eigen::Matrix2cd u;
    u << c, s, e * s, -e * c;
    return u;
}

void apply_local_unitary(Operator &op, const Eigen::Matrix2cd &u) {
    const Eigen::Index dim = op.rows();
    const int n = qubits_for_dimension(dim);
    const Eigen::Matrix2cd ud = u.adjoint();
    for (int q = 0; q < n; ++q) {
        const Eigen::Index bit = Eigen::Index{1} << q;
        for (Eigen::Index r = 0; r < dim; ++r) {
            if (r & bit) {
                continue;
            }
            for (Eigen::Index c = 0; c < dim; ++c) {
                Complex a0 = op(r, c);
                Complex a1 = op(r | bit, c);
                op(r, c) = u(0, 0) * a0 + u(0, 1) * a1;
                op(r | bit, c) = u(1, 0) * a0 + u(1, 1) * a1;
            }
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            if (c & bit) {
                continue;
            }
            for (Eigen::Index r = 0; r < dim; ++r) {
                Complex a0 = op(r, c);
                Complex a1 = op(r, c | bit);
                op(r, c) = a0 * ud(0, 0) + a1 * ud(1, 0);
                op(r, c | bit) = a0 * ud(0, 1) + a1 * ud(1, 1);
            }
        }
    }
}

DensityMatrix::DensityMatrix(Operator data) : num_qubits_(0), data_(std::move(data)) {
    if (data_.rows() != data_.cols()) {
        fail(ErrorKind::InvalidArgument, "density matrix must be square");
    }
    num_qubits_ = qubits_for_dimension(data_.rows());
    check_dense_capacity(num_qubits_);
    if (!data_.allFinite()) {
        fail(ErrorKind::InvalidArgument, "density matrix has non-finite entries");
    }
    double scale = std::max(1.0, data_.cwiseAbs().maxCoeff());
    double asym = (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale) {
        fail(ErrorKind::InvalidArgument, "matrix is not Hermitian (max |M - M^dagger| = " + std::to_string(asym) + ")");
    }
    Operator h = (data_ + data_.adjoint()) / 2.0;
    data_ = std::move(h);
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    check_dense_capacity(num_qubits);
    Eigen::Index dim = Eigen::Index{1} << num_qubits;
    return DensityMatrix(Operator::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd &psi) {
    double norm = psi.norm();
    if (!(norm > 0)) {
        fail(ErrorKind::InvalidArgument, "cannot build a pure state from a zero vector");
    }
    Eigen::VectorXcd u = psi / norm;
    return DensityMatrix(u * u.adjoint());
}

Complex DensityMatrix::expectation(const Operator &op) const {
    if (op.rows() != data_.rows() || op.cols() != data_.cols()) {
        fail(ErrorKind::InvalidArgument, "operator dimension does not match the state");
    }
    return (data_.transpose().cwiseProduct(op)).sum();
}

}  // namespace pitomo
