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

#include "pitomo/pi_algebra.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "pitomo/errors.h"

namespace pitomo {

namespace {

// Pauli-string arrays have 4^N entries. Digit q (base 4, q = bit position) holds the
// letter on that qubit: 0 = I, 1 = X, 2 = Y, 3 = Z. Matrix arrays use the same layout
// with digit q = 2 * row_bit_q + col_bit_q.

std::uint64_t spread_bits(std::uint64_t x) {
    std::uint64_t out = 0;
    for (int i = 0; x; ++i, x >>= 1) {
        out |= (x & 1) << (2 * i);
    }
    return out;
}

std::vector<Complex> matrix_to_array(const Operator &op) {
    const Eigen::Index dim = op.rows();
    std::vector<std::uint64_t> spread(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        spread[i] = spread_bits(static_cast<std::uint64_t>(i));
    }
    std::vector<Complex> out(static_cast<std::size_t>(dim * dim));
    for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) {
            out[(spread[r] << 1) | spread[c]] = op(r, c);
        }
    }
    return out;
}

Operator array_to_matrix(const std::vector<Complex> &arr, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    std::vector<std::uint64_t> spread(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        spread[i] = spread_bits(static_cast<std::uint64_t>(i));
    }
    Operator op(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) {
            op(r, c) = arr[(spread[r] << 1) | spread[c]];
        }
    }
    return op;
}

// Matrix entries -> Tr(op P) for every Pauli string P.
std::vector<Complex> pauli_expectations(const Operator &op) {
    const int n = qubits_for_dimension(op.rows());
    std::vector<Complex> a = matrix_to_array(op);
    const Complex i(0, 1);
    std::size_t stride = 1;
    for (int q = 0; q < n; ++q, stride *= 4) {
        for (std::size_t base = 0; base < a.size(); base += 4 * stride) {
            for (std::size_t off = 0; off < stride; ++off) {
                std::size_t p = base + off;
                Complex a0 = a[p], a1 = a[p + stride], a2 = a[p + 2 * stride], a3 = a[p + 3 * stride];
                a[p] = a0 + a3;
                a[p + stride] = a1 + a2;
                a[p + 2 * stride] = i * (a1 - a2);
                a[p + 3 * stride] = a0 - a3;
            }
        }
    }
    return a;
}

// Coefficients c_P -> sum_P c_P P.
Operator operator_from_pauli(std::vector<Complex> a, int n) {
    const Complex i(0, 1);
    std::size_t stride = 1;
    for (int q = 0; q < n; ++q, stride *= 4) {
        for (std::size_t base = 0; base < a.size(); base += 4 * stride) {
            for (std::size_t off = 0; off < stride; ++off) {
                std::size_t p = base + off;
                Complex c0 = a[p], c1 = a[p + stride], c2 = a[p + 2 * stride], c3 = a[p + 3 * stride];
                a[p] = c0 + c3;
                a[p + stride] = c1 - i * c2;
                a[p + 2 * stride] = c1 + i * c2;
                a[p + 3 * stride] = c0 - c3;
            }
        }
    }
    return array_to_matrix(a, n);
}

// Canonical class position of every Pauli string.
std::vector<std::uint32_t> class_of_strings(int n) {
    std::vector<std::uint32_t> out(std::size_t{1} << (2 * n));
    for (std::size_t p = 0; p < out.size(); ++p) {
        int counts[4] = {0, 0, 0, 0};
        std::size_t x = p;
        for (int q = 0; q < n; ++q, x >>= 2) {
            counts[x & 3]++;
        }
        out[p] = static_cast<std::uint32_t>(basis_position(PiIndex{counts[1], counts[2], counts[3], counts[0]}));
    }
    return out;
}

std::vector<Complex> class_averages(const std::vector<Complex> &per_string, const std::vector<std::uint32_t> &cls,
                                    std::size_t num_classes) {
    std::vector<Complex> sums(num_classes, 0.0);
    std::vector<std::size_t> counts(num_classes, 0);
    for (std::size_t p = 0; p < per_string.size(); ++p) {
        sums[cls[p]] += per_string[p];
        counts[cls[p]]++;
    }
    for (std::size_t c = 0; c < num_classes; ++c) {
        sums[c] /= static_cast<double>(counts[c]);
    }
    return sums;
}

}  // namespace

std::map<PiIndex, double> expand_setting(const Direction &a, int n, int num_qubits) {
    if (num_qubits < 1) {
        fail(ErrorKind::InvalidArgument, "qubit count must be at least 1");
    }
    if (n < 0 || n > num_qubits - 1) {
        fail(ErrorKind::InvalidArgument, "identity count n must lie in [0, N-1], got " + std::to_string(n));
    }
    const int w = num_qubits - n;
    std::map<PiIndex, double> out;
    for (int k = 0; k <= w; ++k) {
        for (int l = 0; k + l <= w; ++l) {
            int m = w - k - l;
            double coeff = binomial(w, k) * binomial(w - k, l) * std::pow(a.x(), k) * std::pow(a.y(), l) *
                           std::pow(a.z(), m);
            if (coeff != 0.0) {
                out.emplace(PiIndex{k, l, m, n}, coeff);
            }
        }
    }
    return out;
}

Operator dense_basis_op(const PiIndex &idx) {
    const int n = idx.num_qubits();
    if (n < 1 || idx.k < 0 || idx.l < 0 || idx.m < 0 || idx.n < 0) {
        fail(ErrorKind::InvalidArgument, "invalid class " + idx.key());
    }
    check_dense_capacity(n);
    const auto cls = class_of_strings(n);
    const auto target = static_cast<std::uint32_t>(basis_position(idx));
    const double w = 1.0 / static_cast<double>(multiplicity(idx));
    std::vector<Complex> coeffs(cls.size(), 0.0);
    for (std::size_t p = 0; p < cls.size(); ++p) {
        if (cls[p] == target) {
            coeffs[p] = w;
        }
    }
    return operator_from_pauli(std::move(coeffs), n);
}

DensityMatrix pi_twirl_by_permutations(const DensityMatrix &rho) {
    const int n = rho.num_qubits();
    if (n > 8) {
        fail(ErrorKind::Capacity, "permutation-sum twirl is limited to 8 qubits");
    }
    const Eigen::Index dim = rho.dimension();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Eigen::Index> image(static_cast<std::size_t>(dim));
    Operator acc = Operator::Zero(dim, dim);
    std::size_t count = 0;
    do {
        for (Eigen::Index b = 0; b < dim; ++b) {
            Eigen::Index t = 0;
            for (int q = 0; q < n; ++q) {
                if (b & (Eigen::Index{1} << q)) {
                    t |= Eigen::Index{1} << perm[q];
                }
            }
            image[b] = t;
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            for (Eigen::Index r = 0; r < dim; ++r) {
                acc(image[r], image[c]) += rho.matrix()(r, c);
            }
        }
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return DensityMatrix(acc / static_cast<double>(count));
}

Operator pi_twirl_operator(const Operator &op) {
    if (op.rows() != op.cols()) {
        fail(ErrorKind::InvalidArgument, "operator must be square");
    }
    const int n = qubits_for_dimension(op.rows());
    check_dense_capacity(n);
    const auto cls = class_of_strings(n);
    const std::size_t num_classes = basis_size(n);
    std::vector<Complex> t = pauli_expectations(op);
    const auto avg = class_averages(t, cls, num_classes);
    const double scale = std::ldexp(1.0, -n);
    for (std::size_t p = 0; p < t.size(); ++p) {
        t[p] = avg[cls[p]] * scale;
    }
    return operator_from_pauli(std::move(t), n);
}

DensityMatrix pi_twirl(const DensityMatrix &rho) {
    return DensityMatrix(pi_twirl_operator(rho.matrix()));
}

std::vector<double> pi_class_traces(const Operator &op) {
    if (op.rows() != op.cols()) {
        fail(ErrorKind::InvalidArgument, "operator must be square");
    }
    const int n = qubits_for_dimension(op.rows());
    check_dense_capacity(n);
    const auto cls = class_of_strings(n);
    const auto avg = class_averages(pauli_expectations(op), cls, basis_size(n));
    std::vector<double> out(avg.size());
    std::transform(avg.begin(), avg.end(), out.begin(), [](Complex c) { return c.real(); });
    return out;
}

BlochVector bloch_from_dense(const DensityMatrix &rho) {
    return BlochVector(rho.num_qubits(), pi_class_traces(rho.matrix()));
}

DensityMatrix dense_from_bloch(const BlochVector &b) {
    const int n = b.num_qubits();
    check_dense_capacity(n);
    const auto cls = class_of_strings(n);
    const double scale = std::ldexp(1.0, -n);
    std::vector<Complex> coeffs(cls.size());
    auto values = b.values();
    for (std::size_t p = 0; p < cls.size(); ++p) {
        coeffs[p] = values[cls[p]] * scale;
    }
    return DensityMatrix(operator_from_pauli(std::move(coeffs), n));
}

Eigen::VectorXcd dicke_state(int num_qubits, int excitations) {
    if (num_qubits < 1) {
        fail(ErrorKind::InvalidArgument, "qubit count must be at least 1");
    }
    if (excitations < 0 || excitations > num_qubits) {
        fail(ErrorKind::InvalidArgument, "excitation count " + std::to_string(excitations) + " outside [0, " +
                                             std::to_string(num_qubits) + "]");
    }
    check_dense_capacity(num_qubits);
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    const double amp = 1.0 / std::sqrt(binomial(num_qubits, excitations));
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        if (std::popcount(static_cast<std::uint64_t>(b)) == excitations) {
            psi(b) = amp;
        }
    }
    return psi;
}

Operator symmetric_projector(int num_qubits) {
    check_dense_capacity(num_qubits);
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    Operator p = Operator::Zero(dim, dim);
    for (int e = 0; e <= num_qubits; ++e) {
        Eigen::VectorXcd d = dicke_state(num_qubits, e);
        p += d * d.adjoint();
    }
    return p;
}

Operator collective_op(int num_qubits, Axis axis, int power) {
    if (num_qubits < 1) {
        fail(ErrorKind::InvalidArgument, "qubit count must be at least 1");
    }
    if (power < 0) {
        fail(ErrorKind::InvalidArgument, "collective operator power must be non-negative");
    }
    check_dense_capacity(num_qubits);
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    const Complex i(0, 1);
    Operator j = Operator::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        for (int q = 0; q < num_qubits; ++q) {
            const Eigen::Index bit = Eigen::Index{1} << q;
            const bool one = (b & bit) != 0;
            switch (axis) {
                case Axis::X:
                    j(b ^ bit, b) += 0.5;
                    break;
                case Axis::Y:
                    j(b ^ bit, b) += one ? -0.5 * i : 0.5 * i;
                    break;
                case Axis::Z:
                    j(b, b) += one ? -0.5 : 0.5;
                    break;
            }
        }
    }
    Operator out = Operator::Identity(dim, dim);
    for (int p = 0; p < power; ++p) {
        out = out * j;
    }
    return out;
}

}  // namespace pitomo
