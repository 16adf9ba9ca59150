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
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pitomo {

/// Exponents (k, l, m, n) of the symmetrized Pauli class (X^k Y^l Z^m 1^n)_PI.
/// Ordering is lexicographic in (k, l, m); for a fixed qubit count n is implied.
struct PiIndex {
    int k = 0;
    int l = 0;
    int m = 0;
    int n = 0;

    int num_qubits() const {
        return k + l + m + n;
    }
    int weight() const {
        return k + l + m;
    }
    bool is_identity() const {
        return k == 0 && l == 0 && m == 0;
    }

    /// "k,l,m,n", the key used by the file formats.
    std::string key() const;
    static PiIndex parse_key(std::string_view key);

    auto operator<=>(const PiIndex &) const = default;
};

/// Exact binomial coefficient as a double (0 outside 0 <= k <= n).
double binomial(int n, int k);

/// All classes for `num_qubits`, in canonical order. Length C(N+3, 3).
std::vector<PiIndex> enumerate_basis(int num_qubits);
std::size_t basis_size(int num_qubits);
/// Position of `idx` within enumerate_basis(idx.num_qubits()).
std::size_t basis_position(const PiIndex &idx);

/// Number of distinct Pauli strings in the class: N! / (k! l! m! n!).
std::uint64_t multiplicity(const PiIndex &idx);

/// Unit measurement direction a; the measured single-qubit observable is
/// A = ax X + ay Y + az Z.
class Direction {
   public:
    /// Throws invalid-argument unless ax^2 + ay^2 + az^2 = 1 within 1e-12.
    Direction(double ax, double ay, double az);
    /// Rescales a nonzero vector onto the unit sphere.
    static Direction normalized(double ax, double ay, double az);
    static Direction normalized(const Eigen::Vector3d &v);

    double x() const {
        return v_.x();
    }
    double y() const {
        return v_.y();
    }
    double z() const {
        return v_.z();
    }
    const Eigen::Vector3d &vector() const {
        return v_;
    }
    Direction operator-() const {
        return Direction(-v_.x(), -v_.y(), -v_.z());
    }

   private:
    Eigen::Vector3d v_;
};

/// Generalized Bloch vector: one expectation value per PiIndex, stored in canonical
/// order, with optional one-sigma uncertainties. The identity entry is 1 for a
/// normalized state.
class BlochVector {
   public:
    /// Zero vector except for the identity entry, which is set to 1.
    explicit BlochVector(int num_qubits);
    BlochVector(int num_qubits, std::vector<double> values);

    int num_qubits() const {
        return num_qubits_;
    }
    std::size_t size() const {
        return values_.size();
    }
    const std::vector<PiIndex> &basis() const {
        return basis_;
    }

    double value(const PiIndex &idx) const;
    void set_value(const PiIndex &idx, double value);
    std::span<const double> values() const {
        return values_;
    }
    std::span<double> values() {
        return values_;
    }

    bool has_sigmas() const {
        return sigmas_.has_value();
    }
    double sigma(const PiIndex &idx) const;
    void set_sigma(const PiIndex &idx, double sigma);
    std::span<const double> sigmas() const;
    void clear_sigmas() {
        sigmas_.reset();
    }

   private:
    std::size_t checked_position(const PiIndex &idx) const;

    int num_qubits_;
    std::vector<PiIndex> basis_;
    std::vector<double> values_;
    std::optional<std::vector<double>> sigmas_;
};

}  // namespace pitomo
