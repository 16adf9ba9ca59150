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

#include "pitomo/pi_basis.h"

#include <charconv>
#include <cmath>

#include "pitomo/errors.h"

namespace pitomo {

std::string PiIndex::key() const {
    return std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(m) + "," + std::to_string(n);
}

PiIndex PiIndex::parse_key(std::string_view key) {
    int parts[4];
    const char *p = key.data();
    const char *end = key.data() + key.size();
    for (int i = 0; i < 4; ++i) {
        auto [next, ec] = std::from_chars(p, end, parts[i]);
        if (ec != std::errc() || parts[i] < 0) {
            fail(ErrorKind::InvalidArgument, "malformed class key '" + std::string(key) + "'");
        }
        p = next;
        if (i < 3) {
            if (p == end || *p != ',') {
                fail(ErrorKind::InvalidArgument, "malformed class key '" + std::string(key) + "'");
            }
            ++p;
        }
    }
    if (p != end) {
        fail(ErrorKind::InvalidArgument, "malformed class key '" + std::string(key) + "'");
    }
    return PiIndex{parts[0], parts[1], parts[2], parts[3]};
}

double binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return std::round(r);
}

static void check_qubits(int num_qubits) {
    if (num_qubits < 1) {
        fail(ErrorKind::InvalidArgument, "qubit count must be at least 1, got " + std::to_string(num_qubits));
    }
}

std::vector<PiIndex> enumerate_basis(int num_qubits) {
    check_qubits(num_qubits);
    std::vector<PiIndex> out;
    out.reserve(basis_size(num_qubits));
    for (int k = 0; k <= num_qubits; ++k) {
        for (int l = 0; k + l <= num_qubits; ++l) {
            for (int m = 0; k + l + m <= num_qubits; ++m) {
                out.push_back(PiIndex{k, l, m, num_qubits - k - l - m});
            }
        }
    }
    return out;
}

std::size_t basis_size(int num_qubits) {
    check_qubits(num_qubits);
    return static_cast<std::size_t>(binomial(num_qubits + 3, 3));
}

std::size_t basis_position(const PiIndex &idx) {
    int N = idx.num_qubits();
    std::size_t pos = 0;
    // Classes with a smaller k: for each k' there are C(N-k'+2, 2) choices of (l, m).
    for (int kk = 0; kk < idx.k; ++kk) {
        pos += static_cast<std::size_t>((N - kk + 1) * (N - kk + 2) / 2);
    }
    for (int ll = 0; ll < idx.l; ++ll) {
        pos += static_cast<std::size_t>(N - idx.k - ll + 1);
    }
    return pos + static_cast<std::size_t>(idx.m);
}

std::uint64_t multiplicity(const PiIndex &idx) {
    if (idx.k < 0 || idx.l < 0 || idx.m < 0 || idx.n < 0) {
        fail(ErrorKind::InvalidArgument, "negative class exponent in " + idx.key());
    }
    int N = idx.num_qubits();
    auto c = [](int n, int k) {
        return static_cast<std::uint64_t>(binomial(n, k));
    };
    return c(N, idx.k) * c(N - idx.k, idx.l) * c(N - idx.k - idx.l, idx.m);
}

Direction::Direction(double ax, double ay, double az) : v_(ax, ay, az) {
    if (!std::isfinite(ax) || !std::isfinite(ay) || !std::isfinite(az) || std::abs(v_.squaredNorm() - 1.0) > 1e-12) {
        fail(ErrorKind::InvalidArgument, "direction is not a unit vector");
    }
}

Direction Direction::normalized(double ax, double ay, double az) {
    return normalized(Eigen::Vector3d(ax, ay, az));
}

Direction Direction::normalized(const Eigen::Vector3d &v) {
    double norm = v.norm();
    if (!(norm > 0) || !std::isfinite(norm)) {
        fail(ErrorKind::InvalidArgument, "cannot normalize a zero or non-finite direction");
    }
    Eigen::Vector3d u = v / norm;
    return Direction(u.x(), u.y(), u.z());
}

BlochVector::BlochVector(int num_qubits)
    : num_qubits_(num_qubits), basis_(enumerate_basis(num_qubits)), values_(basis_.size(), 0.0) {
    values_[basis_position(PiIndex{0, 0, 0, num_qubits})] = 1.0;
}

BlochVector::BlochVector(int num_qubits, std::vector<double> values)
    : num_qubits_(num_qubits), basis_(enumerate_basis(num_qubits)), values_(std::move(values)) {
    if (values_.size() != basis_.size()) {
        fail(ErrorKind::InvalidArgument, "Bloch vector for " + std::to_string(num_qubits) + " qubits needs " +
                                             std::to_string(basis_.size()) + " entries, got " +
                                             std::to_string(values_.size()));
    }
}

std::size_t BlochVector::checked_position(const PiIndex &idx) const {
    if (idx.num_qubits() != num_qubits_ || idx.k < 0 || idx.l < 0 || idx.m < 0 || idx.n < 0) {
        fail(ErrorKind::InvalidArgument, "class " + idx.key() + " does not belong to a " +
                                             std::to_string(num_qubits_) + "-qubit Bloch vector");
    }
    return basis_position(idx);
}

double BlochVector::value(const PiIndex &idx) const {
    return values_[checked_position(idx)];
}

void BlochVector::set_value(const PiIndex &idx, double value) {
    values_[checked_position(idx)] = value;
}

double BlochVector::sigma(const PiIndex &idx) const {
    if (!sigmas_) {
        return 0.0;
    }
    return (*sigmas_)[checked_position(idx)];
}

void BlochVector::set_sigma(const PiIndex &idx, double sigma) {
    if (!sigmas_) {
        sigmas_.emplace(values_.size(), 0.0);
    }
    (*sigmas_)[checked_position(idx)] = sigma;
}

std::span<const double> BlochVector::sigmas() const {
    if (!sigmas_) {
        return {};
    }
    return *sigmas_;
}

}  // namespace pitomo
