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

#include "pitomo/experiment_sim.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "pitomo/errors.h"
#include "pitomo/pi_algebra.h"

namespace pitomo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::string bits_of(std::uint64_t index, int num_qubits) {
    std::string s(static_cast<std::size_t>(num_qubits), '0');
    for (int i = 0; i < num_qubits; ++i) {
        if ((index >> (num_qubits - 1 - i)) & 1U) {
            s[static_cast<std::size_t>(i)] = '1';
        }
    }
    return s;
}

std::vector<double> cleaned_probabilities(std::vector<double> p) {
    double total = 0.0;
    for (double &x : p) {
        if (x < -1e-9) {
            fail(ErrorKind::InvalidArgument, "state yields a negative outcome probability (" + std::to_string(x) +
                                                 "); it is not physical");
        }
        x = std::max(x, 0.0);
        total += x;
    }
    if (!(total > 0)) {
        fail(ErrorKind::InvalidArgument, "outcome probabilities sum to zero");
    }
    for (double &x : p) {
        x /= total;
    }
    return p;
}

// Multinomial split of `total` over `weights` (summing to `weight_sum`) by sequential binomials.
template <typename Emit>
void multinomial_split(std::uint64_t total, std::size_t count, double weight_sum, const auto &weight_of,
                       std::mt19937_64 &rng, Emit &&emit) {
    std::uint64_t remaining = total;
    double mass = weight_sum;
    for (std::size_t i = 0; i < count && remaining > 0; ++i) {
        const double w = weight_of(i);
        std::uint64_t k = 0;
        if (i + 1 == count || w >= mass) {
            k = remaining;
        } else if (w > 0) {
            std::binomial_distribution<std::uint64_t> draw(remaining, std::clamp(w / mass, 0.0, 1.0));
            k = draw(rng);
        }
        mass -= w;
        remaining -= k;
        if (k > 0) {
            emit(i, k);
        }
    }
}

}  // namespace

StateSpec StateSpec::dicke(int num_qubits, int excitations, double noise) {
    if (num_qubits < 1 || excitations < 0 || excitations > num_qubits) {
        fail(ErrorKind::InvalidArgument, "Dicke state needs N >= 1 and 0 <= e <= N");
    }
    if (!(noise >= 0.0 && noise <= 1.0)) {
        fail(ErrorKind::InvalidArgument, "noise weight must lie in [0, 1], got " + std::to_string(noise));
    }
    check_dense_capacity(num_qubits);
    StateSpec s(Kind::NoisyDicke, num_qubits);
    s.excitations_ = excitations;
    s.noise_ = noise;
    return s;
}

StateSpec StateSpec::maximally_mixed(int num_qubits) {
    if (num_qubits < 1) {
        fail(ErrorKind::InvalidArgument, "qubit count must be at least 1");
    }
    return StateSpec(Kind::MaximallyMixed, num_qubits);
}

StateSpec StateSpec::dense(DensityMatrix rho) {
    StateSpec s(Kind::Dense, rho.num_qubits());
    s.dense_ = std::move(rho);
    return s;
}

StateSpec StateSpec::bloch(BlochVector b) {
    StateSpec s(Kind::Bloch, b.num_qubits());
    s.bloch_ = std::move(b);
    return s;
}

BlochVector StateSpec::bloch_vector() const {
    switch (kind_) {
        case Kind::MaximallyMixed:
            return BlochVector(num_qubits_);
        case Kind::Bloch:
            return *bloch_;
        case Kind::Dense:
            return bloch_from_dense(*dense_);
        case Kind::NoisyDicke: {
            const Eigen::VectorXcd d = dicke_state(num_qubits_, excitations_);
            BlochVector pure = bloch_from_dense(DensityMatrix::pure(d));
            // The mixture's Bloch vector is (1 - p) b_D plus p times the identity-only vector.
            BlochVector out(num_qubits_);
            for (const PiIndex &idx : out.basis()) {
                if (!idx.is_identity()) {
                    out.set_value(idx, (1.0 - noise_) * pure.value(idx));
                }
            }
            return out;
        }
    }
    fail(ErrorKind::InvalidArgument, "unknown state kind");
}

DensityMatrix StateSpec::density_matrix() const {
    switch (kind_) {
        case Kind::MaximallyMixed:
            return DensityMatrix::maximally_mixed(num_qubits_);
        case Kind::Bloch:
            return dense_from_bloch(*bloch_);
        case Kind::Dense:
            return *dense_;
        case Kind::NoisyDicke: {
            const Eigen::VectorXcd d = dicke_state(num_qubits_, excitations_);
            const Eigen::Index dim = d.size();
            Operator rho = (1.0 - noise_) * (d * d.adjoint()) +
                           (noise_ / static_cast<double>(dim)) * Operator::Identity(dim, dim);
            return DensityMatrix(std::move(rho));
        }
    }
    fail(ErrorKind::InvalidArgument, "unknown state kind");
}

double OutcomeDistribution::string_probability(const std::string &bits) const {
    if (bits.size() != static_cast<std::size_t>(num_qubits)) {
        fail(ErrorKind::InvalidArgument, "bitstring length does not match the qubit count");
    }
    std::uint64_t index = 0;
    int ones = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            fail(ErrorKind::InvalidArgument, "bitstring may only contain 0 and 1");
        }
        index = (index << 1) | (c == '1' ? 1U : 0U);
        ones += c == '1';
    }
    if (by_class) {
        return probabilities[static_cast<std::size_t>(ones)] / binomial(num_qubits, ones);
    }
    return probabilities[index];
}

std::vector<double> OutcomeDistribution::class_probabilities() const {
    if (by_class) {
        return probabilities;
    }
    std::vector<double> out(static_cast<std::size_t>(num_qubits + 1), 0.0);
    for (std::size_t b = 0; b < probabilities.size(); ++b) {
        out[static_cast<std::size_t>(std::popcount(b))] += probabilities[b];
    }
    return out;
}

OutcomeDistribution outcome_distribution(const StateSpec &state, const Direction &a) {
    const int N = state.num_qubits();
    if (state.is_pi()) {
        return OutcomeDistribution{N, true, cleaned_probabilities(class_probabilities(state.bloch_vector(), a))};
    }
    Operator rotated = state.density_matrix().matrix();
    apply_local_unitary(rotated, measurement_basis(a).adjoint());
    std::vector<double> p(static_cast<std::size_t>(rotated.rows()));
    for (Eigen::Index b = 0; b < rotated.rows(); ++b) {
        p[static_cast<std::size_t>(b)] = rotated(b, b).real();
    }
    return OutcomeDistribution{N, false, cleaned_probabilities(std::move(p))};
}

SettingCounts sample_counts(const OutcomeDistribution &dist, double lambda, std::uint64_t seed, std::string id,
                            std::optional<Direction> direction) {
    if (!(lambda > 0) || !std::isfinite(lambda)) {
        fail(ErrorKind::InvalidArgument, "expected count lambda must be positive, got " + std::to_string(lambda));
    }
    const int N = dist.num_qubits;
    if (N > kSampleQubitLimit) {
        fail(ErrorKind::Capacity, "sampled bitstrings are limited to N <= " + std::to_string(kSampleQubitLimit));
    }
    std::mt19937_64 rng(seed);
    std::poisson_distribution<std::uint64_t> poisson(lambda);
    const std::uint64_t total = poisson(rng);

    SettingCounts out{std::move(id), direction, {}};
    if (!dist.by_class) {
        const auto &p = dist.probabilities;
        multinomial_split(total, p.size(), 1.0, [&p](std::size_t i) { return p[i]; }, rng,
                          [&](std::size_t i, std::uint64_t k) { out.outcomes[bits_of(i, N)] = k; });
        return out;
    }
    std::vector<std::uint64_t> class_counts(static_cast<std::size_t>(N + 1), 0);
    const auto &p = dist.probabilities;
    multinomial_split(total, p.size(), 1.0, [&p](std::size_t i) { return p[i]; }, rng,
                      [&](std::size_t w, std::uint64_t k) { class_counts[w] = k; });
    // Within a class the strings are equally likely.
    std::vector<std::vector<std::uint64_t>> strings(static_cast<std::size_t>(N + 1));
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << N); ++b) {
        strings[static_cast<std::size_t>(std::popcount(b))].push_back(b);
    }
    for (int w = 0; w <= N; ++w) {
        const auto &members = strings[static_cast<std::size_t>(w)];
        const double size = static_cast<double>(members.size());
        multinomial_split(class_counts[static_cast<std::size_t>(w)], members.size(), size,
                          [](std::size_t) { return 1.0; }, rng,
                          [&](std::size_t i, std::uint64_t k) { out.outcomes[bits_of(members[i], N)] = k; });
    }
    return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index));
}

CountData run_experiment(const StateSpec &state, const std::vector<std::pair<std::string, Direction>> &settings,
                         double lambda, std::uint64_t seed) {
    if (!(lambda > 0) || !std::isfinite(lambda)) {
        fail(ErrorKind::InvalidArgument, "expected count lambda must be positive, got " + std::to_string(lambda));
    }
    CountData data{state.num_qubits(), "simulated seed=" + std::to_string(seed), {}};
    for (std::size_t j = 0; j < settings.size(); ++j) {
        const auto &[id, a] = settings[j];
        data.settings.push_back(sample_counts(outcome_distribution(state, a), lambda, derive_seed(seed, j), id, a));
    }
    return data;
}

CountData run_experiment(const StateSpec &state, const Scheme &scheme, double lambda, std::uint64_t seed) {
    if (scheme.num_qubits() != state.num_qubits()) {
        fail(ErrorKind::InvalidArgument, "state has " + std::to_string(state.num_qubits()) + " qubits, scheme has " +
                                             std::to_string(scheme.num_qubits()));
    }
    std::vector<std::pair<std::string, Direction>> settings;
    for (std::size_t j = 0; j < scheme.num_settings(); ++j) {
        settings.emplace_back(Scheme::setting_id(j), scheme.direction(j));
    }
    return run_experiment(state, settings, lambda, seed);
}

ClassHistogram expected_histogram(const StateSpec &state, const Direction &a, double lambda) {
    if (!(lambda > 0)) {
        fail(ErrorKind::InvalidArgument, "expected count lambda must be positive");
    }
    ClassHistogram h{outcome_distribution(state, a).class_probabilities()};
    for (double &c : h.counts) {
        c *= lambda;
    }
    return h;
}

}  // namespace pitomo
