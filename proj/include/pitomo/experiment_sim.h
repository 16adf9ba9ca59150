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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pitomo/dense.h"
#include "pitomo/hamming.h"
#include "pitomo/pi_basis.h"
#include "pitomo/reconstruction.h"
#include "pitomo/scheme.h"

namespace pitomo {

/// Largest N for which sampled counts are written as explicit bitstrings.
inline constexpr int kSampleQubitLimit = 20;

/// A state to simulate. Every kind except Dense is PI and is simulated through its
/// Bloch vector.
class StateSpec {
   public:
    enum class Kind { NoisyDicke, MaximallyMixed, Dense, Bloch };

    /// p * 1/2^N + (1 - p) |D_N^(e)><D_N^(e)|.
    static StateSpec dicke(int num_qubits, int excitations, double noise = 0.0);
    static StateSpec maximally_mixed(int num_qubits);
    static StateSpec dense(DensityMatrix rho);
    static StateSpec bloch(BlochVector b);

    Kind kind() const {
        return kind_;
    }
    int num_qubits() const {
        return num_qubits_;
    }
    bool is_pi() const {
        return kind_ != Kind::Dense;
    }
    int excitations() const {
        return excitations_;
    }
    double noise() const {
        return noise_;
    }
    /// Bloch vector of the twirled state.
    BlochVector bloch_vector() const;
    /// Dense matrix (subject to the dense capacity guard).
    DensityMatrix density_matrix() const;

   private:
    StateSpec(Kind kind, int num_qubits) : kind_(kind), num_qubits_(num_qubits) {}

    Kind kind_;
    int num_qubits_;
    int excitations_ = 0;
    double noise_ = 0.0;
    std::optional<DensityMatrix> dense_;
    std::optional<BlochVector> bloch_;
};

/// Outcome probabilities of measuring A = a.sigma on every qubit. When by_class is set,
/// probabilities[w] is the total probability of the 0/1 strings with w ones, spread
/// evenly over them; otherwise probabilities[b] belongs to the string of index b
/// (qubit 1 is the most significant bit).
struct OutcomeDistribution {
    int num_qubits = 0;
    bool by_class = false;
    std::vector<double> probabilities;

    double string_probability(const std::string &bits) const;
    std::vector<double> class_probabilities() const;
};

OutcomeDistribution outcome_distribution(const StateSpec &state, const Direction &a);

/// Total ~ Poisson(lambda), then a multinomial split over outcome strings.
/// Deterministic in seed.
SettingCounts sample_counts(const OutcomeDistribution &dist, double lambda, std::uint64_t seed,
                            std::string id = {}, std::optional<Direction> direction = {});

/// Seed of substream `index`, so that adding settings never changes earlier streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// One record per scheme setting with ids Scheme::setting_id(j); substream j uses
/// derive_seed(seed, j).
CountData run_experiment(const StateSpec &state, const Scheme &scheme, double lambda, std::uint64_t seed);
CountData run_experiment(const StateSpec &state, const std::vector<std::pair<std::string, Direction>> &settings,
                         double lambda, std::uint64_t seed);

/// lambda * P(w): the class histogram of noiseless data.
ClassHistogram expected_histogram(const StateSpec &state, const Direction &a, double lambda);

}  // namespace pitomo
