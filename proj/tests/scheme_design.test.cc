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

#include <gtest/gtest.h>

#include <random>

#include "oracles.h"
#include "pitomo/error_model.h"
#include "pitomo/errors.h"
#include "pitomo/hamming.h"
#include "pitomo/pi_algebra.h"
#include "pitomo/scheme.h"
#include "pitomo/scheme_design.h"

using namespace pitomo;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = g(rng);
        }
    }
    return m;
}

double weighted_objective(const Eigen::VectorXd &c, const Eigen::VectorXd &e) {
    return (e.array().square() * c.array().square()).sum();
}

}  // namespace

TEST(NumSettings, Formula) {
    EXPECT_EQ(num_settings(1), 3);
    EXPECT_EQ(num_settings(4), 15);
    EXPECT_EQ(num_settings(6), 28);
    EXPECT_EQ(num_settings(14), 120);
    for (int N = 1; N <= 20; ++N) {
        EXPECT_EQ(num_settings(N), (N * N + 3 * N + 2) / 2);
    }
}

TEST(SolveCoefficients, SquareSystemIsInverse) {
    std::mt19937_64 rng(41);
    const Eigen::MatrixXd V = random_matrix(5, 5, rng);
    const Eigen::VectorXd v = random_matrix(5, 1, rng);
    const Eigen::VectorXd e = Eigen::VectorXd::Constant(5, 0.3) + random_matrix(5, 1, rng).cwiseAbs();
    EXPECT_LT((solve_coefficients(V, e, v) - V.fullPivLu().solve(v)).norm(), 1e-9);
}

TEST(SolveCoefficients, UnitWeightsGiveMinimumNorm) {
    std::mt19937_64 rng(42);
    const Eigen::MatrixXd V = random_matrix(4, 9, rng);
    const Eigen::VectorXd v = random_matrix(4, 1, rng);
    const Eigen::VectorXd pinv = V.completeOrthogonalDecomposition().pseudoInverse() * v;
    EXPECT_LT((solve_coefficients(V, Eigen::VectorXd::Ones(9), v) - pinv).norm(), 1e-10);
}

TEST(SolveCoefficients, MatchesProjectedGradientMinimizer) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const int s = 1 + trial % 10;
        const int l = s + (trial * 7) % (21 - s);
        const Eigen::MatrixXd V = random_matrix(s, l, rng);
        const Eigen::VectorXd v = random_matrix(s, 1, rng);
        Eigen::VectorXd e(l);
        for (int j = 0; j < l; ++j) {
            e(j) = u(rng);
        }
        const Eigen::VectorXd c = solve_coefficients(V, e, v);
        const Eigen::VectorXd ref = oracle::constrained_minimizer(V, e, v);
        EXPECT_LE((V * c - v).norm(), 1e-9);
        EXPECT_NEAR(weighted_objective(c, e), weighted_objective(ref, e), 1e-7);
    }
}

TEST(SolveCoefficients, NullSpacePerturbationsIncreaseObjective) {
    std::mt19937_64 rng(44);
    const Eigen::MatrixXd V = random_matrix(6, 14, rng);
    const Eigen::VectorXd v = random_matrix(6, 1, rng);
    const Eigen::VectorXd e = Eigen::VectorXd::Constant(14, 0.2) + random_matrix(14, 1, rng).cwiseAbs();
    const Eigen::VectorXd c = solve_coefficients(V, e, v);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
    const Eigen::MatrixXd kernel = lu.kernel();
    for (int t = 0; t < 20; ++t) {
        const Eigen::VectorXd dir = kernel * random_matrix(kernel.cols(), 1, rng);
        EXPECT_GT(weighted_objective(c + 1e-3 * dir.normalized(), e), weighted_objective(c, e));
    }
}

TEST(SolveCoefficients, RankDeficiencyIsSingular) {
    Eigen::MatrixXd V(2, 3);
    V << 1, 2, 3, 2, 4, 6;
    try {
        solve_coefficients(V, Eigen::VectorXd(Eigen::VectorXd::Ones(3)), Eigen::VectorXd(Eigen::VectorXd::Ones(2)));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularSystem);
    }
}

TEST(BuildScheme, DegenerateDirectionsNameAClass) {
    std::vector<Direction> dirs(static_cast<std::size_t>(num_settings(2)), Direction(0, 0, 1));
    try {
        build_scheme(2, dirs, VarianceModel::white_noise(100));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularSystem);
        EXPECT_NE(std::string(e.what()).find(','), std::string::npos);
    }
}

TEST(BuildScheme, GenericDirectionsAreFeasible) {
    for (int N : {3, 4}) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto dirs = random_directions(static_cast<std::size_t>(num_settings(N)), seed);
            EXPECT_NO_THROW(build_scheme(N, dirs, VarianceModel::white_noise(100))) << N << " " << seed;
        }
    }
}

TEST(BuildScheme, CoefficientsInvertTheSettingExpansion) {
    const int N = 4;
    const Scheme s = build_scheme(N, init_directions(15, 9), VarianceModel::white_noise(2050));
    for (const auto &target : enumerate_basis(N)) {
        if (target.is_identity()) {
            continue;
        }
        const auto c = s.coefficients(target);
        std::map<PiIndex, double> sum;
        for (std::size_t j = 0; j < s.num_settings(); ++j) {
            for (const auto &[idx, coeff] : expand_setting(s.direction(j), target.n, N)) {
                sum[idx] += c[j] * coeff;
            }
        }
        for (const auto &[idx, value] : sum) {
            EXPECT_NEAR(value, idx == target ? 1.0 : 0.0, 1e-9) << target.key() << " " << idx.key();
        }
    }
}

TEST(BuildScheme, ExactMomentsReproduceTheBlochVector) {
    std::mt19937_64 rng(45);
    for (int N = 1; N <= 5; ++N) {
        const BlochVector b = bloch_from_dense(DensityMatrix(oracle::random_state(N, rng)));
        const Scheme s = build_scheme(N, random_directions(static_cast<std::size_t>(num_settings(N)), N),
                                      VarianceModel::state_based(b, 1000));
        std::vector<std::vector<double>> moments;
        for (const auto &a : s.directions()) {
            moments.push_back(setting_moments_from_bloch(b, a));
        }
        for (const auto &idx : b.basis()) {
            if (idx.is_identity()) {
                continue;
            }
            const auto c = s.coefficients(idx);
            double value = 0.0;
            for (std::size_t j = 0; j < s.num_settings(); ++j) {
                value += c[j] * moments[j][static_cast<std::size_t>(idx.n)];
            }
            EXPECT_NEAR(value, b.value(idx), 1e-9) << N << " " << idx.key();
        }
    }
}

TEST(FramePotential, Examples) {
    const std::vector<Direction> ortho{Direction(1, 0, 0), Direction(0, 1, 0)};
    const std::vector<Direction> same{Direction(0, 0, 1), Direction(0, 0, 1)};
    EXPECT_DOUBLE_EQ(frame_potential(ortho, 1), 2.0);
    EXPECT_DOUBLE_EQ(frame_potential(same, 1), 4.0);
}

TEST(FramePotential, IcosahedralAxesBeatRandomDraws) {
    const double phi = (1 + std::sqrt(5.0)) / 2;
    const std::vector<Direction> ico{
        Direction::normalized(0, 1, phi),  Direction::normalized(0, -1, phi), Direction::normalized(1, phi, 0),
        Direction::normalized(-1, phi, 0), Direction::normalized(phi, 0, 1), Direction::normalized(-phi, 0, 1)};
    const double ref = frame_potential(ico, 2);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        EXPECT_LT(ref, frame_potential(random_directions(6, seed), 2));
    }
}

TEST(InitDirections, Examples) {
    EXPECT_EQ(init_directions(1, 3).size(), 1U);
    const auto three = init_directions(3, 4);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            EXPECT_LT(std::abs(three[i].vector().dot(three[j].vector())), 0.9);
        }
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        // Same seed, same uniform start.
        EXPECT_LE(frame_potential(init_directions(15, seed), 2), frame_potential(random_directions(15, seed), 2));
    }
    const auto a = init_directions(15, 77);
    const auto b = init_directions(15, 77);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].vector(), b[i].vector());
    }
}

TEST(Canonicalize, UpperHemisphere) {
    EXPECT_EQ(canonicalize(Direction(0, 0, -1)).vector(), Eigen::Vector3d(0, 0, 1));
    EXPECT_EQ(canonicalize(Direction(0, -1, 0)).vector(), Eigen::Vector3d(0, 1, 0));
    EXPECT_EQ(canonicalize(Direction(-1, 0, 0)).vector(), Eigen::Vector3d(1, 0, 0));
    const Direction d = Direction::normalized(0.3, 0.4, 0.5);
    EXPECT_EQ(canonicalize(d).vector(), d.vector());
}

TEST(OptimizeScheme, FeasibleMonotoneAndDeterministic) {
    const auto model = VarianceModel::white_noise(2050);
    OptimizeOptions opts;
    opts.seed = 3;
    opts.budget = 4000;
    const OptimizationResult r = optimize_scheme(4, model, opts);
    EXPECT_EQ(r.scheme.num_settings(), 15U);
    EXPECT_LE(r.objective, r.initial_objective);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        EXPECT_LE(r.trace[i], r.trace[i - 1]);
    }
    for (const auto &a : r.scheme.directions()) {
        EXPECT_GE(a.z(), 0.0);
    }
    EXPECT_NEAR(e_total(r.scheme, model), r.objective, 1e-12 * r.objective);
    const OptimizationResult again = optimize_scheme(4, model, opts);
    EXPECT_EQ(again.objective, r.objective);
    for (std::size_t j = 0; j < 15; ++j) {
        EXPECT_EQ(again.scheme.direction(j).vector(), r.scheme.direction(j).vector());
    }
}

TEST(OptimizeScheme, ObjectiveVariantsNearlyAgree) {
    const auto model = VarianceModel::white_noise(2050);
    OptimizeOptions full;
    full.objective = Objective::FullCorrelations;
    full.budget = 4000;
    OptimizeOptions all;
    all.budget = 4000;
    const Scheme a = optimize_scheme(4, model, full).scheme;
    const Scheme b = optimize_scheme(4, model, all).scheme;
    const double ea = e_total(a, model);
    const double eb = e_total(b, model);
    // Either choice of objective lands within a few percent on the all-elements total.
    EXPECT_LT(std::abs(ea - eb) / eb, 0.1);
}
