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
#include <set>

#include "oracles.h"
#include "pitomo/errors.h"
#include "pitomo/pi_algebra.h"
#include "pitomo/pi_basis.h"

using namespace pitomo;

namespace {

DensityMatrix as_state(const Operator &m) {
    return DensityMatrix(m);
}

}  // namespace

TEST(PiBasis, SizesMatchBruteForceCounting) {
    EXPECT_EQ(enumerate_basis(1).size(), 4U);
    EXPECT_EQ(enumerate_basis(4).size(), 35U);
    for (int N = 1; N <= 8; ++N) {
        std::size_t count = 0;
        for (int k = 0; k <= N; ++k) {
            for (int l = 0; k + l <= N; ++l) {
                for (int m = 0; k + l + m <= N; ++m) {
                    ++count;
                }
            }
        }
        EXPECT_EQ(enumerate_basis(N).size(), count) << N;
        EXPECT_EQ(basis_size(N), count);
    }
    EXPECT_EQ(enumerate_basis(2).size(), 10U);
    const auto b4 = enumerate_basis(4);
    EXPECT_EQ(std::count_if(b4.begin(), b4.end(), [](const PiIndex &i) { return !i.is_identity(); }), 34);
}

TEST(PiBasis, OrderIsLexicographicAndPositionsAgree) {
    for (int N = 1; N <= 7; ++N) {
        const auto basis = enumerate_basis(N);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            EXPECT_EQ(basis[i].num_qubits(), N);
            EXPECT_EQ(basis_position(basis[i]), i);
            if (i > 0) {
                EXPECT_LT(std::tie(basis[i - 1].k, basis[i - 1].l, basis[i - 1].m),
                          std::tie(basis[i].k, basis[i].l, basis[i].m));
            }
        }
    }
}

TEST(PiBasis, RejectsNonPositiveQubitCount) {
    EXPECT_THROW(enumerate_basis(0), Error);
    EXPECT_THROW(enumerate_basis(-2), Error);
}

TEST(PiBasis, MultiplicityCountsDistinctStrings) {
    EXPECT_EQ(multiplicity({0, 0, 4, 0}), 1U);
    EXPECT_EQ(multiplicity({1, 1, 1, 1}), 24U);
    EXPECT_EQ(multiplicity({2, 1, 1, 0}), 12U);
    EXPECT_EQ(oracle::distinct_arrangements(2, 1, 1, 0), 12);
    for (const auto &idx : enumerate_basis(5)) {
        EXPECT_EQ(multiplicity(idx), static_cast<std::uint64_t>(oracle::distinct_arrangements(idx.k, idx.l, idx.m, idx.n)));
    }
}

TEST(PiBasis, MultiplicitiesPartitionAllPauliStrings) {
    for (int N = 1; N <= 6; ++N) {
        std::uint64_t total = 0;
        for (const auto &idx : enumerate_basis(N)) {
            total += multiplicity(idx);
        }
        EXPECT_EQ(total, std::uint64_t{1} << (2 * N));
    }
}

TEST(PiBasis, KeysRoundTrip) {
    for (const auto &idx : enumerate_basis(4)) {
        EXPECT_EQ(PiIndex::parse_key(idx.key()), idx);
    }
    EXPECT_THROW(PiIndex::parse_key("1,2,x,0"), Error);
}

TEST(Direction, RequiresUnitLength) {
    EXPECT_NO_THROW(Direction(0, 0, 1));
    EXPECT_THROW(Direction(0, 0, 1.01), Error);
    EXPECT_THROW(Direction::normalized(0, 0, 0), Error);
    const Direction d = Direction::normalized(1, 1, 0);
    EXPECT_NEAR(d.x(), std::sqrt(0.5), 1e-15);
}

TEST(ExpandSetting, ZAxisIsSingleClass) {
    const auto e = expand_setting(Direction(0, 0, 1), 0, 4);
    ASSERT_EQ(e.size(), 1U);
    EXPECT_DOUBLE_EQ(e.at(PiIndex{0, 0, 4, 0}), 1.0);
}

TEST(ExpandSetting, DiagonalDirectionOnTwoQubits) {
    const auto e = expand_setting(Direction::normalized(1, 1, 0), 0, 2);
    EXPECT_NEAR(e.at(PiIndex{2, 0, 0, 0}), 0.5, 1e-15);
    EXPECT_NEAR(e.at(PiIndex{0, 2, 0, 0}), 0.5, 1e-15);
    EXPECT_NEAR(e.at(PiIndex{1, 1, 0, 0}), 1.0, 1e-15);
    EXPECT_EQ(e.size(), 3U);
}

TEST(ExpandSetting, ReproducesDenseSymmetrizedSetting) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int N = 1 + trial % 5;
        const Eigen::Vector3d v = oracle::random_unit(rng);
        const Direction a = Direction::normalized(v);
        const oracle::Mat A = v.x() * oracle::single('X') + v.y() * oracle::single('Y') + v.z() * oracle::single('Z');
        for (int n = 0; n < N; ++n) {
            const oracle::Mat target =
                oracle::twirl(oracle::kron(oracle::kron_power(A, N - n), oracle::kron_power(oracle::single('I'), n)), N);
            oracle::Mat sum = oracle::Mat::Zero(target.rows(), target.cols());
            for (const auto &[idx, c] : expand_setting(a, n, N)) {
                sum += c * oracle::pi_class_op(idx.k, idx.l, idx.m, idx.n);
            }
            EXPECT_LT((sum - target).cwiseAbs().maxCoeff(), 1e-10) << "N=" << N << " n=" << n;
        }
    }
}

TEST(ExpandSetting, RejectsIdentityOnlySetting) {
    EXPECT_THROW(expand_setting(Direction(0, 0, 1), 3, 3), Error);
    EXPECT_THROW(expand_setting(Direction(0, 0, 1), -1, 3), Error);
}

TEST(DenseBasisOp, SmallCases) {
    EXPECT_LT((dense_basis_op({0, 0, 0, 2}) - Operator::Identity(4, 4)).norm(), 1e-15);
    const oracle::Mat xy = (oracle::pauli_string("XY") + oracle::pauli_string("YX")) / 2.0;
    EXPECT_LT((dense_basis_op({1, 1, 0, 0}) - xy).norm(), 1e-15);
}

TEST(DenseBasisOp, MatchesStringAverageAndNorm) {
    const Operator b = dense_basis_op({2, 1, 1, 0});
    EXPECT_LT((b - oracle::pi_class_op(2, 1, 1, 0)).norm(), 1e-12);
    // Distinct strings are trace-orthogonal: Tr(B^2) = 2^N / multiplicity.
    EXPECT_NEAR((b * b).trace().real(), 16.0 / 12.0, 1e-12);
    for (const auto &idx : enumerate_basis(3)) {
        EXPECT_LT((dense_basis_op(idx) - oracle::pi_class_op(idx.k, idx.l, idx.m, idx.n)).norm(), 1e-12);
    }
}

TEST(DenseBasisOp, HermitianBoundedAndTraceOrthogonal) {
    const auto basis = enumerate_basis(3);
    std::vector<Operator> ops;
    for (const auto &idx : basis) {
        ops.push_back(dense_basis_op(idx));
    }
    for (std::size_t i = 0; i < ops.size(); ++i) {
        EXPECT_LT((ops[i] - ops[i].adjoint()).norm(), 1e-14);
        Eigen::SelfAdjointEigenSolver<Operator> es(ops[i]);
        EXPECT_GE(es.eigenvalues().minCoeff(), -1 - 1e-12);
        EXPECT_LE(es.eigenvalues().maxCoeff(), 1 + 1e-12);
        EXPECT_NEAR(std::abs(ops[i].trace()), basis[i].is_identity() ? 8.0 : 0.0, 1e-12);
        for (std::size_t j = i + 1; j < ops.size(); ++j) {
            EXPECT_LT(std::abs((ops[i] * ops[j]).trace()), 1e-12);
        }
    }
}

TEST(DenseBasisOp, CapacityGuard) {
    EXPECT_THROW(dense_basis_op({11, 0, 0, 0}), Error);
    try {
        dense_basis_op({11, 0, 0, 0});
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Capacity);
    }
}

TEST(PiTwirl, SwapAverageOnTwoQubits) {
    Operator rho = Operator::Zero(4, 4);
    rho(1, 1) = 1.0;  // |01>
    const DensityMatrix t = pi_twirl(as_state(rho));
    Operator expected = Operator::Zero(4, 4);
    expected(1, 1) = 0.5;
    expected(2, 2) = 0.5;
    EXPECT_LT((t.matrix() - expected).norm(), 1e-14);
}

TEST(PiTwirl, DickeProjectorsAreFixed) {
    for (int e = 0; e <= 4; ++e) {
        const DensityMatrix d = DensityMatrix::pure(dicke_state(4, e));
        EXPECT_LT((pi_twirl(d).matrix() - d.matrix()).norm(), 1e-12);
    }
}

TEST(PiTwirl, BothPathsMatchExplicitPermutationSum) {
    std::mt19937_64 rng(5);
    for (int N = 1; N <= 4; ++N) {
        const oracle::Mat rho = oracle::random_state(N, rng);
        const oracle::Mat ref = oracle::twirl(rho, N);
        EXPECT_LT((pi_twirl(as_state(rho)).matrix() - ref).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((pi_twirl_by_permutations(as_state(rho)).matrix() - ref).cwiseAbs().maxCoeff(), 1e-10);
    }
    const oracle::Mat rho6 = oracle::random_state(6, rng);
    EXPECT_LT((pi_twirl(as_state(rho6)).matrix() - pi_twirl_by_permutations(as_state(rho6)).matrix())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
}

TEST(PiTwirl, IsProjectionThatNeverIncreasesPurity) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const oracle::Mat rho = oracle::random_state(3, rng);
        const DensityMatrix t = pi_twirl(as_state(rho));
        EXPECT_LT((pi_twirl(t).matrix() - t.matrix()).norm(), 1e-12);
        EXPECT_NEAR(t.trace(), 1.0, 1e-12);
        EXPECT_LT((t.matrix() - t.matrix().adjoint()).norm(), 1e-14);
        EXPECT_LE((t.matrix() * t.matrix()).trace().real(), (rho * rho).trace().real() + 1e-12);
    }
}

TEST(PiTwirl, NonHermitianInputRejected) {
    Operator m = Operator::Zero(4, 4);
    m(0, 1) = 1.0;
    EXPECT_THROW(DensityMatrix{m}, Error);
}

TEST(BlochConversion, MaximallyMixed) {
    const DensityMatrix rho = dense_from_bloch(BlochVector(3));
    EXPECT_LT((rho.matrix() - Operator::Identity(8, 8) / 8.0).norm(), 1e-15);
}

TEST(BlochConversion, TwoQubitDicke) {
    const BlochVector b = bloch_from_dense(DensityMatrix::pure(dicke_state(2, 1)));
    EXPECT_NEAR(b.value({0, 0, 0, 2}), 1.0, 1e-14);
    EXPECT_NEAR(b.value({2, 0, 0, 0}), 1.0, 1e-14);
    EXPECT_NEAR(b.value({0, 2, 0, 0}), 1.0, 1e-14);
    EXPECT_NEAR(b.value({0, 0, 2, 0}), -1.0, 1e-14);
    const oracle::Mat rho = DensityMatrix::pure(dicke_state(2, 1)).matrix();
    for (const auto &idx : b.basis()) {
        EXPECT_NEAR(b.value(idx), (rho * oracle::pi_class_op(idx.k, idx.l, idx.m, idx.n)).trace().real(), 1e-14);
    }
}

TEST(BlochConversion, RoundTripAndTwirlConsistency) {
    std::mt19937_64 rng(7);
    for (int N = 1; N <= 5; ++N) {
        const oracle::Mat rho = oracle::random_state(N, rng);
        const BlochVector b = bloch_from_dense(as_state(rho));
        const BlochVector bt = bloch_from_dense(pi_twirl(as_state(rho)));
        for (std::size_t i = 0; i < b.size(); ++i) {
            EXPECT_NEAR(b.values()[i], bt.values()[i], 1e-12);
        }
        const DensityMatrix back = dense_from_bloch(b);
        EXPECT_LT((back.matrix() - oracle::twirl(rho, N)).cwiseAbs().maxCoeff(), 1e-10);
        const BlochVector again = bloch_from_dense(back);
        for (std::size_t i = 0; i < b.size(); ++i) {
            EXPECT_NEAR(again.values()[i], b.values()[i], 1e-10);
        }
        // Explicit expansion with the reference class operators.
        oracle::Mat sum = oracle::Mat::Zero(rho.rows(), rho.cols());
        for (const auto &idx : b.basis()) {
            sum += static_cast<double>(multiplicity(idx)) * b.value(idx) *
                   oracle::pi_class_op(idx.k, idx.l, idx.m, idx.n);
        }
        sum /= static_cast<double>(rho.rows());
        EXPECT_LT((sum - back.matrix()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(DickeAndCollective, StatesAndProjector) {
    Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(4);
    expected(1) = expected(2) = 1.0 / std::sqrt(2.0);
    EXPECT_LT((dicke_state(2, 1) - expected).norm(), 1e-15);
    EXPECT_THROW(dicke_state(3, 4), Error);
    EXPECT_THROW(dicke_state(3, -1), Error);
    const Operator p = symmetric_projector(4);
    EXPECT_NEAR(p.trace().real(), 5.0, 1e-12);
    EXPECT_LT((p * p - p).norm(), 1e-12);
    EXPECT_LT((p - oracle::symmetric_projector(4)).norm(), 1e-12);
    for (int e = 0; e <= 5; ++e) {
        EXPECT_LT((dicke_state(5, e) - oracle::dicke(5, e)).norm(), 1e-14);
    }
}

TEST(DickeAndCollective, SpinExpectations) {
    const Eigen::VectorXcd d = dicke_state(4, 2);
    auto ev = [&](const Operator &op) { return (d.adjoint() * op * d)(0, 0).real(); };
    EXPECT_NEAR(ev(collective_op(4, Axis::Z, 1)), 0.0, 1e-14);
    EXPECT_NEAR(ev(collective_op(4, Axis::X, 2) + collective_op(4, Axis::Y, 2) + collective_op(4, Axis::Z, 2)), 6.0,
                1e-12);
    for (char axis : {'X', 'Y', 'Z'}) {
        const Axis a = axis == 'X' ? Axis::X : axis == 'Y' ? Axis::Y : Axis::Z;
        for (int p = 0; p <= 4; ++p) {
            EXPECT_LT((collective_op(3, a, p) - oracle::collective(axis, 3, p)).norm(), 1e-12) << axis << p;
        }
    }
}

TEST(DickeAndCollective, SymmetricOperatorsCannotSeeTheTwirl) {
    std::mt19937_64 rng(8);
    const Operator S = collective_op(4, Axis::X, 2) * collective_op(4, Axis::Z, 1) +
                       collective_op(4, Axis::Z, 1) * collective_op(4, Axis::X, 2) + collective_op(4, Axis::Y, 4);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = as_state(oracle::random_state(4, rng));
        EXPECT_LT(std::abs(rho.expectation(S) - pi_twirl(rho).expectation(S)), 1e-10);
    }
}
