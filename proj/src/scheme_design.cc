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

#include "pitomo/scheme_design.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "pitomo/errors.h"
#include "pitomo/pi_algebra.h"

namespace pitomo {

namespace {

constexpr double kMinRcond = 1e-13;

std::vector<PiIndex> block_classes(int n, int num_qubits) {
    std::vector<PiIndex> out;
    const int w = num_qubits - n;
    for (int k = 0; k <= w; ++k) {
        for (int l = 0; k + l <= w; ++l) {
            out.push_back(PiIndex{k, l, w - k - l, n});
        }
    }
    return out;
}

// Coefficients for every class of identity count n: column i of the result is the
// coefficient vector of class block_classes(n)[i].
Eigen::MatrixXd block_coefficients(std::span<const Direction> directions, int n, int num_qubits,
                                   const Eigen::VectorXd &variances) {
    Eigen::MatrixXd V = design_matrix(directions, n, num_qubits);
    // Row equilibration: scaling row i of V and target i together leaves c unchanged
    // but keeps V E^-2 V^T well conditioned for large N.
    Eigen::VectorXd scale = V.rowwise().norm().cwiseInverse();
    Eigen::MatrixXd Vs = scale.asDiagonal() * V;
    Eigen::MatrixXd targets = scale.asDiagonal().toDenseMatrix();
    // A setting whose moment is deterministic in the prior has zero variance; floor it so
    // E stays invertible.
    const double floor = std::max(variances.maxCoeff(), 1e-300) * 1e-12;
    Eigen::VectorXd weights = variances.cwiseMax(floor).cwiseSqrt();
    try {
        return solve_coefficients(Vs, weights, targets);
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::SingularSystem) {
            throw;
        }
        Eigen::VectorXd winv2 = weights.array().square().inverse();
        Eigen::MatrixXd G = Vs * winv2.asDiagonal() * Vs.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
        Eigen::Index worst = 0;
        es.eigenvectors().col(0).cwiseAbs().maxCoeff(&worst);
        fail(ErrorKind::SingularSystem, "direction set cannot resolve class " +
                                            block_classes(n, num_qubits)[static_cast<std::size_t>(worst)].key() +
                                            " (degenerate directions)");
    }
}

Eigen::VectorXd variance_column(const std::vector<std::vector<double>> &table, int n) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(table.size()));
    for (std::size_t j = 0; j < table.size(); ++j) {
        out(static_cast<Eigen::Index>(j)) = table[j][static_cast<std::size_t>(n)];
    }
    return out;
}

Direction rotate(const Direction &v, const Eigen::Vector3d &axis, double angle) {
    const Eigen::Vector3d &x = v.vector();
    Eigen::Vector3d r =
        x * std::cos(angle) + axis.cross(x) * std::sin(angle) + axis * axis.dot(x) * (1 - std::cos(angle));
    return Direction::normalized(r);
}

Eigen::Vector3d random_unit(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    while (true) {
        Eigen::Vector3d v(normal(rng), normal(rng), normal(rng));
        double norm = v.norm();
        if (norm > 1e-12) {
            return v / norm;
        }
    }
}

void check_direction_count(int num_qubits, std::size_t count) {
    if (count != static_cast<std::size_t>(num_settings(num_qubits))) {
        fail(ErrorKind::InvalidArgument, "a " + std::to_string(num_qubits) + "-qubit scheme needs " +
                                             std::to_string(num_settings(num_qubits)) + " directions, got " +
                                             std::to_string(count));
    }
}

}  // namespace

Eigen::MatrixXd solve_coefficients(const Eigen::MatrixXd &V, const Eigen::VectorXd &weights,
                                   const Eigen::MatrixXd &targets) {
    if (weights.size() != V.cols()) {
        fail(ErrorKind::InvalidArgument, "weight vector length must equal the number of columns of V");
    }
    if (targets.rows() != V.rows()) {
        fail(ErrorKind::InvalidArgument, "target length must equal the number of rows of V");
    }
    if (!(weights.array() > 0).all() || !weights.allFinite()) {
        fail(ErrorKind::InvalidArgument, "weights must be positive and finite");
    }
    Eigen::VectorXd winv2 = weights.array().square().inverse();
    Eigen::MatrixXd G = V * winv2.asDiagonal() * V.transpose();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
    if (ldlt.info() != Eigen::Success || !(ldlt.rcond() > kMinRcond) || !ldlt.isPositive()) {
        fail(ErrorKind::SingularSystem, "V E^-2 V^T is rank deficient");
    }
    Eigen::MatrixXd Y = ldlt.solve(targets);
    Eigen::MatrixXd C = winv2.asDiagonal() * V.transpose() * Y;
    double residual = (V * C - targets).cwiseAbs().maxCoeff();
    if (!(residual <= 1e-9 * std::max(1.0, targets.cwiseAbs().maxCoeff()))) {
        fail(ErrorKind::SingularSystem, "coefficient solve is numerically unstable (residual " +
                                            std::to_string(residual) + ")");
    }
    return C;
}

Eigen::VectorXd solve_coefficients(const Eigen::MatrixXd &V, const Eigen::VectorXd &weights,
                                   const Eigen::VectorXd &v) {
    return solve_coefficients(V, weights, Eigen::MatrixXd(v)).col(0);
}

Eigen::MatrixXd design_matrix(std::span<const Direction> directions, int n, int num_qubits) {
    const int w = num_qubits - n;
    const auto rows = static_cast<Eigen::Index>((w + 1) * (w + 2) / 2);
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(directions.size()));
    // Row of (k, l) within the block, matching block_classes order.
    auto row_of = [w](const PiIndex &idx) {
        return static_cast<Eigen::Index>(idx.k * (w + 1) - idx.k * (idx.k - 1) / 2 + idx.l);
    };
    for (std::size_t j = 0; j < directions.size(); ++j) {
        for (const auto &[idx, coeff] : expand_setting(directions[j], n, num_qubits)) {
            V(row_of(idx), static_cast<Eigen::Index>(j)) = coeff;
        }
    }
    return V;
}

Scheme build_scheme(int num_qubits, std::vector<Direction> directions, const VarianceModel &model) {
    check_direction_count(num_qubits, directions.size());
    const auto table = setting_variance_table(directions, num_qubits, model);
    const std::size_t D = directions.size();
    std::vector<std::vector<double>> coefficients(basis_size(num_qubits), std::vector<double>(D, 0.0));
    for (int n = 0; n < num_qubits; ++n) {
        Eigen::MatrixXd C = block_coefficients(directions, n, num_qubits, variance_column(table, n));
        const auto classes = block_classes(n, num_qubits);
        for (std::size_t i = 0; i < classes.size(); ++i) {
            auto &row = coefficients[basis_position(classes[i])];
            for (std::size_t j = 0; j < D; ++j) {
                row[j] = C(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
            }
        }
    }
    // The identity element is 1 for every setting; equal weights give c_j = 1/D.
    coefficients[basis_position(PiIndex{0, 0, 0, num_qubits})].assign(D, 1.0 / static_cast<double>(D));
    return Scheme(num_qubits, std::move(directions), std::move(coefficients), model.lambda());
}

double scheme_objective(int num_qubits, std::span<const Direction> directions, const VarianceModel &model,
                        Objective objective) {
    check_direction_count(num_qubits, directions.size());
    const auto table = setting_variance_table(directions, num_qubits, model);
    const int last_n = objective == Objective::FullCorrelations ? 0 : num_qubits - 1;
    double total = 0.0;
    for (int n = 0; n <= last_n; ++n) {
        Eigen::VectorXd vars = variance_column(table, n);
        Eigen::MatrixXd C = block_coefficients(directions, n, num_qubits, vars);
        const auto classes = block_classes(n, num_qubits);
        Eigen::VectorXd element = C.array().square().matrix().transpose() * vars;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            total += static_cast<double>(multiplicity(classes[i])) * element(static_cast<Eigen::Index>(i));
        }
    }
    return total;
}

double frame_potential(std::span<const Direction> directions, int m) {
    if (m < 1) {
        fail(ErrorKind::InvalidArgument, "frame potential exponent must be positive");
    }
    double total = 0.0;
    for (const auto &a : directions) {
        for (const auto &b : directions) {
            total += std::pow(a.vector().dot(b.vector()), 2 * m);
        }
    }
    return total;
}

std::vector<Direction> random_directions(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Direction> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(Direction::normalized(random_unit(rng)));
    }
    return out;
}

std::vector<Direction> init_directions(std::size_t count, std::uint64_t seed) {
    if (count < 1) {
        fail(ErrorKind::InvalidArgument, "need at least one direction");
    }
    constexpr int m = 2;
    std::vector<Direction> dirs = random_directions(count, seed);
    double potential = frame_potential(dirs, m);
    double step = 0.1;
    for (int iter = 0; iter < 5000 && step > 1e-12; ++iter) {
        std::vector<Direction> next;
        next.reserve(count);
        for (std::size_t k = 0; k < count; ++k) {
            const Eigen::Vector3d &v = dirs[k].vector();
            Eigen::Vector3d g = Eigen::Vector3d::Zero();
            for (std::size_t l = 0; l < count; ++l) {
                if (l != k) {
                    const Eigen::Vector3d &u = dirs[l].vector();
                    g += 4.0 * m * std::pow(v.dot(u), 2 * m - 1) * u;
                }
            }
            g -= g.dot(v) * v;
            next.push_back(Direction::normalized(v - step * g));
        }
        double candidate = frame_potential(next, m);
        if (candidate < potential) {
            bool converged = potential - candidate < 1e-14 * potential;
            dirs = std::move(next);
            potential = candidate;
            step *= 1.2;
            if (converged) {
                break;
            }
        } else {
            step *= 0.5;
        }
    }
    return dirs;
}

Direction canonicalize(const Direction &a) {
    if (a.z() > 0) {
        return a;
    }
    if (a.z() < 0) {
        return -a;
    }
    if (a.y() > 0) {
        return a;
    }
    if (a.y() < 0) {
        return -a;
    }
    return a.x() >= 0 ? a : -a;
}

OptimizationResult optimize_scheme(int num_qubits, const VarianceModel &model, const OptimizeOptions &options) {
    const auto D = static_cast<std::size_t>(num_settings(num_qubits));
    std::mt19937_64 rng(options.seed);
    auto objective = [&](std::span<const Direction> dirs) {
        return scheme_objective(num_qubits, dirs, model, options.objective);
    };

    std::vector<Direction> dirs;
    double current = 0.0;
    bool have_start = false;
    for (int attempt = 0; attempt < 20 && !have_start; ++attempt) {
        dirs = init_directions(D, rng());
        try {
            current = objective(dirs);
            have_start = true;
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::SingularSystem) {
                throw;
            }
        }
    }
    if (!have_start) {
        fail(ErrorKind::OptimizationFailed, "no initial direction set gave a solvable scheme");
    }

    std::vector<double> trace{current};
    const double initial = current;
    double angle = 0.1;
    std::size_t rejections = 0;
    std::size_t iterations = 0;
    std::size_t accepted = 0;
    std::uniform_int_distribution<std::size_t> pick(0, D - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    while (iterations < options.budget) {
        ++iterations;
        const std::size_t j = pick(rng);
        const Eigen::Vector3d axis = random_unit(rng);
        const double theta = angle * unit(rng);
        std::vector<Direction> candidate = dirs;
        candidate[j] = rotate(dirs[j], axis, theta);
        double value = current;
        bool ok = true;
        try {
            value = objective(candidate);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::SingularSystem) {
                throw;
            }
            ok = false;
        }
        if (ok && value < current) {
            dirs = std::move(candidate);
            current = value;
            trace.push_back(current);
            ++accepted;
            rejections = 0;
            if (trace.size() > 500) {
                double before = trace[trace.size() - 501];
                if ((before - current) / before < 1e-6) {
                    break;
                }
            }
        } else if (++rejections >= 200) {
            angle = std::max(angle / 2, 1e-4);
            rejections = 0;
        }
    }

    for (auto &d : dirs) {
        d = canonicalize(d);
    }
    Scheme scheme = build_scheme(num_qubits, dirs, model);
    const double final_value = objective(scheme.directions());
    return OptimizationResult{std::move(scheme), initial, final_value, std::move(trace), iterations, accepted};
}

}  // namespace pitomo
