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

#include "pitomo/analysis.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "pitomo/errors.h"
#include "pitomo/pi_algebra.h"

namespace pitomo {

namespace {

constexpr Axis kAxes[] = {Axis::X, Axis::Y, Axis::Z};

double spin_eigenvalue_power(int num_qubits, int w, int power) {
    return std::pow(0.5 * (num_qubits - 2 * w), power);
}

bool matches_axis(const SettingCounts &s, Axis axis) {
    if (s.direction) {
        Eigen::Vector3d target = Eigen::Vector3d::Zero();
        target[static_cast<int>(axis)] = 1.0;
        return (s.direction->vector() - target).norm() <= 1e-9;
    }
    return s.id.size() == 1 && std::tolower(static_cast<unsigned char>(s.id[0])) == axis_name(axis)[0];
}

void require_qubits(const JMoments &moments, int num_qubits, const char *what) {
    if (moments.num_qubits() != num_qubits) {
        fail(ErrorKind::UnsupportedSize, std::string(what) + " is defined for N=" + std::to_string(num_qubits) +
                                             ", moments are for N=" + std::to_string(moments.num_qubits()));
    }
}

// Exact C(n, k) for n <= 62 from a Pascal row.
std::uint64_t exact_binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    std::vector<std::uint64_t> row(static_cast<std::size_t>(n + 1), 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j > 0; --j) {
            row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
        }
    }
    return row[static_cast<std::size_t>(k)];
}

// Square root of a state after checking it is one. Eigenvalues at rounding-noise level
// are zeroed: their square roots would otherwise be ~1e-8.
Operator checked_state_sqrt(const DensityMatrix &rho, const char *name) {
    constexpr double tol = 1e-8;
    if (std::abs(rho.trace() - 1.0) > tol) {
        fail(ErrorKind::InvalidArgument, std::string(name) + " does not have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<Operator> es(rho.matrix());
    const Eigen::VectorXd &ev = es.eigenvalues();
    if (ev.minCoeff() < -tol) {
        fail(ErrorKind::InvalidArgument, std::string(name) + " is not positive semidefinite (eigenvalue " +
                                             std::to_string(ev.minCoeff()) + ")");
    }
    const double noise = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, ev.cwiseAbs().maxCoeff());
    const Eigen::VectorXd roots = ev.unaryExpr([noise](double x) { return x > noise ? std::sqrt(x) : 0.0; });
    return es.eigenvectors() * roots.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

JMoments::JMoments(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) {
        fail(ErrorKind::InvalidArgument, "qubit count must be at least 1");
    }
}

void JMoments::set(Axis axis, int power, Estimate value) {
    if (power < 1) {
        fail(ErrorKind::InvalidArgument, "moment power must be positive");
    }
    moments_[{axis, power}] = value;
}

bool JMoments::has(Axis axis, int power) const {
    return moments_.contains({axis, power});
}

const Estimate &JMoments::get(Axis axis, int power) const {
    auto it = moments_.find({axis, power});
    if (it == moments_.end()) {
        fail(ErrorKind::IncompleteData,
             "missing moment <J" + std::string(axis_name(axis)) + "^" + std::to_string(power) + ">");
    }
    return it->second;
}

const ClassHistogram &AxisHistograms::operator[](Axis axis) const {
    switch (axis) {
        case Axis::X:
            return x;
        case Axis::Y:
            return y;
        case Axis::Z:
            return z;
    }
    fail(ErrorKind::InvalidArgument, "unknown axis");
}

AxisHistograms axis_histograms(const CountData &data) {
    std::optional<ClassHistogram> found[3];
    for (const auto &s : data.settings) {
        for (Axis a : kAxes) {
            auto &slot = found[static_cast<int>(a)];
            if (!slot && matches_axis(s, a)) {
                slot = class_histogram(s, data.num_qubits);
            }
        }
    }
    std::string missing;
    for (Axis a : kAxes) {
        if (!found[static_cast<int>(a)]) {
            missing += (missing.empty() ? "" : ", ") + std::string(axis_name(a));
        }
    }
    if (!missing.empty()) {
        fail(ErrorKind::IncompleteData, "no counts for collective settings: " + missing);
    }
    return AxisHistograms{*found[0], *found[1], *found[2]};
}

JMoments jmoments_from_counts(const AxisHistograms &hists) {
    const int N = hists.num_qubits();
    JMoments out(N);
    for (Axis a : kAxes) {
        if (hists[a].num_qubits() != N) {
            fail(ErrorKind::InvalidArgument, "axis histograms disagree on the qubit count");
        }
        for (int p = 1; p <= kMaxMomentPower; ++p) {
            out.set(a, p, histogram_mean(hists[a], [N, p](int w) { return spin_eigenvalue_power(N, w, p); }));
        }
    }
    return out;
}

JMoments jmoments_from_counts(const CountData &data) {
    return jmoments_from_counts(axis_histograms(data));
}

JMoments jmoments_from_bloch(const BlochVector &b) {
    const int N = b.num_qubits();
    JMoments out(N);
    for (Axis a : kAxes) {
        Eigen::Vector3d v = Eigen::Vector3d::Zero();
        v[static_cast<int>(a)] = 1.0;
        const auto probs = class_probabilities(b, Direction::normalized(v));
        for (int p = 1; p <= kMaxMomentPower; ++p) {
            double s = 0.0;
            for (int w = 0; w <= N; ++w) {
                s += probs[static_cast<std::size_t>(w)] * spin_eigenvalue_power(N, w, p);
            }
            out.set(a, p, Estimate{s, 0.0});
        }
    }
    return out;
}

double MomentFunctional::evaluate(const JMoments &moments) const {
    require_qubits(moments, num_qubits, "this functional");
    double s = constant;
    for (const auto &[key, c] : terms) {
        s += c * moments.value(key.first, key.second);
    }
    return s;
}

Estimate MomentFunctional::evaluate(const AxisHistograms &hists) const {
    const int N = hists.num_qubits();
    if (N != num_qubits) {
        fail(ErrorKind::UnsupportedSize, "this functional is defined for N=" + std::to_string(num_qubits) +
                                             ", data are for N=" + std::to_string(N));
    }
    Estimate out{constant, 0.0};
    double var = 0.0;
    for (Axis a : kAxes) {
        auto poly = [&](int w) {
            double s = 0.0;
            for (const auto &[key, c] : terms) {
                if (key.first == a) {
                    s += c * spin_eigenvalue_power(N, w, key.second);
                }
            }
            return s;
        };
        Estimate part = histogram_mean(hists[a], poly);
        out.value += part.value;
        var += part.sigma * part.sigma;
    }
    out.sigma = std::sqrt(var);
    return out;
}

Operator MomentFunctional::dense_operator() const {
    check_dense_capacity(num_qubits);
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    Operator op = constant * Operator::Identity(dim, dim);
    for (const auto &[key, c] : terms) {
        op += c * collective_op(num_qubits, key.first, key.second);
    }
    return op;
}

MomentFunctional ps_bound_functional(int num_qubits) {
    MomentFunctional f{num_qubits, 0.0, {}};
    auto add_q = [&f](int power, double c) {
        f.terms[{Axis::X, power}] += c;
        f.terms[{Axis::Y, power}] += c;
    };
    auto add_z = [&f](int power, double c) { f.terms[{Axis::Z, power}] += c; };
    switch (num_qubits) {
        case 4:
            for (int p : {2, 4}) {
                double c = (p == 4 ? 1.0 : -1.0) / 18.0;
                add_q(p, c);
                add_z(p, c);
            }
            break;
        case 6:
            add_q(2, 2.0 / 225.0);
            add_z(2, 2.0 / 225.0);
            add_q(4, -1.0 / 90.0);
            add_z(4, -1.0 / 90.0);
            add_q(6, 1.0 / 450.0);
            add_z(6, 1.0 / 450.0);
            break;
        case 8:
            add_q(2, -0.001616);
            add_q(4, 0.002200);
            add_q(6, -0.0006286);
            add_q(8, 0.00004490);
            add_z(2, 0.003265);
            add_z(4, -0.004444);
            add_z(6, 0.001270);
            add_z(8, -0.00009070);
            break;
        default:
            fail(ErrorKind::UnsupportedSize, "symmetric-subspace bound is available only for N = 4, 6, 8 (got N=" +
                                                 std::to_string(num_qubits) + ")");
    }
    return f;
}

double ps_bound_from_moments(const JMoments &moments) {
    return ps_bound_functional(moments.num_qubits()).evaluate(moments);
}

Estimate ps_bound_from_counts(const AxisHistograms &hists) {
    return ps_bound_functional(hists.num_qubits()).evaluate(hists);
}

MomentFunctional witness_functional() {
    MomentFunctional f{4, 2.0, {}};
    f.terms[{Axis::X, 2}] = 1.0 / 6.0;
    f.terms[{Axis::Y, 2}] = 1.0 / 6.0;
    f.terms[{Axis::X, 4}] = -1.0 / 6.0;
    f.terms[{Axis::Y, 4}] = -1.0 / 6.0;
    f.terms[{Axis::Z, 2}] = 31.0 / 12.0;
    f.terms[{Axis::Z, 4}] = -7.0 / 12.0;
    return f;
}

double witness_fidelity_bound(const JMoments &moments) {
    require_qubits(moments, 4, "the three-setting witness");
    return 2.0 / 3.0 - witness_functional().evaluate(moments) / 3.0;
}

Estimate witness_fidelity_bound(const AxisHistograms &hists) {
    if (hists.num_qubits() != 4) {
        fail(ErrorKind::UnsupportedSize, "the three-setting witness is defined for N=4");
    }
    Estimate w = witness_functional().evaluate(hists);
    return Estimate{2.0 / 3.0 - w.value / 3.0, w.sigma / 3.0};
}

Operator witness_projector_operator() {
    const Eigen::VectorXcd d = dicke_state(4, 2);
    return (2.0 / 3.0) * Operator::Identity(16, 16) - d * d.adjoint();
}

double obs2_bound(double ps) {
    if (!(ps >= 0.0 && ps <= 1.0)) {
        fail(ErrorKind::InvalidArgument, "<P_s> must lie in [0, 1], got " + std::to_string(ps));
    }
    return ps * ps;
}

StrongBound strong_bound(double ps, int num_qubits) {
    const double base = obs2_bound(ps);
    const std::uint64_t nss = n_subspaces(num_qubits);
    if (nss == 1) {
        return StrongBound{base, true};
    }
    return StrongBound{base + (1.0 - ps) * (1.0 - ps) / static_cast<double>(nss - 1), false};
}

std::uint64_t n_subspaces(int num_qubits) {
    if (num_qubits < 1) {
        fail(ErrorKind::InvalidArgument, "qubit count must be at least 1");
    }
    if (num_qubits > 62) {
        fail(ErrorKind::Capacity, "subspace count overflows 64 bits beyond N=62");
    }
    // Spin j = N/2 - t has multiplicity C(N, t) - C(N, t - 1).
    std::uint64_t total = 0;
    for (int t = 0; 2 * t <= num_qubits; ++t) {
        total += exact_binomial(num_qubits, t) - exact_binomial(num_qubits, t - 1);
    }
    return total;
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dimension() != sigma.dimension()) {
        fail(ErrorKind::InvalidArgument, "fidelity needs states of equal dimension");
    }
    // Tr sqrt(sqrt(rho) sigma sqrt(rho)) is the trace norm of sqrt(rho) sqrt(sigma).
    const Operator product = checked_state_sqrt(rho, "first state") * checked_state_sqrt(sigma, "second state");
    Eigen::BDCSVD<Operator> svd(product);
    const double root = svd.singularValues().sum();
    return std::clamp(root * root, 0.0, 1.0);
}

double trace_bound(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        fail(ErrorKind::InvalidArgument, "fidelity must lie in [0, 1], got " + std::to_string(fidelity));
    }
    return std::sqrt(1.0 - fidelity);
}

double element_bound(double fidelity) {
    return trace_bound(fidelity);
}

std::vector<Estimate> dicke_fidelities(const BlochVector &b) {
    const int N = b.num_qubits();
    check_dense_capacity(N);
    const auto &basis = b.basis();
    const double scale = std::ldexp(1.0, -N);
    std::vector<Estimate> out;
    for (int e = 0; e <= N; ++e) {
        const Eigen::VectorXcd d = dicke_state(N, e);
        const auto g = pi_class_traces(d * d.adjoint());
        double value = 0.0;
        double var = 0.0;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            double w = scale * static_cast<double>(multiplicity(basis[i])) * g[i];
            value += w * b.values()[i];
            if (b.has_sigmas()) {
                var += w * w * b.sigmas()[i] * b.sigmas()[i];
            }
        }
        out.push_back(Estimate{value, std::sqrt(var)});
    }
    return out;
}

std::vector<Estimate> dicke_fidelities(const DensityMatrix &rho) {
    const int N = rho.num_qubits();
    std::vector<Estimate> out;
    for (int e = 0; e <= N; ++e) {
        const Eigen::VectorXcd d = dicke_state(N, e);
        // The Dicke projector is PI, so this equals the overlap with the twirled state.
        out.push_back(Estimate{(d.adjoint() * rho.matrix() * d)(0, 0).real(), 0.0});
    }
    return out;
}

SymmetryReport symmetry_report(int num_qubits, Estimate ps) {
    SymmetryReport r;
    r.num_qubits = num_qubits;
    r.n_ss = n_subspaces(num_qubits);
    const double p = std::clamp(ps.value, 0.0, 1.0);
    r.ps_lower = Estimate{p, ps.sigma};

    const double f2 = obs2_bound(p);
    r.fidelity_lower_obs2 = Estimate{f2, 2.0 * p * ps.sigma};

    const StrongBound sb = strong_bound(p, num_qubits);
    r.strong_degenerate = sb.degenerate;
    const double slope = sb.degenerate ? 2.0 * p : 2.0 * p - 2.0 * (1.0 - p) / static_cast<double>(r.n_ss - 1);
    r.fidelity_lower_strong = Estimate{sb.value, std::abs(slope) * ps.sigma};

    const double sigma_f = r.fidelity_lower_obs2->sigma;
    const double gap = 1.0 - f2;
    const double tb = trace_bound(f2);
    // Linear propagation diverges at F = 1; fall back to the shift sqrt(sigma_F) there.
    const double tb_sigma = gap > sigma_f ? sigma_f / (2.0 * tb) : std::sqrt(sigma_f);
    r.trace_bound = Estimate{tb, tb_sigma};
    if (sb.degenerate) {
        r.note = "a single spin subspace: the strong bound reduces to the <P_s>^2 bound";
    }
    return r;
}

SymmetryReport symmetry_report(const CountData &data) {
    const AxisHistograms hists = axis_histograms(data);
    const int N = hists.num_qubits();
    if (N != 4 && N != 6 && N != 8) {
        SymmetryReport r;
        r.num_qubits = N;
        r.n_ss = n_subspaces(N);
        r.note = "no three-setting <P_s> bound is available for N=" + std::to_string(N) +
                 " (only N = 4, 6, 8); fidelity bounds omitted";
        return r;
    }
    return symmetry_report(N, ps_bound_from_counts(hists));
}

}  // namespace pitomo
