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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pitomo/dense.h"
#include "pitomo/hamming.h"
#include "pitomo/pi_basis.h"
#include "pitomo/reconstruction.h"

namespace pitomo {

/// Highest collective-spin power produced by the moment estimators.
inline constexpr int kMaxMomentPower = 8;

/// Expectation values <J_a^p> of collective spin components.
class JMoments {
   public:
    explicit JMoments(int num_qubits);

    int num_qubits() const {
        return num_qubits_;
    }
    void set(Axis axis, int power, Estimate value);
    bool has(Axis axis, int power) const;
    /// Throws incomplete-data when absent.
    const Estimate &get(Axis axis, int power) const;
    double value(Axis axis, int power) const {
        return get(axis, power).value;
    }

   private:
    int num_qubits_;
    std::map<std::pair<Axis, int>, Estimate> moments_;
};

/// Class histograms of the settings X^{(x)N}, Y^{(x)N}, Z^{(x)N}.
struct AxisHistograms {
    ClassHistogram x;
    ClassHistogram y;
    ClassHistogram z;

    const ClassHistogram &operator[](Axis axis) const;
    int num_qubits() const {
        return z.num_qubits();
    }
};

/// A setting counts as axis a when its direction is +a, or when it carries no direction
/// and its id is "X", "Y" or "Z". Throws incomplete-data naming the absent axes.
AxisHistograms axis_histograms(const CountData &data);

/// <J_a^p> = sum_w f_w ((N - 2w)/2)^p for p = 1..kMaxMomentPower with plug-in sigmas.
JMoments jmoments_from_counts(const AxisHistograms &hists);
JMoments jmoments_from_counts(const CountData &data);

/// Exact moments of a PI state (sigmas zero).
JMoments jmoments_from_bloch(const BlochVector &b);

/// constant + sum c_{a,p} <J_a^p>.
struct MomentFunctional {
    int num_qubits = 0;
    double constant = 0.0;
    std::map<std::pair<Axis, int>, double> terms;

    double evaluate(const JMoments &moments) const;
    /// Settings are independent, so the variance is a sum over axes of the plug-in variance
    /// of each axis's polynomial in w.
    Estimate evaluate(const AxisHistograms &hists) const;
    Operator dense_operator() const;
};

/// Operator B with P_s >= B and <B> = 1 on the Dicke states. N must be 4, 6 or 8;
/// anything else throws unsupported-size.
MomentFunctional ps_bound_functional(int num_qubits);
double ps_bound_from_moments(const JMoments &moments);
Estimate ps_bound_from_counts(const AxisHistograms &hists);

/// Three-setting witness for |D_4^(2)>, as a moment functional.
MomentFunctional witness_functional();
/// 2/3 - <W>/3, a lower bound on the fidelity to |D_4^(2)>. Needs N = 4.
double witness_fidelity_bound(const JMoments &moments);
Estimate witness_fidelity_bound(const AxisHistograms &hists);
/// 2/3 * 1 - |D_4^(2)><D_4^(2)|.
Operator witness_projector_operator();

/// ps^2.
double obs2_bound(double ps);

struct StrongBound {
    double value = 0.0;
    /// N_SS = 1; the correction term is undefined and value is the ps^2 bound.
    bool degenerate = false;
};
/// ps^2 + (1 - ps)^2 / (N_SS - 1).
StrongBound strong_bound(double ps, int num_qubits);

/// Number of (j, alpha) spin subspaces: sum_j of the multiplicity of spin j.
std::uint64_t n_subspaces(int num_qubits);

/// [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2.
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

/// sqrt(1 - F): bounds half the trace distance and every |<psi|rho - rho_PI|psi>|.
double trace_bound(double fidelity);
double element_bound(double fidelity);

/// <D_N^(e)| rho_PI |D_N^(e)> for e = 0..N. Sigmas assume independent Bloch entries.
std::vector<Estimate> dicke_fidelities(const BlochVector &b);
std::vector<Estimate> dicke_fidelities(const DensityMatrix &rho);

struct SymmetryReport {
    int num_qubits = 0;
    std::optional<Estimate> ps_lower;
    std::optional<Estimate> fidelity_lower_obs2;
    std::optional<Estimate> fidelity_lower_strong;
    bool strong_degenerate = false;
    std::uint64_t n_ss = 0;
    /// sqrt(1 - F) evaluated at the ps^2 bound.
    std::optional<Estimate> trace_bound;
    /// Set when some bounds could not be evaluated.
    std::string note;
};

/// Bounds derived from a lower bound on <P_s>; ps is clamped to [0, 1].
SymmetryReport symmetry_report(int num_qubits, Estimate ps);
/// Report from X/Y/Z counts. For N outside {4, 6, 8} the bounds are omitted and note explains why.
SymmetryReport symmetry_report(const CountData &data);

}  // namespace pitomo
