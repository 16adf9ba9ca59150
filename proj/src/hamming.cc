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

#include "pitomo/hamming.h"

#include <cmath>
#include <numeric>

#include "pitomo/errors.h"
#include "pitomo/pi_algebra.h"

namespace pitomo {

namespace {

// sum_t (-1)^t C(w, t) C(N - w, j - t).
double krawtchouk(int num_qubits, int j, int w) {
    double s = 0.0;
    for (int t = 0; t <= std::min(w, j); ++t) {
        double term = binomial(w, t) * binomial(num_qubits - w, j - t);
        s += (t % 2 == 0) ? term : -term;
    }
    return s;
}

}  // namespace

double ClassHistogram::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0.0);
}

double class_moment_weight(int num_qubits, int n, int w) {
    if (num_qubits < 1 || n < 0 || n > num_qubits - 1 || w < 0 || w > num_qubits) {
        fail(ErrorKind::InvalidArgument, "class weight needs 0 <= n <= N-1 and 0 <= w <= N (N=" +
                                             std::to_string(num_qubits) + ", n=" + std::to_string(n) +
                                             ", w=" + std::to_string(w) + ")");
    }
    const int j = num_qubits - n;
    return krawtchouk(num_qubits, j, w) / binomial(num_qubits, j);
}

Estimate histogram_mean(const ClassHistogram &hist, const std::function<double(int)> &g) {
    const double total = hist.total();
    if (!(total >= 2)) {
        fail(ErrorKind::InsufficientCounts, "need at least 2 counts per setting, got " + std::to_string(total));
    }
    double mean = 0.0;
    double second = 0.0;
    for (std::size_t w = 0; w < hist.counts.size(); ++w) {
        if (hist.counts[w] == 0) {
            continue;
        }
        double f = hist.counts[w] / total;
        double v = g(static_cast<int>(w));
        mean += f * v;
        second += f * v * v;
    }
    double var = std::max(0.0, second - mean * mean);
    return Estimate{mean, std::sqrt(var / (total - 1))};
}

std::vector<double> setting_moments_from_bloch(const BlochVector &b, const Direction &a) {
    const int N = b.num_qubits();
    std::vector<double> m(static_cast<std::size_t>(N + 1), 1.0);
    for (int n = 0; n < N; ++n) {
        double s = 0.0;
        for (const auto &[idx, coeff] : expand_setting(a, n, N)) {
            s += coeff * b.value(idx);
        }
        m[static_cast<std::size_t>(n)] = s;
    }
    m[static_cast<std::size_t>(N)] = b.value(PiIndex{0, 0, 0, N});
    return m;
}

std::vector<double> class_probabilities(const BlochVector &b, const Direction &a) {
    // For a PI state <A^{(x)S}> depends only on |S| = j, and equals m[N - j]. Expanding
    // each basis projector prod_q (1 +/- A_q)/2 gives the Krawtchouk transform below.
    const int N = b.num_qubits();
    const auto m = setting_moments_from_bloch(b, a);
    std::vector<double> p(static_cast<std::size_t>(N + 1));
    const double scale = std::ldexp(1.0, -N);
    for (int w = 0; w <= N; ++w) {
        double s = 0.0;
        for (int j = 0; j <= N; ++j) {
            s += krawtchouk(N, j, w) * m[static_cast<std::size_t>(N - j)];
        }
        p[static_cast<std::size_t>(w)] = scale * binomial(N, w) * s;
    }
    return p;
}

}  // namespace pitomo
