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

#include "pitomo/cli.h"

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pitomo/analysis.h"
#include "pitomo/error_model.h"
#include "pitomo/experiment_sim.h"
#include "pitomo/io.h"
#include "pitomo/pi_algebra.h"
#include "pitomo/reconstruction.h"
#include "pitomo/scheme_design.h"

namespace pitomo {

namespace {

struct DesignArgs {
    int qubits = 0;
    double lambda = 0.0;
    std::string objective = "all";
    std::uint64_t seed = 1;
    std::size_t budget = 20000;
    std::string prior;
    std::string out;
};

struct SimulateArgs {
    std::string scheme;
    std::string settings;
    int qubits = 0;
    std::string state = "dicke";
    int excitations = -1;
    double noise = 0.0;
    std::string state_file;
    double lambda = 0.0;
    std::uint64_t seed = 1;
    std::string out;
};

struct ReconstructArgs {
    std::string scheme;
    std::string counts;
    std::string out;
    std::string dense_out;
    std::string physical_out;
    std::string ml_out;
    std::size_t ml_iterations = 2000;
};

struct AnalyzeArgs {
    std::string bloch;
    std::string dense;
    std::string reference;
    std::string counts;
    std::string out;
};

struct SymmetryArgs {
    std::string counts;
    std::string out;
};

void note(const std::string &msg) {
    std::cerr << msg << '\n';
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

void run_design(const DesignArgs &a) {
    if (a.qubits < 1) {
        fail(ErrorKind::InvalidArgument, "--qubits must be at least 1");
    }
    const VarianceModel model = a.prior.empty()
                                    ? VarianceModel::white_noise(a.lambda)
                                    : VarianceModel::state_based(bloch_from_json(read_json_file(a.prior)), a.lambda);
    if (model.prior() && model.prior()->num_qubits() != a.qubits) {
        fail(ErrorKind::InvalidArgument, "prior state does not have --qubits qubits");
    }
    OptimizeOptions opts;
    opts.objective = a.objective == "full" ? Objective::FullCorrelations : Objective::AllElements;
    opts.seed = a.seed;
    opts.budget = a.budget;
    const OptimizationResult res = optimize_scheme(a.qubits, model, opts);
    write_json_file(a.out, scheme_to_json(res.scheme));
    note("settings=" + std::to_string(res.scheme.num_settings()) +
         " e_total=" + format_number(e_total(res.scheme, model, opts.objective)) +
         " eps_max=" + format_number(eps_max(res.scheme, model)) + " iterations=" + std::to_string(res.iterations));
}

StateSpec load_state(const std::string &path) {
    const Json j = read_json_file(path);
    if (j.contains("data")) {
        return StateSpec::dense(dense_from_json(j));
    }
    return StateSpec::bloch(bloch_from_json(j));
}

void run_simulate(const SimulateArgs &a) {
    std::optional<Scheme> scheme;
    int N = a.qubits;
    if (!a.scheme.empty()) {
        scheme = scheme_from_json(read_json_file(a.scheme));
        if (N != 0 && N != scheme->num_qubits()) {
            fail(ErrorKind::InvalidArgument, "--qubits disagrees with the scheme file");
        }
        N = scheme->num_qubits();
    }

    std::optional<StateSpec> state;
    if (a.state == "dense" || a.state == "bloch") {
        if (a.state_file.empty()) {
            fail(ErrorKind::InvalidArgument, "--state " + a.state + " needs --state-file");
        }
        state = load_state(a.state_file);
        if (N != 0 && state->num_qubits() != N) {
            fail(ErrorKind::InvalidArgument, "state file has " + std::to_string(state->num_qubits()) +
                                                 " qubits, expected " + std::to_string(N));
        }
        N = state->num_qubits();
    } else {
        if (N < 1) {
            fail(ErrorKind::InvalidArgument, "--qubits is required unless a scheme or state file fixes it");
        }
        if (a.state == "dicke") {
            state = StateSpec::dicke(N, a.excitations < 0 ? N / 2 : a.excitations, a.noise);
        } else {
            state = StateSpec::maximally_mixed(N);
        }
    }

    CountData data;
    if (scheme) {
        data = run_experiment(*state, *scheme, a.lambda, a.seed);
    } else {
        std::vector<std::pair<std::string, Direction>> settings;
        for (char c : a.settings) {
            switch (c) {
                case 'x':
                case 'X':
                    settings.emplace_back("X", Direction(1, 0, 0));
                    break;
                case 'y':
                case 'Y':
                    settings.emplace_back("Y", Direction(0, 1, 0));
                    break;
                case 'z':
                case 'Z':
                    settings.emplace_back("Z", Direction(0, 0, 1));
                    break;
                default:
                    fail(ErrorKind::InvalidArgument, std::string("unknown collective setting '") + c + "'");
            }
        }
        data = run_experiment(*state, settings, a.lambda, a.seed);
    }
    write_json_file(a.out, counts_to_json(data));
}

void run_reconstruct(const ReconstructArgs &a) {
    const Scheme scheme = scheme_from_json(read_json_file(a.scheme));
    const CountData data = counts_from_json(read_json_file(a.counts));
    const auto hists = scheme_histograms(scheme, data);
    const BlochVector b = reconstruct(scheme, hists);
    write_json_file(a.out, bloch_to_json(b));
    if (!a.dense_out.empty()) {
        write_json_file(a.dense_out, dense_to_json(dense_from_bloch(b)));
    }
    if (!a.physical_out.empty()) {
        write_json_file(a.physical_out, dense_to_json(physical_projection(b)));
    }
    if (!a.ml_out.empty()) {
        const MlFitResult fit =
            ml_fit(scheme, hists, DensityMatrix::maximally_mixed(scheme.num_qubits()), a.ml_iterations);
        if (!fit.converged) {
            note("likelihood fit stopped after " + std::to_string(fit.iterations) +
                 " iterations without meeting the tolerance");
        }
        write_json_file(a.ml_out, dense_to_json(fit.rho));
    }
}

Json estimates_to_json(const std::vector<Estimate> &fids) {
    Json arr = Json::array();
    for (std::size_t e = 0; e < fids.size(); ++e) {
        Json item = Json::object();
        item["excitations"] = e;
        item["value"] = fids[e].value;
        item["sigma"] = fids[e].sigma;
        arr.push_back(std::move(item));
    }
    return arr;
}

// Physical dense state for comparisons; Bloch inputs are projected.
DensityMatrix comparable_state(const StateSpec &s) {
    if (s.kind() == StateSpec::Kind::Bloch) {
        return physical_projection(s.bloch_vector());
    }
    return s.density_matrix();
}

void run_analyze(const AnalyzeArgs &a) {
    if (a.bloch.empty() == a.dense.empty()) {
        fail(ErrorKind::InvalidArgument, "give exactly one of --bloch and --dense");
    }
    const StateSpec state = a.bloch.empty() ? StateSpec::dense(dense_from_json(read_json_file(a.dense)))
                                            : StateSpec::bloch(bloch_from_json(read_json_file(a.bloch)));
    const int N = state.num_qubits();
    const BlochVector b = state.bloch_vector();

    Json out = Json::object();
    out["version"] = kFormatVersion;
    out["N"] = N;
    const auto fids = dicke_fidelities(b);
    out["dicke_fidelities"] = estimates_to_json(fids);

    // P_s is the sum of the Dicke projectors and is PI, so <P_s> is exact from rho_PI.
    Estimate ps{0.0, 0.0};
    double var = 0.0;
    for (const auto &f : fids) {
        ps.value += f.value;
        var += f.sigma * f.sigma;
    }
    ps.sigma = std::sqrt(var);
    out["ps"] = estimate_to_json(ps);

    if (!a.reference.empty()) {
        const StateSpec ref = load_state(a.reference);
        if (ref.num_qubits() != N) {
            fail(ErrorKind::InvalidArgument, "reference state has a different number of qubits");
        }
        out["reference_fidelity"] = fidelity(comparable_state(state), comparable_state(ref));
    }

    std::optional<CountData> counts;
    if (!a.counts.empty()) {
        counts = counts_from_json(read_json_file(a.counts));
        if (counts->num_qubits != N) {
            fail(ErrorKind::InvalidArgument, "counts have a different number of qubits");
        }
    }
    if (N == 4) {
        if (counts) {
            out["witness_fidelity_bound"] = estimate_to_json(witness_fidelity_bound(axis_histograms(*counts)));
        } else {
            out["witness_fidelity_bound"] = Json{{"value", witness_fidelity_bound(jmoments_from_bloch(b))}};
        }
    }
    out["report"] = report_to_json(counts ? symmetry_report(*counts) : symmetry_report(N, ps));
    write_json_file(a.out, out);
}

void run_check_symmetry(const SymmetryArgs &a) {
    const SymmetryReport r = symmetry_report(counts_from_json(read_json_file(a.counts)));
    if (!r.note.empty()) {
        note(r.note);
    }
    write_json_file(a.out, report_to_json(r));
}

}  // namespace

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
            return 1;
        case ErrorKind::IncompleteData:
            return 3;
        case ErrorKind::InsufficientCounts:
            return 4;
        case ErrorKind::OptimizationFailed:
            return 5;
        case ErrorKind::UnsupportedSize:
            return 6;
        case ErrorKind::Capacity:
            return 7;
        case ErrorKind::SingularSystem:
            return 8;
        case ErrorKind::Io:
            return 9;
    }
    return 1;
}

int run_cli(int argc, const char *const *argv) {
    CLI::App app{"Permutationally invariant tomography: scheme design, simulation, reconstruction, diagnostics"};
    app.set_config("--config", "", "TOML/INI file with option values; command-line flags take precedence");
    app.require_subcommand(1);
    std::function<void()> action;

    DesignArgs design;
    auto *d = app.add_subcommand("design", "Optimize a measurement scheme and write its coefficient table");
    d->add_option("--qubits,-N", design.qubits, "Number of qubits")->required();
    d->add_option("--lambda", design.lambda, "Expected counts per setting (> 1)")->required();
    d->add_option("--objective", design.objective, "full: n = 0 elements only; all: every element")
        ->check(CLI::IsMember({"full", "all"}));
    d->add_option("--seed", design.seed, "Random seed");
    d->add_option("--budget", design.budget, "Maximum optimizer trials");
    d->add_option("--prior", design.prior, "Bloch file of the expected state (default: white noise)")
        ->check(CLI::ExistingFile);
    d->add_option("--out", design.out, "Scheme file to write")->required();
    d->callback([&] { action = [&] { run_design(design); }; });

    SimulateArgs sim;
    auto *s = app.add_subcommand("simulate", "Sample Poissonian counts for a state");
    auto *scheme_opt = s->add_option("--scheme", sim.scheme, "Scheme file whose settings are simulated")
                           ->check(CLI::ExistingFile);
    auto *settings_opt =
        s->add_option("--settings", sim.settings, "Collective settings to simulate instead, e.g. xyz");
    scheme_opt->excludes(settings_opt);
    s->add_option("--qubits,-N", sim.qubits, "Number of qubits (when no file fixes it)");
    s->add_option("--state", sim.state, "dicke, mixed, dense or bloch")
        ->check(CLI::IsMember({"dicke", "mixed", "dense", "bloch"}));
    s->add_option("--excitations", sim.excitations, "Dicke excitations (default N/2)");
    s->add_option("--noise", sim.noise, "White-noise weight p of the Dicke state");
    s->add_option("--state-file", sim.state_file, "Dense or Bloch file for --state dense|bloch")
        ->check(CLI::ExistingFile);
    s->add_option("--lambda", sim.lambda, "Expected counts per setting")->required();
    s->add_option("--seed", sim.seed, "Random seed");
    s->add_option("--out", sim.out, "Counts file to write")->required();
    s->callback([&] {
        if (sim.scheme.empty() && sim.settings.empty()) {
            throw CLI::ValidationError("simulate", "one of --scheme and --settings is required");
        }
        action = [&] { run_simulate(sim); };
    });

    ReconstructArgs rec;
    auto *r = app.add_subcommand("reconstruct", "Estimate the Bloch vector and PI state from counts");
    r->add_option("--scheme", rec.scheme, "Scheme file")->required()->check(CLI::ExistingFile);
    r->add_option("--counts", rec.counts, "Counts file")->required()->check(CLI::ExistingFile);
    r->add_option("--out", rec.out, "Bloch file to write")->required();
    r->add_option("--dense-out", rec.dense_out, "Dense file of the linear estimate");
    r->add_option("--physical-out", rec.physical_out, "Dense file of the nearest physical PI state");
    r->add_option("--ml-out", rec.ml_out, "Dense file of the maximum-likelihood PI state");
    r->add_option("--ml-iterations", rec.ml_iterations, "Iteration budget of the likelihood fit");
    r->callback([&] { action = [&] { run_reconstruct(rec); }; });

    AnalyzeArgs an;
    auto *a = app.add_subcommand("analyze", "Dicke fidelities, reference fidelity, witness and symmetry report");
    a->add_option("--bloch", an.bloch, "Bloch file of the state")->check(CLI::ExistingFile);
    a->add_option("--dense", an.dense, "Dense file of the state")->check(CLI::ExistingFile);
    a->add_option("--reference", an.reference, "Dense or Bloch file to compare with")->check(CLI::ExistingFile);
    a->add_option("--counts", an.counts, "Counts with X/Y/Z settings for the three-setting bounds")
        ->check(CLI::ExistingFile);
    a->add_option("--out", an.out, "Analysis file to write")->required();
    a->callback([&] { action = [&] { run_analyze(an); }; });

    SymmetryArgs sym;
    auto *c = app.add_subcommand("check-symmetry", "Bound the symmetric-subspace weight from X/Y/Z counts");
    c->add_option("--counts", sym.counts, "Counts file")->required()->check(CLI::ExistingFile);
    c->add_option("--out", sym.out, "Report file to write")->required();
    c->callback([&] { action = [&] { run_check_symmetry(sym); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsageExitCode;
    }
    try {
        action();
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace pitomo
