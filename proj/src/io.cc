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

#include "pitomo/io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pitomo/errors.h"

namespace pitomo {

namespace {

constexpr const char *kBitConvention = "character i is qubit i+1; '0' is the +1 outcome";

[[noreturn]] void malformed(const std::string &what) {
    fail(ErrorKind::InvalidArgument, "malformed file: " + what);
}

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        malformed(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

double number(const Json &j, const std::string &what) {
    if (!j.is_number()) {
        malformed(what + " must be a number");
    }
    return j.get<double>();
}

int qubit_count(const Json &j) {
    const Json &n = field(j, "N");
    if (!n.is_number_integer() || n.get<long long>() < 1 || n.get<long long>() > 64) {
        malformed("N must be a positive integer");
    }
    return n.get<int>();
}

void check_version(const Json &j) {
    const Json &v = field(j, "version");
    if (!v.is_number_integer()) {
        malformed("version must be an integer");
    }
    if (v.get<int>() != kFormatVersion) {
        malformed("unsupported format version " + std::to_string(v.get<int>()));
    }
}

Json direction_to_json(const Direction &a) {
    return Json::array({a.x(), a.y(), a.z()});
}

Direction direction_from_json(const Json &j) {
    if (!j.is_array() || j.size() != 3) {
        malformed("direction must be an array of three numbers");
    }
    const double x = number(j[0], "direction component");
    const double y = number(j[1], "direction component");
    const double z = number(j[2], "direction component");
    // Serialized unit vectors may be off by a few ulps after the decimal round trip.
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (std::abs(norm - 1.0) > 1e-9) {
        malformed("direction is not a unit vector");
    }
    if (std::abs(norm * norm - 1.0) <= 1e-12) {
        return Direction(x, y, z);  // bit-exact round trip of our own output
    }
    return Direction::normalized(x, y, z);
}

Json header(int num_qubits) {
    Json j = Json::object();
    j["version"] = kFormatVersion;
    j["N"] = num_qubits;
    return j;
}

}  // namespace

Json scheme_to_json(const Scheme &scheme) {
    Json j = header(scheme.num_qubits());
    j["lambda"] = scheme.lambda();
    Json settings = Json::array();
    for (std::size_t s = 0; s < scheme.num_settings(); ++s) {
        settings.push_back(Json{{"id", Scheme::setting_id(s)}, {"direction", direction_to_json(scheme.direction(s))}});
    }
    j["settings"] = std::move(settings);
    Json coeffs = Json::object();
    for (const PiIndex &idx : enumerate_basis(scheme.num_qubits())) {
        const auto c = scheme.coefficients(idx);
        coeffs[idx.key()] = Json(std::vector<double>(c.begin(), c.end()));
    }
    j["coefficients"] = std::move(coeffs);
    return j;
}

Scheme scheme_from_json(const Json &j) {
    check_version(j);
    const int N = qubit_count(j);
    const double lambda = number(field(j, "lambda"), "lambda");
    const Json &settings = field(j, "settings");
    if (!settings.is_array()) {
        malformed("settings must be an array");
    }
    std::vector<Direction> dirs;
    for (std::size_t s = 0; s < settings.size(); ++s) {
        const Json &id = field(settings[s], "id");
        if (!id.is_string() || id.get<std::string>() != Scheme::setting_id(s)) {
            malformed("setting " + std::to_string(s + 1) + " must have id '" + Scheme::setting_id(s) + "'");
        }
        dirs.push_back(direction_from_json(field(settings[s], "direction")));
    }
    const Json &coeffs = field(j, "coefficients");
    std::vector<std::vector<double>> table;
    for (const PiIndex &idx : enumerate_basis(N)) {
        const Json &row = field(coeffs, idx.key().c_str());
        if (!row.is_array()) {
            malformed("coefficients of " + idx.key() + " must be an array");
        }
        std::vector<double> r;
        for (const Json &x : row) {
            r.push_back(number(x, "coefficient"));
        }
        table.push_back(std::move(r));
    }
    return Scheme(N, std::move(dirs), std::move(table), lambda);
}

Json counts_to_json(const CountData &data) {
    Json j = header(data.num_qubits);
    j["tag"] = data.tag;
    j["bit_convention"] = kBitConvention;
    Json settings = Json::array();
    for (const auto &s : data.settings) {
        Json rec = Json::object();
        rec["id"] = s.id;
        if (s.direction) {
            rec["direction"] = direction_to_json(*s.direction);
        }
        Json outcomes = Json::object();
        for (const auto &[bits, count] : s.outcomes) {
            outcomes[bits] = count;
        }
        rec["outcomes"] = std::move(outcomes);
        settings.push_back(std::move(rec));
    }
    j["settings"] = std::move(settings);
    return j;
}

CountData counts_from_json(const Json &j) {
    check_version(j);
    CountData data;
    data.num_qubits = qubit_count(j);
    if (j.contains("tag")) {
        if (!j["tag"].is_string()) {
            malformed("tag must be a string");
        }
        data.tag = j["tag"].get<std::string>();
    }
    const Json &settings = field(j, "settings");
    if (!settings.is_array()) {
        malformed("settings must be an array");
    }
    for (const Json &rec : settings) {
        SettingCounts s;
        const Json &id = field(rec, "id");
        if (!id.is_string()) {
            malformed("setting id must be a string");
        }
        s.id = id.get<std::string>();
        if (data.find(s.id) != nullptr) {
            malformed("duplicate setting id '" + s.id + "'");
        }
        if (rec.contains("direction")) {
            s.direction = direction_from_json(rec["direction"]);
        }
        const Json &outcomes = field(rec, "outcomes");
        if (!outcomes.is_object()) {
            malformed("outcomes of '" + s.id + "' must be an object");
        }
        for (const auto &[bits, count] : outcomes.items()) {
            if (!count.is_number_integer() || count.get<long long>() < 0) {
                malformed("count of '" + bits + "' in '" + s.id + "' must be a non-negative integer");
            }
            if (bits.size() != static_cast<std::size_t>(data.num_qubits)) {
                malformed("bitstring '" + bits + "' in '" + s.id + "' does not have length N");
            }
            s.outcomes[bits] = count.get<std::uint64_t>();
        }
        data.settings.push_back(std::move(s));
    }
    return data;
}

Json bloch_to_json(const BlochVector &b) {
    Json j = header(b.num_qubits());
    Json entries = Json::object();
    for (std::size_t i = 0; i < b.size(); ++i) {
        Json e = Json::object();
        e["value"] = b.values()[i];
        if (b.has_sigmas()) {
            e["sigma"] = b.sigmas()[i];
        }
        entries[b.basis()[i].key()] = std::move(e);
    }
    j["entries"] = std::move(entries);
    return j;
}

BlochVector bloch_from_json(const Json &j) {
    check_version(j);
    const int N = qubit_count(j);
    const Json &entries = field(j, "entries");
    BlochVector b(N);
    bool all_sigmas = true;
    std::vector<double> sigmas;
    for (const PiIndex &idx : b.basis()) {
        const Json &e = field(entries, idx.key().c_str());
        b.set_value(idx, number(field(e, "value"), "value of " + idx.key()));
        if (e.contains("sigma")) {
            sigmas.push_back(number(e["sigma"], "sigma of " + idx.key()));
        } else {
            all_sigmas = false;
        }
    }
    if (entries.size() != b.size()) {
        malformed("entries contain keys outside the basis for N=" + std::to_string(N));
    }
    if (all_sigmas) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            b.set_sigma(b.basis()[i], sigmas[i]);
        }
    }
    return b;
}

Json dense_to_json(const DensityMatrix &rho) {
    Json j = header(rho.num_qubits());
    Json data = Json::array();
    const Operator &m = rho.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            data.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
    }
    j["data"] = std::move(data);
    return j;
}

DensityMatrix dense_from_json(const Json &j) {
    check_version(j);
    const int N = qubit_count(j);
    check_dense_capacity(N);
    const Eigen::Index dim = Eigen::Index{1} << N;
    const Json &data = field(j, "data");
    if (!data.is_array() || data.size() != static_cast<std::size_t>(dim * dim)) {
        malformed("data must hold 4^N [re, im] pairs");
    }
    Operator m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            const Json &z = data[static_cast<std::size_t>(r * dim + c)];
            if (!z.is_array() || z.size() != 2) {
                malformed("matrix entries must be [re, im] pairs");
            }
            m(r, c) = Complex(number(z[0], "real part"), number(z[1], "imaginary part"));
        }
    }
    return DensityMatrix(std::move(m));
}

Json estimate_to_json(const Estimate &e) {
    return Json{{"value", e.value}, {"sigma", e.sigma}};
}

Json report_to_json(const SymmetryReport &r) {
    Json j = header(r.num_qubits);
    auto opt = [](const std::optional<Estimate> &e) { return e ? estimate_to_json(*e) : Json(nullptr); };
    j["ps_lower"] = opt(r.ps_lower);
    j["fidelity_lower_obs2"] = opt(r.fidelity_lower_obs2);
    j["fidelity_lower_strong"] = opt(r.fidelity_lower_strong);
    j["strong_degenerate"] = r.strong_degenerate;
    j["n_ss"] = r.n_ss;
    j["trace_bound"] = opt(r.trace_bound);
    if (!r.note.empty()) {
        j["note"] = r.note;
    }
    return j;
}

Json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::Io, "cannot open '" + path.string() + "' for reading");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::Io, "cannot parse '" + path.string() + "': " + e.what());
    }
}

void write_json_file(const std::filesystem::path &path, const Json &j) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        fail(ErrorKind::Io, "write to '" + path.string() + "' failed");
    }
}

}  // namespace pitomo
