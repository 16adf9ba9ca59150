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

#include <filesystem>
#include <string>

#include "json.hpp"
#include "pitomo/analysis.h"
#include "pitomo/dense.h"
#include "pitomo/pi_basis.h"
#include "pitomo/reconstruction.h"
#include "pitomo/scheme.h"

namespace pitomo {

using Json = nlohmann::ordered_json;

/// Version written into and required from every file.
inline constexpr int kFormatVersion = 1;

Json scheme_to_json(const Scheme &scheme);
Scheme scheme_from_json(const Json &j);

Json counts_to_json(const CountData &data);
CountData counts_from_json(const Json &j);

/// Entries carry "sigma" only when the vector has sigmas.
Json bloch_to_json(const BlochVector &b);
BlochVector bloch_from_json(const Json &j);

/// Row-major [re, im] pairs.
Json dense_to_json(const DensityMatrix &rho);
DensityMatrix dense_from_json(const Json &j);

Json estimate_to_json(const Estimate &e);
Json report_to_json(const SymmetryReport &r);

/// Reads and parses a JSON file; failures are io errors naming the path.
Json read_json_file(const std::filesystem::path &path);
/// Writes j followed by a newline; the output is byte-identical for equal input.
void write_json_file(const std::filesystem::path &path, const Json &j);

}  // namespace pitomo
