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

#include "pitomo/errors.h"

namespace pitomo {

/// Process exit status for a failure of the given kind.
int exit_code(ErrorKind kind);

/// Exit status returned for command-line usage errors.
inline constexpr int kUsageExitCode = 2;

/// Runs the command-line front end; returns the process exit status.
int run_cli(int argc, const char *const *argv);

}  // namespace pitomo
