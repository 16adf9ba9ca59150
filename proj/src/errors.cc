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

#include "pitomo/errors.h"

namespace pitomo {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
            return "invalid-argument";
        case ErrorKind::Capacity:
            return "capacity";
        case ErrorKind::SingularSystem:
            return "singular-system";
        case ErrorKind::OptimizationFailed:
            return "optimization-failed";
        case ErrorKind::InsufficientCounts:
            return "insufficient-counts";
        case ErrorKind::IncompleteData:
            return "incomplete-data";
        case ErrorKind::UnsupportedSize:
            return "unsupported-size";
        case ErrorKind::Io:
            return "io";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace pitomo
