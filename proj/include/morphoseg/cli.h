// Copyright 2026 The morphoseg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MORPHOSEG_CLI_H_
#define MORPHOSEG_CLI_H_

#include <iosfwd>

namespace morphoseg {

inline constexpr char kVersion[] = "0.1.0";

// Entry point of the `morphoseg` tool. The one-line summary goes to `out`,
// the provenance block and diagnostics to `err`. Returns 0 on success, 1 for
// usage errors, 2 for data errors and 3 for inconsistent models.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace morphoseg

#endif  // MORPHOSEG_CLI_H_
