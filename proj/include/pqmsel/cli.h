// Copyright 2026 The pqmsel Authors
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

#ifndef PQMSEL_CLI_H
#define PQMSEL_CLI_H

#include <iosfwd>

namespace pqmsel {

/// Entry point of the `pqmsel` tool. Returns 0 on success, 1 on data,
/// training, capacity or I/O errors and 2 on argument errors.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace pqmsel

#endif  // PQMSEL_CLI_H
