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

#ifndef PQMSEL_MANIFEST_H
#define PQMSEL_MANIFEST_H

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace pqmsel {

inline constexpr const char *kVersion = "0.1.0";

/// Provenance stamp written next to every report. Contains nothing that
/// depends on wall-clock time or thread count.
struct RunManifest {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::uint64_t master_seed = 0;
    std::string version = kVersion;
    std::string dataset_fingerprint;

    nlohmann::json to_json() const;
    /// Throws ParseError on missing or mistyped fields.
    static RunManifest from_json(const nlohmann::json &j);

    bool operator==(const RunManifest &) const = default;
};

/// "fnv1a64:" followed by 16 lowercase hex digits.
std::string fingerprint_bytes(std::string_view bytes);
std::string fingerprint_file(const std::filesystem::path &path);

}  // namespace pqmsel

#endif  // PQMSEL_MANIFEST_H
