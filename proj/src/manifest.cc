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

#include "pqmsel/manifest.h"

#include <fmt/format.h>

#include <fstream>
#include <iterator>

#include "pqmsel/errors.h"

namespace pqmsel {

nlohmann::json RunManifest::to_json() const {
    return {{"command", command},
            {"config", config},
            {"master_seed", master_seed},
            {"version", version},
            {"dataset_fingerprint", dataset_fingerprint}};
}

RunManifest RunManifest::from_json(const nlohmann::json &j) {
    try {
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.config = j.at("config");
        m.master_seed = j.at("master_seed").get<std::uint64_t>();
        m.version = j.at("version").get<std::string>();
        m.dataset_fingerprint = j.at("dataset_fingerprint").get<std::string>();
        return m;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("bad manifest: ") + e.what());
    }
}

std::string fingerprint_bytes(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return fmt::format("fnv1a64:{:016x}", h);
}

std::string fingerprint_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fingerprint_bytes(bytes);
}

}  // namespace pqmsel
