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

#ifndef PQMSEL_REPORT_H
#define PQMSEL_REPORT_H

#include <filesystem>
#include <string>

#include "json.hpp"
#include "pqmsel/manifest.h"
#include "pqmsel/selection.h"

namespace pqmsel::report {

inline constexpr int kResultsFormat = 1;

/// neurons,mean_accuracy,expected_ones,sampled_ones
std::string results_csv(const selection::SelectionRun &run);
/// One `neurons, accuracy, E(X)` line per architecture, 4 decimals.
std::string table_text(const selection::SelectionRun &run);
/// neurons,mean_accuracy,expected_ones,p_y_le_1
std::string scatter_csv(const selection::SelectionRun &run);
/// neurons,K,probability with d+1 rows per architecture. Reals use the
/// shortest representation that round-trips.
std::string distribution_csv(const selection::SelectionRun &run);

nlohmann::json config_json(const selection::SelectionConfig &config);
selection::SelectionConfig config_from_json(const nlohmann::json &j);

nlohmann::json results_json(const selection::SelectionRun &run, const RunManifest &manifest);

struct StoredRun {
    selection::SelectionRun run;
    RunManifest manifest;
};

/// Throws ParseError when the format version differs or fields are missing.
StoredRun parse_results_json(const nlohmann::json &j);
StoredRun load_results(const std::filesystem::path &path);

/// Writes report.csv, table.txt, scatter.csv, distribution.csv and
/// manifest.json into `out_dir`, creating it if needed.
void emit_tables(const selection::SelectionRun &run, const RunManifest &manifest,
                 const std::filesystem::path &out_dir);
/// emit_tables plus results.json.
void emit_report(const selection::SelectionRun &run, const RunManifest &manifest,
                 const std::filesystem::path &out_dir);

}  // namespace pqmsel::report

#endif  // PQMSEL_REPORT_H
