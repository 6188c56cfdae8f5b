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

#ifndef PQMSEL_DATA_H
#define PQMSEL_DATA_H

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace pqmsel::data {

/// Labelled tabular classification data. Features are stored row-major.
struct Dataset {
    std::string name;
    std::size_t feature_count = 0;
    std::size_t class_count = 0;
    std::vector<double> features;
    std::vector<std::size_t> labels;

    std::size_t size() const noexcept { return labels.size(); }
    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * feature_count, feature_count};
    }

    bool operator==(const Dataset &) const = default;
};

/// A subset of a dataset's rows, by index.
struct DatasetView {
    const Dataset *dataset = nullptr;
    std::span<const std::size_t> rows;

    std::size_t size() const noexcept { return rows.size(); }
};

/// PROBEN1 `.dt` file: `key=value` header lines (bool_in, real_in, bool_out,
/// real_out, training_examples, validation_examples, test_examples) followed
/// by whitespace-separated numeric rows. The first bool_in+real_in columns are
/// inputs; the remaining one-hot outputs are decoded by argmax (ties go to the
/// lowest index). All three partitions are concatenated.
///
/// Throws ParseError with the offending line number.
Dataset load_proben1(const std::filesystem::path &path);

/// CSV with a header row. `label_column` is a column name, a zero-based column
/// index, or "last". Labels map to dense indices in order of first appearance;
/// every other column must be numeric.
Dataset load_csv(const std::filesystem::path &path, const std::string &label_column = "last");

/// Per-feature z-score over the whole dataset (population standard
/// deviation). Constant features become 0.
Dataset normalize(Dataset dataset);

}  // namespace pqmsel::data

#endif  // PQMSEL_DATA_H
