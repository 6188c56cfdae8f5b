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

#include "pqmsel/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "pqmsel/errors.h"

namespace pqmsel::data {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::optional<double> parse_number(std::string_view token) {
    double value = 0.0;
    const auto *end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::ifstream open_or_throw(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return in;
}

void check_invariants(const Dataset &ds, const std::string &source) {
    if (ds.size() == 0) throw ParseError(source + ": no data rows");
    if (ds.size() < ds.class_count) {
        throw ParseError(source + ": " + std::to_string(ds.size()) + " rows cannot cover " +
                         std::to_string(ds.class_count) + " classes");
    }
}

}  // namespace

Dataset load_proben1(const std::filesystem::path &path) {
    static const char *const kKeys[] = {"bool_in",          "real_in",  "bool_out",
                                        "real_out",         "training_examples",
                                        "validation_examples", "test_examples"};
    auto in = open_or_throw(path);
    const std::string source = path.string();
    std::map<std::string, std::size_t> header;
    std::string line;
    std::size_t line_no = 0;
    bool pending_row = false;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            pending_row = true;
            break;
        }
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
            throw ParseError(source, line_no, "unknown header key '" + key + "'");
        }
        std::size_t parsed = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
        if (ec != std::errc() || ptr != value.data() + value.size()) {
            throw ParseError(source, line_no, "header value for '" + key + "' is not a non-negative integer");
        }
        header[key] = parsed;
    }
    for (const char *key : kKeys) {
        if (!header.contains(key)) throw ParseError(source, line_no, std::string("missing header key '") + key + "'");
    }

    Dataset ds;
    ds.name = path.stem().string();
    ds.feature_count = header["bool_in"] + header["real_in"];
    ds.class_count = header["bool_out"] + header["real_out"];
    if (ds.feature_count == 0) throw ParseError(source, line_no, "no input columns declared");
    if (ds.class_count < 2) throw ParseError(source, line_no, "need at least two output columns for classification");
    const std::size_t expected_rows =
        header["training_examples"] + header["validation_examples"] + header["test_examples"];
    const std::size_t arity = ds.feature_count + ds.class_count;

    std::vector<double> values;
    values.reserve(arity);
    auto consume_row = [&](const std::string &text) {
        values.clear();
        std::istringstream tokens(text);
        std::string token;
        while (tokens >> token) {
            auto v = parse_number(token);
            if (!v) throw ParseError(source, line_no, "non-numeric token '" + token + "'");
            values.push_back(*v);
        }
        if (values.empty()) return;
        if (values.size() != arity) {
            throw ParseError(source, line_no,
                             "row has " + std::to_string(values.size()) + " columns, expected " + std::to_string(arity));
        }
        ds.features.insert(ds.features.end(), values.begin(), values.begin() + static_cast<long>(ds.feature_count));
        const auto outputs = values.begin() + static_cast<long>(ds.feature_count);
        ds.labels.push_back(static_cast<std::size_t>(std::max_element(outputs, values.end()) - outputs));
    };
    if (pending_row) consume_row(line);
    while (std::getline(in, line)) {
        ++line_no;
        consume_row(line);
    }
    if (ds.size() != expected_rows) {
        throw ParseError(source, line_no,
                         "found " + std::to_string(ds.size()) + " rows, header declares " + std::to_string(expected_rows));
    }
    check_invariants(ds, source);
    return ds;
}

Dataset load_csv(const std::filesystem::path &path, const std::string &label_column) {
    auto in = open_or_throw(path);
    const std::string source = path.string();
    auto split = [](const std::string &line) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream s(line);
        while (std::getline(s, cell, ',')) cells.push_back(trim(cell));
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        return cells;
    };

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> names;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            names = split(trim(line));
            break;
        }
    }
    if (names.empty()) throw ParseError(source + ": empty file");
    if (names.size() < 2) throw ParseError(source, line_no, "need at least one feature and one label column");

    std::size_t label_idx = names.size();
    if (label_column == "last") {
        label_idx = names.size() - 1;
    } else if (auto it = std::find(names.begin(), names.end(), label_column); it != names.end()) {
        label_idx = static_cast<std::size_t>(it - names.begin());
    } else {
        std::size_t idx = 0;
        auto [ptr, ec] = std::from_chars(label_column.data(), label_column.data() + label_column.size(), idx);
        if (ec == std::errc() && ptr == label_column.data() + label_column.size() && idx < names.size()) {
            label_idx = idx;
        }
    }
    if (label_idx >= names.size()) throw ParseError(source, line_no, "label column '" + label_column + "' not found");

    Dataset ds;
    ds.name = path.stem().string();
    ds.feature_count = names.size() - 1;
    std::map<std::string, std::size_t> label_ids;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto cells = split(t);
        if (cells.size() != names.size()) {
            throw ParseError(source, line_no,
                             "row has " + std::to_string(cells.size()) + " cells, header has " +
                                 std::to_string(names.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c == label_idx) continue;
            auto v = parse_number(cells[c]);
            if (!v) throw ParseError(source, line_no, "non-numeric feature '" + cells[c] + "'");
            ds.features.push_back(*v);
        }
        const std::string &label = cells[label_idx];
        if (label.empty()) throw ParseError(source, line_no, "empty label");
        auto [it, inserted] = label_ids.try_emplace(label, label_ids.size());
        ds.labels.push_back(it->second);
    }
    ds.class_count = label_ids.size();
    check_invariants(ds, source);
    return ds;
}

Dataset normalize(Dataset ds) {
    const std::size_t n = ds.size();
    const std::size_t f = ds.feature_count;
    if (n == 0) return ds;
    for (std::size_t c = 0; c < f; ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < n; ++r) mean += ds.features[r * f + c];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double dev = ds.features[r * f + c] - mean;
            var += dev * dev;
        }
        const double sd = std::sqrt(var / static_cast<double>(n));
        for (std::size_t r = 0; r < n; ++r) {
            double &x = ds.features[r * f + c];
            x = sd > 0.0 ? (x - mean) / sd : 0.0;
        }
    }
    return ds;
}

}  // namespace pqmsel::data
