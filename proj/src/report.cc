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

#include "pqmsel/report.h"

#include <fmt/format.h>

#include <fstream>

#include "pqmsel/errors.h"

namespace pqmsel::report {

namespace fs = std::filesystem;
using nlohmann::json;
using selection::ArchitectureResult;
using selection::SelectionRun;

namespace {

void write_file(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out.flush()) throw IoError("write failed for " + path.string());
}

}  // namespace

std::string results_csv(const SelectionRun &run) {
    std::string out = "neurons,mean_accuracy,expected_ones,sampled_ones\n";
    for (const auto &r : run.results) {
        const auto s = r.sampled_ones();
        out += fmt::format("{},{},{},{}\n", r.hidden_neurons, r.mean_accuracy, r.expected_ones,
                           s ? fmt::format("{}", *s) : std::string());
    }
    return out;
}

std::string table_text(const SelectionRun &run) {
    std::string out;
    for (const auto &r : run.results) {
        out += fmt::format("{}, {:.4f}, {:.4f}\n", r.hidden_neurons, r.mean_accuracy, r.expected_ones);
    }
    return out;
}

std::string scatter_csv(const SelectionRun &run) {
    std::string out = "neurons,mean_accuracy,expected_ones,p_y_le_1\n";
    for (const auto &r : run.results) {
        out += fmt::format("{},{},{},{}\n", r.hidden_neurons, r.mean_accuracy, r.expected_ones,
                           r.distribution.cumulative(1));
    }
    return out;
}

std::string distribution_csv(const SelectionRun &run) {
    std::string out = "neurons,K,probability\n";
    for (const auto &r : run.results) {
        for (std::size_t k = 0; k < r.distribution.probs.size(); ++k) {
            out += fmt::format("{},{},{}\n", r.hidden_neurons, k, r.distribution.probs[k]);
        }
    }
    return out;
}

json config_json(const selection::SelectionConfig &c) {
    const auto &m = c.mlp;
    return {{"kappa", c.kappa},
            {"seeds_per_fold", c.seeds_per_fold},
            {"control_qubits", c.control_qubits},
            {"hidden_min", c.hidden_min},
            {"hidden_max", c.hidden_max},
            {"mode", selection::to_string(c.mode)},
            {"master_seed", c.master_seed},
            {"sample_repeats", c.sample_repeats},
            {"mlp",
             {{"alpha", m.alpha},
              {"beta1", m.beta1},
              {"beta2", m.beta2},
              {"epsilon", m.epsilon},
              {"max_iter", m.max_iter},
              {"learning_rate_init", m.learning_rate_init},
              {"tol", m.tol},
              {"n_iter_no_change", m.n_iter_no_change},
              {"max_batch_size", m.max_batch_size},
              {"shuffle", m.shuffle}}}};
}

selection::SelectionConfig config_from_json(const json &j) {
    selection::SelectionConfig c;
    c.kappa = j.at("kappa").get<std::size_t>();
    c.seeds_per_fold = j.at("seeds_per_fold").get<std::size_t>();
    c.control_qubits = j.at("control_qubits").get<int>();
    c.hidden_min = j.at("hidden_min").get<std::size_t>();
    c.hidden_max = j.at("hidden_max").get<std::size_t>();
    c.mode = selection::parse_mode(j.at("mode").get<std::string>());
    c.master_seed = j.at("master_seed").get<std::uint64_t>();
    c.sample_repeats = j.at("sample_repeats").get<std::size_t>();
    const auto &m = j.at("mlp");
    c.mlp.alpha = m.at("alpha").get<double>();
    c.mlp.beta1 = m.at("beta1").get<double>();
    c.mlp.beta2 = m.at("beta2").get<double>();
    c.mlp.epsilon = m.at("epsilon").get<double>();
    c.mlp.max_iter = m.at("max_iter").get<int>();
    c.mlp.learning_rate_init = m.at("learning_rate_init").get<double>();
    c.mlp.tol = m.at("tol").get<double>();
    c.mlp.n_iter_no_change = m.at("n_iter_no_change").get<int>();
    c.mlp.max_batch_size = m.at("max_batch_size").get<std::size_t>();
    c.mlp.shuffle = m.at("shuffle").get<bool>();
    return c;
}

json results_json(const SelectionRun &run, const RunManifest &manifest) {
    json archs = json::array();
    for (const auto &r : run.results) {
        json folds = json::array();
        for (const auto &f : r.folds) {
            folds.push_back(
                {{"fold_id", f.fold_id}, {"mean_accuracy", f.mean_accuracy}, {"expected_ones", f.expected_ones}});
        }
        archs.push_back({{"neurons", r.hidden_neurons},
                         {"mean_accuracy", r.mean_accuracy},
                         {"expected_ones", r.expected_ones},
                         {"samples", r.samples},
                         {"training_calls", r.training_calls},
                         {"distribution", r.distribution.probs},
                         {"folds", folds}});
    }
    return {{"format", kResultsFormat},
            {"version", kVersion},
            {"manifest", manifest.to_json()},
            {"config", config_json(run.config)},
            {"example_count", run.example_count},
            {"fold_size", run.fold_size},
            {"chosen_neurons", run.chosen_hidden},
            {"architectures", archs}};
}

StoredRun parse_results_json(const json &j) {
    try {
        const int format = j.at("format").get<int>();
        if (format != kResultsFormat) {
            throw ParseError(fmt::format("results format {} is not supported (expected {})", format,
                                         kResultsFormat));
        }
        StoredRun out;
        out.manifest = RunManifest::from_json(j.at("manifest"));
        auto &run = out.run;
        run.config = config_from_json(j.at("config"));
        run.example_count = j.at("example_count").get<std::size_t>();
        run.fold_size = j.at("fold_size").get<std::size_t>();
        run.chosen_hidden = j.at("chosen_neurons").get<std::size_t>();
        for (const auto &a : j.at("architectures")) {
            ArchitectureResult r;
            r.hidden_neurons = a.at("neurons").get<std::size_t>();
            r.mean_accuracy = a.at("mean_accuracy").get<double>();
            r.expected_ones = a.at("expected_ones").get<double>();
            r.samples = a.at("samples").get<std::vector<int>>();
            r.training_calls = a.at("training_calls").get<std::size_t>();
            r.distribution.probs = a.at("distribution").get<std::vector<double>>();
            r.distribution.control_qubits = static_cast<int>(r.distribution.probs.size()) - 1;
            for (const auto &f : a.at("folds")) {
                r.folds.push_back({f.at("fold_id").get<std::size_t>(), f.at("mean_accuracy").get<double>(),
                                   f.at("expected_ones").get<double>()});
            }
            run.results.push_back(std::move(r));
        }
        if (run.results.empty()) throw ParseError("results contain no architectures");
        return out;
    } catch (const json::exception &e) {
        throw ParseError(std::string("bad results file: ") + e.what());
    } catch (const ArgumentError &e) {
        throw ParseError(std::string("bad results file: ") + e.what());
    }
}

StoredRun load_results(const fs::path &path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return parse_results_json(j);
}

void emit_tables(const SelectionRun &run, const RunManifest &manifest, const fs::path &out_dir) {
    if (run.results.empty()) throw ArgumentError("nothing to report");
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    write_file(out_dir / "report.csv", results_csv(run));
    write_file(out_dir / "table.txt", table_text(run));
    write_file(out_dir / "scatter.csv", scatter_csv(run));
    write_file(out_dir / "distribution.csv", distribution_csv(run));
    write_file(out_dir / "manifest.json", manifest.to_json().dump(2) + "\n");
}

void emit_report(const SelectionRun &run, const RunManifest &manifest, const fs::path &out_dir) {
    emit_tables(run, manifest, out_dir);
    write_file(out_dir / "results.json", results_json(run, manifest).dump(2) + "\n");
}

}  // namespace pqmsel::report
