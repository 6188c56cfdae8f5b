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

#include "pqmsel/cli.h"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pqmsel/crossval.h"
#include "pqmsel/data.h"
#include "pqmsel/errors.h"
#include "pqmsel/manifest.h"
#include "pqmsel/pqm.h"
#include "pqmsel/report.h"
#include "pqmsel/selection.h"
#include "pqmsel/superposition.h"

namespace pqmsel {

namespace {

constexpr double kVerifyTolerance = 1e-9;

struct DatasetOptions {
    std::string path;
    std::string format = "proben1";
    std::string label_column = "last";
    std::string normalize = "zscore";
};

void add_dataset_options(CLI::App &cmd, DatasetOptions &o, bool required) {
    auto *opt = cmd.add_option("--dataset", o.path, "PROBEN1 .dt or CSV file");
    if (required) opt->required();
    cmd.add_option("--format", o.format, "Dataset format")->check(CLI::IsMember({"proben1", "csv"}));
    cmd.add_option("--label-column", o.label_column, "CSV label column: last, a header name or an index");
    cmd.add_option("--normalize", o.normalize, "Feature scaling")->check(CLI::IsMember({"zscore", "none"}));
}

data::Dataset load_dataset(const DatasetOptions &o) {
    auto ds = o.format == "csv" ? data::load_csv(o.path, o.label_column) : data::load_proben1(o.path);
    if (o.normalize == "zscore") ds = data::normalize(std::move(ds));
    return ds;
}

nlohmann::json dataset_json(const DatasetOptions &o) {
    nlohmann::json j = {{"dataset", o.path}, {"format", o.format}, {"normalize", o.normalize}};
    if (o.format == "csv") j["label_column"] = o.label_column;
    return j;
}

void print_distribution(std::ostream &out, const pqm::RetrievalDistribution &dist) {
    for (std::size_t k = 0; k < dist.probs.size(); ++k) out << fmt::format("{},{}\n", k, dist.probs[k]);
    out << fmt::format("E(X)={}\n", pqm::expected_ones(dist));
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text).flush()) throw IoError("cannot write " + path.string());
}

// ---- select ----

struct SelectOptions {
    DatasetOptions data;
    selection::SelectionConfig config;
    std::string mode = "expect";
    std::string out_dir = "pqmsel-report";
    bool export_vectors = false;
};

int cmd_select(const SelectOptions &o, std::ostream &out) {
    auto config = o.config;
    config.mode = selection::parse_mode(o.mode);
    config.validate();
    const auto ds = load_dataset(o.data);
    const auto run = selection::select(ds, config);

    RunManifest manifest;
    manifest.command = "select";
    manifest.config = dataset_json(o.data);
    manifest.config["selection"] = report::config_json(config);
    manifest.master_seed = config.master_seed;
    manifest.dataset_fingerprint = fingerprint_file(o.data.path);
    report::emit_report(run, manifest, o.out_dir);
    if (o.export_vectors) {
        for (const auto &r : run.results) {
            std::vector<crossval::VectorRecord> records;
            for (const auto &v : r.vectors) records.push_back({v, std::nullopt});
            std::ostringstream text;
            crossval::write_vectors(text, records);
            write_text(std::filesystem::path(o.out_dir) / fmt::format("vectors_h{}.txt", r.hidden_neurons),
                       text.str());
        }
    }

    out << fmt::format("dataset={} examples={} features={} classes={} fold_size={} dropped={}\n", ds.name,
                       ds.size(), ds.feature_count, ds.class_count, run.fold_size,
                       ds.size() - run.fold_size * config.kappa);
    out << report::table_text(run);
    out << fmt::format("chosen_neurons={}\n", run.chosen_hidden);
    return 0;
}

// ---- pqm ----

struct PqmOptions {
    std::vector<std::string> patterns;
    std::string memory_file;
    std::string input;
    int control_qubits = 0;
};

void add_pqm_options(CLI::App &cmd, PqmOptions &o) {
    cmd.add_option("--pattern", o.patterns, "Stored bit-string (repeatable)");
    cmd.add_option("--memory-file", o.memory_file,
                   "File of bit-strings, one per line, or fold_id,seed,bits[,code] records");
    cmd.add_option("--input", o.input, "Probe bit-string (default all ones)");
    cmd.add_option("--control-qubits", o.control_qubits, "Control register size d")->required();
}

std::vector<BitPattern> read_memory_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    std::vector<BitPattern> out;
    if (text.find(',') != std::string::npos) {
        std::istringstream records(text);
        for (auto &r : crossval::read_vectors(records, path)) out.push_back(std::move(r.vector.bits));
        return out;
    }
    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        try {
            out.push_back(BitPattern::from_string(line));
        } catch (const ArgumentError &e) {
            throw ParseError(path, line_no, e.what());
        }
    }
    return out;
}

struct PqmInputs {
    std::vector<BitPattern> patterns;
    BitPattern probe;
};

PqmInputs pqm_inputs(const PqmOptions &o) {
    if (o.control_qubits < 1) throw ArgumentError("--control-qubits must be >= 1");
    PqmInputs in;
    for (const auto &p : o.patterns) in.patterns.push_back(BitPattern::from_string(p));
    if (!o.memory_file.empty()) {
        auto more = read_memory_file(o.memory_file);
        in.patterns.insert(in.patterns.end(), more.begin(), more.end());
    }
    if (in.patterns.empty()) throw ArgumentError("no patterns given (use --pattern or --memory-file)");
    const std::size_t k = in.patterns.front().size();
    for (const auto &p : in.patterns) {
        if (p.size() != k) throw ArgumentError("stored patterns differ in length");
    }
    in.probe = o.input.empty() ? BitPattern::all_ones(k) : BitPattern::from_string(o.input);
    if (in.probe.size() != k) throw ArgumentError("--input length differs from the stored patterns");
    return in;
}

pqm::RetrievalDistribution run_analytic(const PqmInputs &in, int d) {
    return pqm::retrieve_analytic(pqm::PqmMemory::from_patterns(in.patterns), in.probe, d);
}

pqm::RetrievalDistribution run_circuit(const PqmInputs &in, int d) {
    return pqm::retrieve_circuit(pqm::store_circuit(in.patterns), in.probe, d);
}

int cmd_pqm(const std::string &which, const PqmOptions &o, std::ostream &out) {
    const auto in = pqm_inputs(o);
    if (which == "analytic") {
        print_distribution(out, run_analytic(in, o.control_qubits));
        return 0;
    }
    if (which == "circuit") {
        print_distribution(out, run_circuit(in, o.control_qubits));
        return 0;
    }
    const auto a = run_analytic(in, o.control_qubits);
    const auto c = run_circuit(in, o.control_qubits);
    double dev = 0.0;
    for (std::size_t k = 0; k < a.probs.size(); ++k) dev = std::max(dev, std::abs(a.probs[k] - c.probs[k]));
    print_distribution(out, a);
    out << fmt::format("max_abs_deviation={}\n", dev);
    return dev < kVerifyTolerance ? 0 : 1;
}

// ---- superposition ----

struct SuperpositionOptions {
    DatasetOptions data;
    int bits = 1;
    std::size_t weights = 0;
    double lo = -1.0;
    double hi = 1.0;
    std::size_t folds = 2;
    int control_qubits = 100;
    std::size_t hidden = 1;
    int max_iter = 100;
    double learning_rate = 1e-3;
    std::size_t toy_size = 40;
    std::uint64_t seed = 0;
    std::size_t cap = superposition::kDefaultBranchCap;
    int jobs = 0;
    std::string out_dir;
};

int cmd_superposition(const SuperpositionOptions &o, std::ostream &out) {
    if (o.control_qubits < 1) throw ArgumentError("--control-qubits must be >= 1");
    mlp::MlpConfig cfg;
    cfg.hidden_neurons = o.hidden;
    cfg.max_iter = o.max_iter;
    cfg.learning_rate_init = o.learning_rate;
    cfg.validate();

    const auto ds = o.data.path.empty() ? superposition::xor_toy(o.toy_size, o.seed) : load_dataset(o.data);
    const std::size_t available = superposition::connection_weight_count(ds.feature_count, o.hidden, ds.class_count);
    const superposition::WeightGrid grid{o.bits, o.lo, o.hi, o.weights == 0 ? available : o.weights};
    const auto inputs = superposition::enumerate_branches(grid, o.folds, o.cap);
    const auto folds = crossval::make_folds(ds.size(), o.folds, selection::fold_seed(o.seed));
    const auto states = superposition::run_branches(inputs, grid, ds, folds, cfg, o.jobs);
    const auto dist = superposition::evaluate_superposition(states, o.control_qubits);
    const auto oracle = superposition::mixture_oracle(states, o.control_qubits);
    double dev = 0.0;
    for (std::size_t k = 0; k < oracle.size(); ++k) dev = std::max(dev, std::abs(dist.probs[k] - oracle[k]));

    if (!o.out_dir.empty()) {
        std::filesystem::create_directories(o.out_dir);
        std::ostringstream text;
        crossval::write_vectors(text, superposition::export_records(states));
        write_text(std::filesystem::path(o.out_dir) / "branches.txt", text.str());
        RunManifest manifest;
        manifest.command = "superposition";
        manifest.config = o.data.path.empty() ? nlohmann::json{{"dataset", "xor_toy"}, {"toy_size", o.toy_size}}
                                              : dataset_json(o.data);
        manifest.config["grid"] = {
            {"bits", grid.bits_per_weight}, {"lo", grid.lo}, {"hi", grid.hi}, {"weights", grid.weight_count}};
        manifest.config["folds"] = o.folds;
        manifest.config["control_qubits"] = o.control_qubits;
        manifest.config["hidden"] = o.hidden;
        manifest.config["max_iter"] = o.max_iter;
        manifest.config["learning_rate_init"] = o.learning_rate;
        manifest.master_seed = o.seed;
        manifest.dataset_fingerprint = o.data.path.empty() ? "" : fingerprint_file(o.data.path);
        write_text(std::filesystem::path(o.out_dir) / "manifest.json", manifest.to_json().dump(2) + "\n");
    }

    out << fmt::format("branches={}\n", states.size());
    print_distribution(out, dist);
    out << fmt::format("max_abs_deviation={}\n", dev);
    return 0;
}

// ---- report ----

int cmd_report(const std::string &results, const std::string &out_dir, std::ostream &out) {
    const auto stored = report::load_results(results);
    if (stored.manifest.version != kVersion) {
        throw ParseError(fmt::format("{} was written by version {}, this is {}", results, stored.manifest.version,
                                     kVersion));
    }
    report::emit_tables(stored.run, stored.manifest, out_dir);
    out << fmt::format("wrote {} architectures to {}\n", stored.run.results.size(), out_dir);
    return 0;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Architecture selection with a probabilistic quantum memory", "pqmsel"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    SelectOptions sel;
    auto *select = app.add_subcommand("select", "Rank hidden-layer sizes by retrieval from trained ensembles");
    add_dataset_options(*select, sel.data, true);
    select->add_option("--folds", sel.config.kappa, "Cross-validation folds")->capture_default_str();
    select->add_option("--seeds-per-fold", sel.config.seeds_per_fold, "Networks trained per fold")
        ->capture_default_str();
    select->add_option("--control-qubits", sel.config.control_qubits, "Control register size d")
        ->capture_default_str();
    select->add_option("--hidden-min", sel.config.hidden_min, "Smallest hidden layer")->capture_default_str();
    select->add_option("--hidden-max", sel.config.hidden_max, "Largest hidden layer")->capture_default_str();
    select->add_option("--mode", sel.mode, "Selection criterion")->check(CLI::IsMember({"expect", "sample"}));
    select->add_option("--sample-repeats", sel.config.sample_repeats, "Draws per architecture in sample mode")
        ->capture_default_str();
    select->add_option("--seed", sel.config.master_seed, "Master seed")->capture_default_str();
    select->add_option("--out", sel.out_dir, "Report directory")->capture_default_str();
    select->add_option("--jobs", sel.config.jobs, "Training threads (0 = all)")->capture_default_str();
    select->add_flag("--export-vectors", sel.export_vectors, "Also write vectors_h<N>.txt per architecture");

    PqmOptions pqm_opts;
    auto *pqm_cmd = app.add_subcommand("pqm", "Probabilistic quantum memory retrieval");
    pqm_cmd->require_subcommand(1);
    std::string pqm_which;
    for (const char *name : {"analytic", "circuit", "verify"}) {
        auto *sub = pqm_cmd->add_subcommand(name);
        add_pqm_options(*sub, pqm_opts);
        sub->callback([&pqm_which, name] { pqm_which = name; });
    }
    pqm_cmd->get_subcommand("analytic")->description("Closed-form retrieval distribution");
    pqm_cmd->get_subcommand("circuit")->description("State-vector simulation of storage and retrieval");
    pqm_cmd->get_subcommand("verify")->description("Run both backends and report their deviation");

    SuperpositionOptions sup;
    auto *super = app.add_subcommand("superposition", "Exhaustive emulation over folds and weight-grid codes");
    add_dataset_options(*super, sup.data, false);
    super->add_option("--bits", sup.bits, "Bits per weight")->capture_default_str();
    super->add_option("--weights", sup.weights, "Grid-driven connection weights (0 = all)")->capture_default_str();
    super->add_option("--lo", sup.lo, "Lowest grid level")->capture_default_str();
    super->add_option("--hi", sup.hi, "Highest grid level")->capture_default_str();
    super->add_option("--folds", sup.folds, "Cross-validation folds")->capture_default_str();
    super->add_option("--control-qubits", sup.control_qubits, "Control register size d")->capture_default_str();
    super->add_option("--hidden", sup.hidden, "Hidden neurons")->capture_default_str();
    super->add_option("--max-iter", sup.max_iter, "Training epochs")->capture_default_str();
    super->add_option("--learning-rate", sup.learning_rate, "Adam step size")->capture_default_str();
    super->add_option("--toy-size", sup.toy_size, "Examples in the built-in XOR set")->capture_default_str();
    super->add_option("--seed", sup.seed, "Seed for the toy set and folds")->capture_default_str();
    super->add_option("--cap", sup.cap, "Maximum branch count")->capture_default_str();
    super->add_option("--jobs", sup.jobs, "Training threads (0 = all)")->capture_default_str();
    super->add_option("--out", sup.out_dir, "Write branches.txt and manifest.json here");

    std::string results_path, report_out;
    auto *rep = app.add_subcommand("report", "Re-emit CSV tables from a results.json");
    rep->add_option("--results", results_path, "results.json of a select run")->required();
    rep->add_option("--out", report_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (select->parsed()) return cmd_select(sel, out);
        if (pqm_cmd->parsed()) return cmd_pqm(pqm_which, pqm_opts, out);
        if (super->parsed()) return cmd_superposition(sup, out);
        return cmd_report(results_path, report_out, out);
    } catch (const ArgumentError &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace pqmsel
