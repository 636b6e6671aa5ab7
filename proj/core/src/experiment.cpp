// Copyright 2026 The sqqnn Authors
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
#include "sqqnn/experiment.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace sqqnn::experiment {

namespace {

using nlohmann::json;

template <typename T>
T get_or(const json &obj, const char *key, T fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception &e) {
        fail(Errc::parse_error, std::string("recipe field '") + key + "': " + e.what());
    }
}

data::MissingPolicy parse_missing(const std::string &name) {
    if (name == "drop-rows") {
        return data::MissingPolicy::drop_rows;
    }
    if (name == "drop-columns") {
        return data::MissingPolicy::drop_columns;
    }
    fail(Errc::parse_error, "unknown missing-value policy '" + name + "'");
}

DatasetSpec parse_dataset(const json &j) {
    DatasetSpec d;
    d.kind = get_or<std::string>(j, "kind", "");
    d.gates = get_or<std::vector<std::string>>(j, "gates", {});
    if (j.contains("noise")) {
        d.noise = j.at("noise").is_array() ? j.at("noise").get<std::vector<double>>()
                                           : std::vector<double>{j.at("noise").get<double>()};
    }
    d.n_train = get_or<std::size_t>(j, "n_train", d.n_train);
    d.n_val = get_or<std::size_t>(j, "n_val", d.n_val);
    d.n_test = get_or<std::size_t>(j, "n_test", d.n_test);
    d.half_width = get_or<double>(j, "half_width", d.half_width);
    d.seed = get_or<std::uint64_t>(j, "seed", d.seed);
    d.test_seed = get_or<std::uint64_t>(j, "test_seed", d.test_seed);
    d.file = get_or<std::string>(j, "file", "");
    d.csv.target = get_or<std::string>(j, "target", d.csv.target);
    d.csv.has_header = get_or<bool>(j, "has_header", d.csv.has_header);
    d.csv.ignore_columns = get_or<std::vector<std::string>>(j, "ignore_columns", {});
    d.csv.label_map = get_or<std::map<std::string, double>>(j, "label_map", {});
    d.csv.missing = parse_missing(get_or<std::string>(j, "missing", "drop-rows"));
    d.images_file = get_or<std::string>(j, "images", "");
    d.labels_file = get_or<std::string>(j, "labels", "");
    for (const auto &p : get_or<std::vector<std::vector<int>>>(j, "pairs", {})) {
        if (p.size() != 2) {
            fail(Errc::parse_error, "recipe field 'pairs': each pair needs two digits");
        }
        d.pairs.emplace_back(p[0], p[1]);
    }
    d.dct_keep = get_or<std::size_t>(j, "dct_keep", 0);

    const bool known = d.kind == "logic-gates" || d.kind == "sinc" || d.kind == "two-moons" ||
                       d.kind == "csv" || d.kind == "mnist";
    if (!known) {
        fail(Errc::parse_error, "recipe field 'dataset.kind': unknown kind '" + d.kind + "'");
    }
    return d;
}

void parse_trainer(const json &j, Recipe &r) {
    train::TrainerSpec &t = r.trainer;
    t.method = train::parse_model_kind(get_or<std::string>(j, "method", "lls"));
    if (j.contains("K")) {
        r.degrees = j.at("K").is_array() ? j.at("K").get<std::vector<std::size_t>>()
                                         : std::vector<std::size_t>{j.at("K").get<std::size_t>()};
    }
    if (r.degrees.empty()) {
        fail(Errc::parse_error, "recipe field 'trainer.K': empty list");
    }
    t.gd.learning_rate = get_or<double>(j, "learning_rate", t.gd.learning_rate);
    t.gd.max_epochs = get_or<std::size_t>(j, "max_epochs", t.gd.max_epochs);
    t.gd.target_loss = get_or<double>(j, "target_loss", t.gd.target_loss);
    t.gd.seed = get_or<std::uint64_t>(j, "seed", t.gd.seed);
    t.gd.init_scale = get_or<double>(j, "init_scale", t.gd.init_scale);
    t.gd.loss = train::parse_loss_kind(get_or<std::string>(j, "loss", "mse"));
    t.lls.epsilon = get_or<double>(j, "epsilon", t.lls.epsilon);
    if (j.contains("rcond")) {
        t.lls.rcond = j.at("rcond").get<double>();
    }
    t.set_degree(r.degrees.front());
}

Assertion parse_assertion(const json &j) {
    Assertion a;
    a.group = get_or<std::string>(j, "group", "*");
    a.metric = get_or<std::string>(j, "metric", "");
    a.stat = get_or<std::string>(j, "stat", "mean");
    if (j.contains("min")) {
        a.min = j.at("min").get<double>();
    }
    if (j.contains("max")) {
        a.max = j.at("max").get<double>();
    }
    if (j.contains("greater_than")) {
        a.greater_than = j.at("greater_than").get<std::string>();
    }
    a.note = get_or<std::string>(j, "note", "");
    if (a.metric.empty()) {
        fail(Errc::parse_error, "recipe assertion without a metric");
    }
    if (a.stat != "mean" && a.stat != "std") {
        fail(Errc::parse_error, "recipe assertion stat must be mean or std");
    }
    if (!a.min && !a.max && !a.greater_than) {
        fail(Errc::parse_error, "recipe assertion on '" + a.metric + "' checks nothing");
    }
    return a;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Accumulates result rows for one group.
struct GroupSink {
    std::vector<MetricRow> &rows;
    std::string group;

    void add(const std::string &metric, double value) {
        rows.push_back({group, metric, value, 0.0, 1});
    }
    void add(const metrics::MetricSummary &s) {
        rows.push_back({group, s.name, s.mean, s.stddev, s.values.size()});
    }
};

void add_classification(GroupSink &sink, const metrics::ClassificationMetrics &m,
                        const std::string &prefix) {
    sink.add(prefix + "accuracy", m.accuracy.value);
    sink.add(prefix + "precision", m.precision.value);
    sink.add(prefix + "sensitivity", m.sensitivity.value);
    sink.add(prefix + "specificity", m.specificity.value);
    sink.add(prefix + "f1", m.f1.value);
}

/// Fits on `training` and scores it; the shared body of train and holdout.
void fit_and_score(const Recipe &recipe, const train::TrainerSpec &spec,
                   const data::Dataset &training, const data::Dataset *validation,
                   const data::Dataset *test, GroupSink &sink, Report &report) {
    const train::FitResult fit = train::fit(training, spec, recipe.preprocessing);
    if (spec.method != train::ModelKind::lls) {
        sink.add("epochs", static_cast<double>(fit.epochs));
        sink.add("converged", fit.converged ? 1.0 : 0.0);
        report.loss_curves.push_back({sink.group, fit.loss_history});
    } else {
        sink.add("residual", fit.lls_residual);
    }
    if (recipe.evaluation.task == metrics::Task::regression) {
        sink.add("train_mse", metrics::evaluate_regression(fit.model, training));
        if (validation != nullptr && validation->size() > 0) {
            sink.add("val_mse", metrics::evaluate_regression(fit.model, *validation));
        }
        if (test != nullptr) {
            sink.add("test_mse", metrics::evaluate_regression(fit.model, *test));
        }
    } else {
        sink.add("train_accuracy",
                 metrics::evaluate_classification(fit.model, training).accuracy.value);
        if (test != nullptr) {
            add_classification(sink, metrics::evaluate_classification(fit.model, *test), "");
        }
    }
}

void run_crossval(const Recipe &recipe, const train::TrainerSpec &spec,
                  const data::Dataset &dataset, GroupSink &sink) {
    metrics::CrossvalSpec cv;
    cv.trainer = spec;
    cv.preprocessing = recipe.preprocessing;
    cv.task = recipe.evaluation.task;
    cv.k = recipe.evaluation.k;
    cv.seed = recipe.evaluation.seed;
    cv.stratified = recipe.evaluation.stratified;
    cv.validation = recipe.evaluation.validation;
    const auto start = Clock::now();
    const metrics::CrossvalResult result = metrics::crossval(dataset, cv);
    const double elapsed = seconds_since(start);
    for (const auto &m : result.metrics) {
        sink.add(m);
    }
    sink.add("fold_seconds", elapsed / static_cast<double>(cv.k));
}

/// Runs one dataset under the recipe's protocol for every degree.
void run_protocol(const Recipe &recipe, const std::string &outer, const data::Dataset &training,
                  const data::Dataset *validation, const data::Dataset *test, Report &report,
                  std::ostream *log) {
    for (std::size_t degree : recipe.degrees) {
        std::string group = outer;
        if (recipe.degrees.size() > 1 || outer.empty()) {
            group += (group.empty() ? "" : ",") + std::string("K=") + std::to_string(degree);
        }
        train::TrainerSpec spec = recipe.trainer;
        spec.set_degree(degree);
        GroupSink sink{report.rows, group};
        const auto start = Clock::now();
        if (recipe.evaluation.protocol == "crossval") {
            run_crossval(recipe, spec, training, sink);
        } else if (recipe.evaluation.protocol == "train") {
            fit_and_score(recipe, spec, training, nullptr, nullptr, sink, report);
        } else {
            fit_and_score(recipe, spec, training, validation, test, sink, report);
        }
        const double elapsed = seconds_since(start);
        sink.add("seconds", elapsed);
        if (log != nullptr) {
            *log << recipe.name << ": " << group << " done in " << format_number(elapsed)
                 << " s\n";
        }
    }
}

double stat_of(const MetricRow &row, const std::string &stat) {
    return stat == "std" ? row.stddev : row.mean;
}

std::vector<std::pair<int, int>> selected_pairs(const Recipe &recipe, const RunOptions &options) {
    if (options.pair) {
        return {*options.pair};
    }
    return recipe.dataset.pairs;
}

std::string pair_group(std::pair<int, int> p) {
    return "pair=" + std::to_string(p.first) + "-" + std::to_string(p.second);
}

} // namespace

Recipe parse_recipe(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        fail(Errc::parse_error, std::string("recipe is not valid JSON: ") + e.what());
    }
    Recipe r;
    r.version = get_or<int>(j, "recipe_version", 0);
    if (r.version != Recipe::kVersion) {
        fail(Errc::unsupported_format, "unsupported recipe version " + std::to_string(r.version));
    }
    r.name = get_or<std::string>(j, "name", "");
    r.description = get_or<std::string>(j, "description", "");
    if (r.name.empty() || !j.contains("dataset")) {
        fail(Errc::parse_error, "recipe needs a name and a dataset");
    }
    r.dataset = parse_dataset(j.at("dataset"));
    if (j.contains("preprocessing")) {
        const json &p = j.at("preprocessing");
        r.preprocessing.normalize_inputs =
            get_or<bool>(p, "normalize_inputs", r.preprocessing.normalize_inputs);
        r.preprocessing.scale_targets =
            get_or<bool>(p, "scale_targets", r.preprocessing.scale_targets);
    }
    parse_trainer(j.value("trainer", json::object()), r);
    if (j.contains("evaluation")) {
        const json &e = j.at("evaluation");
        EvaluationSpec &ev = r.evaluation;
        ev.protocol = get_or<std::string>(e, "protocol", ev.protocol);
        ev.task = metrics::parse_task(get_or<std::string>(e, "task", "regression"));
        ev.k = get_or<std::size_t>(e, "k", ev.k);
        ev.seed = get_or<std::uint64_t>(e, "seed", ev.seed);
        ev.stratified = get_or<bool>(e, "stratified", ev.stratified);
        ev.validation = get_or<bool>(e, "validation", ev.validation);
        if (ev.protocol != "train" && ev.protocol != "holdout" && ev.protocol != "crossval") {
            fail(Errc::parse_error, "unknown evaluation protocol '" + ev.protocol + "'");
        }
    }
    for (const json &a : j.value("assertions", json::array())) {
        r.assertions.push_back(parse_assertion(a));
    }
    if (j.contains("fetch")) {
        const json &f = j.at("fetch");
        r.fetch.files = get_or<std::vector<std::string>>(f, "files", {});
        r.fetch.urls = get_or<std::vector<std::string>>(f, "urls", {});
        r.fetch.instructions = get_or<std::string>(f, "instructions", "");
    }
    return r;
}

Recipe load_recipe(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        fail(Errc::io_error, "cannot open recipe " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_recipe(buf.str());
}

namespace {

std::string missing_message(const std::vector<std::filesystem::path> &missing,
                            const FetchInfo &fetch) {
    std::string msg = "missing data file(s):";
    for (const auto &p : missing) {
        msg += "\n  " + p.string();
    }
    if (!fetch.urls.empty()) {
        msg += "\nsource:";
        for (const auto &u : fetch.urls) {
            msg += "\n  " + u;
        }
    }
    if (!fetch.instructions.empty()) {
        msg += "\n" + fetch.instructions;
    }
    msg += "\nSet SQQNN_DATA_DIR or pass --data-dir to point at the directory holding them.";
    return msg;
}

} // namespace

MissingData::MissingData(std::vector<std::filesystem::path> missing, const FetchInfo &fetch)
    : Error(Errc::io_error, missing_message(missing, fetch)), missing_(std::move(missing)) {}

std::filesystem::path default_data_dir() {
    if (const char *env = std::getenv("SQQNN_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return "data";
}

std::vector<std::filesystem::path> required_files(const Recipe &recipe,
                                                  const RunOptions &options) {
    std::vector<std::filesystem::path> files;
    if (recipe.dataset.kind == "csv") {
        files.push_back(options.data_dir / recipe.dataset.file);
    } else if (recipe.dataset.kind == "mnist") {
        files.push_back(options.data_dir / recipe.dataset.images_file);
        files.push_back(options.data_dir / recipe.dataset.labels_file);
    }
    return files;
}

std::string Outcome::describe() const {
    std::string s = assertion.metric + (assertion.stat == "std" ? " std" : "") + " [" + group +
                    "] = " + format_number(observed);
    if (assertion.greater_than) {
        s += " > " + format_number(reference.value_or(0.0)) + " [" + *assertion.greater_than +
             "]";
    } else {
        if (assertion.min && assertion.max) {
            s += " in [" + format_number(*assertion.min) + ", " + format_number(*assertion.max) +
                 "]";
        } else if (assertion.min) {
            s += " >= " + format_number(*assertion.min);
        } else if (assertion.max) {
            s += " <= " + format_number(*assertion.max);
        }
    }
    return s;
}

bool Report::passed() const {
    for (const auto &o : outcomes) {
        if (!o.passed) {
            return false;
        }
    }
    return true;
}

const MetricRow *Report::find(const std::string &group, const std::string &metric) const {
    for (const auto &row : rows) {
        if (row.group == group && row.metric == metric) {
            return &row;
        }
    }
    return nullptr;
}

std::vector<Outcome> check(const std::vector<Assertion> &assertions,
                           const std::vector<MetricRow> &rows) {
    std::vector<Outcome> out;
    for (const Assertion &a : assertions) {
        bool matched = false;
        for (const MetricRow &row : rows) {
            const bool group_ok =
                a.group == "*" ? row.group != "total" : row.group == a.group;
            if (!group_ok || row.metric != a.metric) {
                continue;
            }
            matched = true;
            Outcome o{a, row.group, stat_of(row, a.stat), std::nullopt, true};
            if (a.min && !(o.observed >= *a.min)) {
                o.passed = false;
            }
            if (a.max && !(o.observed <= *a.max)) {
                o.passed = false;
            }
            if (a.greater_than) {
                const MetricRow *other = nullptr;
                for (const MetricRow &r : rows) {
                    if (r.group == *a.greater_than && r.metric == a.metric) {
                        other = &r;
                    }
                }
                if (other == nullptr) {
                    o.passed = false;
                } else {
                    o.reference = stat_of(*other, a.stat);
                    o.passed = o.passed && o.observed > *o.reference;
                }
            }
            out.push_back(std::move(o));
        }
        if (!matched) {
            // a selector that hits nothing is a failed check, not a silent pass
            out.push_back({a, a.group, 0.0, std::nullopt, false});
        }
    }
    return out;
}

Report run(const Recipe &recipe, const RunOptions &options) {
    std::vector<std::filesystem::path> missing;
    for (const auto &f : required_files(recipe, options)) {
        if (!std::filesystem::exists(f)) {
            missing.push_back(f);
        }
    }
    if (!missing.empty()) {
        throw MissingData(std::move(missing), recipe.fetch);
    }

    Report report;
    report.recipe = recipe.name;
    const auto start = Clock::now();
    const DatasetSpec &ds = recipe.dataset;

    if (ds.kind == "logic-gates") {
        std::vector<data::LogicGate> gates;
        for (const auto &g : ds.gates) {
            gates.push_back(data::parse_logic_gate(g));
        }
        if (gates.empty()) {
            gates = data::all_logic_gates();
        }
        for (data::LogicGate g : gates) {
            const data::Dataset d = data::gen_logic_gate(g);
            run_protocol(recipe, "gate=" + data::to_string(g), d, nullptr, &d, report,
                         options.log);
        }
    } else if (ds.kind == "sinc") {
        for (double sigma : ds.noise) {
            data::SincOptions o;
            o.n_train = ds.n_train;
            o.n_val = ds.n_val;
            o.n_test = ds.n_test;
            o.noise_sigma = sigma;
            o.half_width = ds.half_width;
            o.seed = ds.seed;
            const data::SincSplits s = data::gen_sinc(o);
            run_protocol(recipe, "sigma=" + format_number(sigma), s.train, &s.validation, &s.test,
                         report, options.log);
        }
    } else if (ds.kind == "two-moons") {
        const double noise = ds.noise.empty() ? 0.0 : ds.noise.front();
        const data::Dataset train_set = data::gen_two_moons(ds.n_train, noise, ds.seed);
        const data::Dataset test_set = data::gen_two_moons(ds.n_test, noise, ds.test_seed);
        run_protocol(recipe, "", train_set, nullptr, &test_set, report, options.log);
    } else if (ds.kind == "csv") {
        const data::CsvLoadResult loaded = data::load_csv(options.data_dir / ds.file, ds.csv);
        if (options.log != nullptr) {
            *options.log << recipe.name << ": loaded " << loaded.dataset.size() << " rows, "
                         << loaded.dataset.dim() << " features (" << loaded.dropped_rows
                         << " rows and " << loaded.dropped_columns.size()
                         << " columns dropped for missing values)\n";
        }
        run_protocol(recipe, "", loaded.dataset, nullptr, nullptr, report, options.log);
    } else if (ds.kind == "mnist") {
        const data::LabeledImages images =
            data::load_mnist_idx(options.data_dir / ds.images_file,
                                 options.data_dir / ds.labels_file);
        for (const auto &pair : selected_pairs(recipe, options)) {
            const data::Dataset d =
                data::filter_pair(images, pair.first, pair.second, {ds.dct_keep});
            run_protocol(recipe, pair_group(pair), d, nullptr, nullptr, report, options.log);
        }
    }

    report.rows.push_back({"total", "seconds", seconds_since(start), 0.0, 1});

    // assertions about pairs that were not run are dropped under --pair
    std::vector<Assertion> active;
    for (const Assertion &a : recipe.assertions) {
        if (options.pair && a.group != "*" && a.group.rfind("pair=", 0) == 0 &&
            a.group != pair_group(*options.pair)) {
            continue;
        }
        active.push_back(a);
    }
    report.outcomes = check(active, report.rows);
    return report;
}

} // namespace sqqnn::experiment
