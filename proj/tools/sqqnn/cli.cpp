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
#include "sqqnn/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "sqqnn/data.hpp"
#include "sqqnn/errors.hpp"
#include "sqqnn/experiment.hpp"
#include "sqqnn/metrics.hpp"
#include "sqqnn/model_store.hpp"
#include "sqqnn/train.hpp"

#ifndef SQQNN_DEFAULT_RECIPES_DIR
#define SQQNN_DEFAULT_RECIPES_DIR "recipes"
#endif

namespace sqqnn::cli {

namespace {

namespace fs = std::filesystem;

/// Failures in command handlers that should exit with a usage code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

enum class Format { table, csv };

/// Plain aligned text table with a header row.
void print_table(std::ostream &out, const std::vector<std::string> &header,
                 const std::vector<std::vector<std::string>> &rows) {
    std::vector<std::size_t> width(header.size(), 0);
    auto widen = [&](const std::vector<std::string> &r) {
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) {
            width[i] = std::max(width[i], r[i].size());
        }
    };
    widen(header);
    for (const auto &r : rows) {
        widen(r);
    }
    auto line = [&](const std::vector<std::string> &r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            out << r[i];
            if (i + 1 < r.size()) {
                out << std::string(width[i] - r[i].size() + 2, ' ');
            }
        }
        out << "\n";
    };
    line(header);
    std::vector<std::string> rule;
    for (std::size_t w : width) {
        rule.emplace_back(w, '-');
    }
    line(rule);
    for (const auto &r : rows) {
        line(r);
    }
}

void print_csv(std::ostream &out, const std::vector<std::string> &header,
               const std::vector<std::vector<std::string>> &rows) {
    auto line = [&](const std::vector<std::string> &r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            out << r[i] << (i + 1 < r.size() ? "," : "\n");
        }
    };
    line(header);
    for (const auto &r : rows) {
        line(r);
    }
}

void print_rows(std::ostream &out, Format format, const std::vector<std::string> &header,
                const std::vector<std::vector<std::string>> &rows) {
    if (format == Format::csv) {
        print_csv(out, header, rows);
    } else {
        print_table(out, header, rows);
    }
}

void add_format_option(CLI::App *cmd, Format &format) {
    cmd->add_option("--format", format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"table", Format::table}, {"csv", Format::csv}}));
}

/// Options describing a CSV dataset on the command line.
struct DataFlags {
    std::string path;
    std::string target = "-1";
    bool no_header = false;
    std::vector<std::string> ignore;
    std::vector<std::string> label_map;
    bool drop_columns = false;

    void add(CLI::App *cmd) {
        cmd->add_option("--data", path, "CSV file")->required();
        cmd->add_option("--target", target, "Target column name or index (negative counts from the end)");
        cmd->add_flag("--no-header", no_header, "The file has no header row");
        cmd->add_option("--ignore", ignore, "Columns to leave out of the features");
        cmd->add_option("--label-map", label_map, "Target label mapping such as M=1");
        cmd->add_flag("--drop-columns", drop_columns,
                      "Drop feature columns with missing values instead of rows");
    }

    [[nodiscard]] data::Dataset load(std::ostream &err) const {
        data::CsvOptions o;
        o.target = target;
        o.has_header = !no_header;
        o.ignore_columns = ignore;
        o.missing = drop_columns ? data::MissingPolicy::drop_columns : data::MissingPolicy::drop_rows;
        for (const std::string &m : label_map) {
            const auto eq = m.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw UsageError("--label-map expects NAME=VALUE, got '" + m + "'");
            }
            try {
                o.label_map[m.substr(0, eq)] = std::stod(m.substr(eq + 1));
            } catch (const std::exception &) {
                throw UsageError("--label-map value is not a number in '" + m + "'");
            }
        }
        data::CsvLoadResult r = data::load_csv(path, o);
        if (r.dropped_rows > 0) {
            err << "warning: dropped " << r.dropped_rows << " row(s) with missing values\n";
        }
        if (!r.dropped_columns.empty()) {
            err << "warning: dropped " << r.dropped_columns.size()
                << " column(s) with missing values\n";
        }
        return std::move(r.dataset);
    }
};

/// Trainer and preprocessing options shared by train and crossval.
struct TrainerFlags {
    train::ModelKind method = train::ModelKind::gd_reduced;
    std::size_t degree = 1;
    double lr = train::GdConfig{}.learning_rate;
    std::size_t max_epochs = train::GdConfig{}.max_epochs;
    double target_loss = 0.0;
    std::uint64_t seed = 0;
    double init_scale = train::GdConfig{}.init_scale;
    train::LossKind loss = train::LossKind::mse;
    double epsilon = train::LlsConfig{}.epsilon;
    std::optional<double> rcond;
    bool no_normalize = false;
    bool scale_targets = false;

    void add(CLI::App *cmd) {
        cmd->add_option("--method", method, "gd (= gd-reduced), gd-full or lls")
            ->transform(CLI::CheckedTransformer(std::map<std::string, train::ModelKind>{
                {"gd", train::ModelKind::gd_reduced},
                {"gd-reduced", train::ModelKind::gd_reduced},
                {"gd-full", train::ModelKind::gd_full},
                {"lls", train::ModelKind::lls}}));
        cmd->add_option("--K", degree, "Polynomial degree (neurons)")->check(CLI::PositiveNumber);
        cmd->add_option("--lr", lr, "Learning rate")->check(CLI::PositiveNumber);
        cmd->add_option("--max-epochs", max_epochs, "Gradient-descent update cap");
        cmd->add_option("--target-loss", target_loss, "Stop once the batch loss reaches this");
        cmd->add_option("--seed", seed, "Initialisation seed");
        cmd->add_option("--init-scale", init_scale, "Initial coefficients uniform in [-s, s]")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--loss", loss, "mse or hinge")
            ->transform(CLI::CheckedTransformer(std::map<std::string, train::LossKind>{
                {"mse", train::LossKind::mse}, {"hinge", train::LossKind::hinge}}));
        cmd->add_option("--epsilon", epsilon, "Label clipping before arctanh (lls)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--rcond", rcond, "Relative singular-value cutoff (lls)")
            ->check(CLI::NonNegativeNumber);
        cmd->add_flag("--no-normalize-inputs", no_normalize, "Keep raw feature values");
        cmd->add_flag("--scale-targets", scale_targets, "Min-max scale targets to [-1, 1]");
    }

    [[nodiscard]] train::TrainerSpec spec() const {
        train::TrainerSpec s;
        s.method = method;
        s.gd.learning_rate = lr;
        s.gd.max_epochs = max_epochs;
        s.gd.target_loss = target_loss;
        s.gd.seed = seed;
        s.gd.init_scale = init_scale;
        s.gd.loss = loss;
        s.lls.epsilon = epsilon;
        s.lls.rcond = rcond;
        s.set_degree(degree);
        return s;
    }

    [[nodiscard]] train::Preprocessing preprocessing() const {
        return {!no_normalize, scale_targets};
    }
};

void write_loss_history(const fs::path &path, const std::vector<double> &history) {
    std::ofstream out(path);
    if (!out) {
        fail(Errc::io_error, "cannot write " + path.string());
    }
    out << "epoch,loss\n";
    out.precision(17);
    for (std::size_t i = 0; i < history.size(); ++i) {
        out << i << "," << history[i] << "\n";
    }
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
    std::string name;
    fs::path out;
    std::size_t n = 1000;
    double noise = 0.07;
    std::uint64_t seed = 0;
    double half_width = 10.0;
};

int cmd_gen(const GenArgs &a, std::ostream &out) {
    if (a.name == "two-moons") {
        const data::Dataset d = data::gen_two_moons(a.n, a.noise, a.seed);
        const fs::path path = a.out.empty() ? fs::path("two-moons.csv") : a.out;
        data::write_csv(d, path);
        out << "wrote " << d.size() << " rows to " << path.string() << "\n";
        return kExitOk;
    }
    if (a.name == "sinc") {
        data::SincOptions o;
        o.noise_sigma = a.noise;
        o.seed = a.seed;
        o.half_width = a.half_width;
        const data::SincSplits s = data::gen_sinc(o);
        const fs::path base = a.out.empty() ? fs::path("sinc.csv") : a.out;
        const std::string stem = (base.parent_path() / base.stem()).string();
        const std::pair<const char *, const data::Dataset *> parts[] = {
            {"-train.csv", &s.train}, {"-val.csv", &s.validation}, {"-test.csv", &s.test}};
        for (const auto &[suffix, d] : parts) {
            data::write_csv(*d, stem + suffix);
            out << "wrote " << d->size() << " rows to " << stem + suffix << "\n";
        }
        return kExitOk;
    }
    data::LogicGate gate{};
    try {
        gate = data::parse_logic_gate(a.name);
    } catch (const Error &) {
        throw UsageError("unknown dataset '" + a.name +
                         "' (expected and, or, xor, nand, nor, xnor, sinc or two-moons)");
    }
    const data::Dataset d = data::gen_logic_gate(gate);
    const fs::path path = a.out.empty() ? fs::path(a.name + ".csv") : a.out;
    data::write_csv(d, path);
    out << "wrote " << d.size() << " rows to " << path.string() << "\n";
    return kExitOk;
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
    DataFlags data;
    TrainerFlags trainer;
    fs::path model_out;
    fs::path loss_history;
};

int cmd_train(const TrainArgs &a, std::ostream &out, std::ostream &err) {
    const data::Dataset d = a.data.load(err);
    const train::FitResult fit = train::fit(d, a.trainer.spec(), a.trainer.preprocessing());
    if (fit.model.kind == train::ModelKind::lls) {
        out << "method: lls\n"
            << "K: " << fit.model.degree << "\n"
            << "residual: " << num(fit.lls_residual) << "\n";
    } else {
        out << "method: " << train::to_string(fit.model.kind) << "\n"
            << "K: " << fit.model.degree << "\n"
            << "epochs: " << fit.epochs << "\n"
            << "final_loss: " << num(fit.loss_history.back()) << "\n"
            << "converged: " << (fit.converged ? "yes" : "no") << "\n";
        if (!a.loss_history.empty()) {
            write_loss_history(a.loss_history, fit.loss_history);
        }
    }
    if (!a.model_out.empty()) {
        store::save(fit.model, a.model_out);
        out << "model: " << a.model_out.string() << "\n";
    }
    return kExitOk;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
    fs::path model;
    DataFlags data;
    metrics::Task task = metrics::Task::classification;
    Format format = Format::table;
};

void require_dims(const train::TrainedModel &m, const data::Dataset &d) {
    if (m.dim != d.dim()) {
        throw UsageError("dimension mismatch: model expects " + std::to_string(m.dim) +
                         " feature(s), data has " + std::to_string(d.dim()));
    }
}

int cmd_eval(const EvalArgs &a, std::ostream &out, std::ostream &err) {
    const train::TrainedModel model = store::load(a.model);
    const data::Dataset d = a.data.load(err);
    require_dims(model, d);
    if (a.task == metrics::Task::regression) {
        const double mse = metrics::evaluate_regression(model, d);
        if (a.format == Format::csv) {
            out << num(mse) << "\n";
        } else {
            print_table(out, {"metric", "value"}, {{"mse", num(mse)}});
        }
        return kExitOk;
    }
    const metrics::ConfusionMatrix cm = metrics::evaluate_confusion(model, d);
    const metrics::ClassificationMetrics m = metrics::metric_suite(cm);
    const std::pair<const char *, metrics::Ratio> items[] = {
        {"accuracy", m.accuracy},       {"precision", m.precision}, {"sensitivity", m.sensitivity},
        {"specificity", m.specificity}, {"f1", m.f1}};
    std::vector<std::vector<std::string>> rows;
    for (const auto &[name, r] : items) {
        rows.push_back({name, num(r.value), r.undefined ? "undefined" : ""});
    }
    print_rows(out, a.format, {"metric", "value", "note"}, rows);
    if (a.format == Format::table) {
        out << "confusion: tp=" << cm.tp << " fp=" << cm.fp << " tn=" << cm.tn
            << " fn=" << cm.fn << "\n";
    }
    return kExitOk;
}

// ---- crossval -------------------------------------------------------------

struct CrossvalArgs {
    DataFlags data;
    TrainerFlags trainer;
    metrics::Task task = metrics::Task::classification;
    std::size_t k = 10;
    std::uint64_t seed = 0;
    bool no_stratify = false;
    bool validation = false;
    Format format = Format::table;
};

int cmd_crossval(const CrossvalArgs &a, std::ostream &out, std::ostream &err) {
    const data::Dataset d = a.data.load(err);
    if (a.k < 2 || a.k > d.size()) {
        throw UsageError("--k must lie in [2, " + std::to_string(d.size()) + "], got " +
                         std::to_string(a.k));
    }
    metrics::CrossvalSpec spec;
    spec.trainer = a.trainer.spec();
    spec.preprocessing = a.trainer.preprocessing();
    spec.task = a.task;
    spec.k = a.k;
    spec.seed = a.seed;
    spec.stratified = !a.no_stratify;
    spec.validation = a.validation;
    const metrics::CrossvalResult r = metrics::crossval(d, spec);
    std::vector<std::vector<std::string>> rows;
    for (const auto &m : r.metrics) {
        rows.push_back({m.name, num(m.mean), num(m.stddev)});
    }
    print_rows(out, a.format, {"metric", "mean", "std"}, rows);
    return kExitOk;
}

// ---- reproduce ------------------------------------------------------------

fs::path recipes_dir(const std::string &flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char *env = std::getenv("SQQNN_RECIPES_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return SQQNN_DEFAULT_RECIPES_DIR;
}

experiment::Recipe find_recipe(const std::string &name, const std::string &dir_flag) {
    const fs::path direct(name);
    if (direct.extension() == ".json" && fs::exists(direct)) {
        return experiment::load_recipe(direct);
    }
    const fs::path path = recipes_dir(dir_flag) / (name + ".json");
    if (!fs::exists(path)) {
        throw UsageError("unknown recipe '" + name + "' (looked for " + path.string() + ")");
    }
    return experiment::load_recipe(path);
}

struct ReproduceArgs {
    std::string recipe;
    std::string recipes_dir;
    std::string data_dir;
    std::vector<int> pair;
    Format format = Format::table;
    fs::path curves_dir;
};

int cmd_reproduce(const ReproduceArgs &a, std::ostream &out, std::ostream &err) {
    const experiment::Recipe recipe = find_recipe(a.recipe, a.recipes_dir);
    experiment::RunOptions options;
    if (!a.data_dir.empty()) {
        options.data_dir = a.data_dir;
    }
    if (!a.pair.empty()) {
        if (a.pair.size() != 2 || a.pair[0] == a.pair[1] || a.pair[0] < 0 || a.pair[0] > 9 ||
            a.pair[1] < 0 || a.pair[1] > 9) {
            throw UsageError("--pair expects two different digits");
        }
        if (recipe.dataset.kind != "mnist") {
            throw UsageError("--pair only applies to the MNIST recipe");
        }
        options.pair = std::make_pair(a.pair[0], a.pair[1]);
    }
    options.log = &err;
    const experiment::Report report = experiment::run(recipe, options);

    std::vector<std::vector<std::string>> rows;
    for (const auto &r : report.rows) {
        rows.push_back({r.group, r.metric, num(r.mean), num(r.stddev)});
    }
    print_rows(out, a.format, {"group", "metric", "mean", "std"}, rows);
    if (!a.curves_dir.empty()) {
        fs::create_directories(a.curves_dir);
        for (const auto &c : report.loss_curves) {
            std::string file = recipe.name + "-" + c.group + ".csv";
            std::replace(file.begin(), file.end(), '=', '_');
            std::replace(file.begin(), file.end(), ',', '_');
            write_loss_history(a.curves_dir / file, c.values);
        }
    }
    out << "\n";
    for (const auto &o : report.outcomes) {
        out << (o.passed ? "PASS " : "FAIL ") << o.describe() << "\n";
    }
    out << recipe.name << ": " << (report.passed() ? "PASS" : "FAIL") << "\n";
    return report.passed() ? kExitOk : kExitFailure;
}

// ---- fetch ----------------------------------------------------------------

struct FetchArgs {
    std::string recipe;
    std::string recipes_dir;
    std::string data_dir;
    bool download = false;
};

int cmd_fetch(const FetchArgs &a, std::ostream &out, std::ostream &err) {
    const experiment::Recipe recipe = find_recipe(a.recipe, a.recipes_dir);
    const fs::path dir = a.data_dir.empty() ? experiment::default_data_dir() : fs::path(a.data_dir);
    if (recipe.fetch.urls.empty()) {
        out << recipe.name << " generates its data; nothing to fetch\n";
        return kExitOk;
    }
    out << "data directory: " << dir.string() << "\n";
    for (const auto &f : recipe.fetch.files) {
        out << "  needs " << f << (fs::exists(dir / f) ? " (present)" : " (missing)") << "\n";
    }
    for (const auto &u : recipe.fetch.urls) {
        out << "  curl -L -O --output-dir " << dir.string() << " " << u << "\n";
    }
    if (!recipe.fetch.instructions.empty()) {
        out << recipe.fetch.instructions << "\n";
    }
    if (!a.download) {
        return kExitOk;
    }
    fs::create_directories(dir);
    for (const auto &u : recipe.fetch.urls) {
        const std::string cmd = "curl -fL -O --output-dir '" + dir.string() + "' '" + u + "'";
        if (std::system(cmd.c_str()) != 0) {
            err << "download failed: " << u << "\n";
            return kExitIo;
        }
    }
    out << "downloaded; finish with the instructions above\n";
    return kExitOk;
}

// ---- grid -----------------------------------------------------------------

struct GridArgs {
    fs::path model;
    std::vector<double> x_range{-1.5, 2.5};
    std::vector<double> y_range{-1.0, 1.5};
    std::size_t steps = 101;
};

int cmd_grid(const GridArgs &a, std::ostream &out) {
    const train::TrainedModel model = store::load(a.model);
    if (model.dim != 2) {
        throw UsageError("grid needs a two-feature model, this one has " +
                         std::to_string(model.dim));
    }
    if (a.x_range.size() != 2 || a.y_range.size() != 2 || a.steps < 2) {
        throw UsageError("grid needs --x MIN MAX, --y MIN MAX and --steps >= 2");
    }
    out << "x1,x2,output,class\n";
    const double last = static_cast<double>(a.steps - 1);
    for (std::size_t i = 0; i < a.steps; ++i) {
        const double y = a.y_range[0] + (a.y_range[1] - a.y_range[0]) * static_cast<double>(i) / last;
        for (std::size_t j = 0; j < a.steps; ++j) {
            const double x =
                a.x_range[0] + (a.x_range[1] - a.x_range[0]) * static_cast<double>(j) / last;
            const double p[2] = {x, y};
            const double v = train::predict(model, p);
            out << num(x) << "," << num(y) << "," << num(v) << "," << (v >= 0.0 ? 1 : -1)
                << "\n";
        }
    }
    return kExitOk;
}

int exit_code_for(Errc code) {
    switch (code) {
    case Errc::invalid_argument:
        return kExitUsage;
    case Errc::io_error:
    case Errc::parse_error:
    case Errc::unsupported_format:
    case Errc::count_mismatch:
        return kExitIo;
    case Errc::numeric_failure:
    case Errc::training_diverged:
    case Errc::invalid_label:
        return kExitFailure;
    }
    return kExitFailure;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Single-qubit quantum neural network toolkit", "sqqnn"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sqqnn 1.0.0");

    GenArgs gen;
    auto *gen_cmd = app.add_subcommand("gen", "Write a synthetic dataset as CSV");
    gen_cmd->add_option("dataset", gen.name, "and, or, xor, nand, nor, xnor, sinc or two-moons")
        ->required();
    gen_cmd->add_option("--out", gen.out, "Output file (sinc writes -train/-val/-test files)");
    gen_cmd->add_option("--n", gen.n, "Samples (two-moons)")->check(CLI::Range(2, 100000000));
    gen_cmd->add_option("--noise", gen.noise, "Noise level (two-moons, sinc sigma)")
        ->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    gen_cmd->add_option("--half-width", gen.half_width, "sinc domain half width")
        ->check(CLI::PositiveNumber);

    TrainArgs tr;
    auto *train_cmd = app.add_subcommand("train", "Train a model on a CSV dataset");
    tr.data.add(train_cmd);
    tr.trainer.add(train_cmd);
    train_cmd->add_option("--out", tr.model_out, "Model file to write");
    train_cmd->add_option("--loss-history", tr.loss_history, "CSV of loss per epoch (gd)");

    EvalArgs ev;
    auto *eval_cmd = app.add_subcommand("eval", "Evaluate a saved model on a CSV dataset");
    eval_cmd->add_option("--model", ev.model, "Model file")->required();
    ev.data.add(eval_cmd);
    eval_cmd->add_option("--task", ev.task, "regression or classification")
        ->transform(CLI::CheckedTransformer(std::map<std::string, metrics::Task>{
            {"regression", metrics::Task::regression},
            {"classification", metrics::Task::classification}}));
    add_format_option(eval_cmd, ev.format);

    CrossvalArgs cv;
    auto *cv_cmd = app.add_subcommand("crossval", "k-fold cross-validation");
    cv.data.add(cv_cmd);
    cv.trainer.add(cv_cmd);
    cv_cmd->add_option("--task", cv.task, "regression or classification")
        ->transform(CLI::CheckedTransformer(std::map<std::string, metrics::Task>{
            {"regression", metrics::Task::regression},
            {"classification", metrics::Task::classification}}));
    cv_cmd->add_option("--k", cv.k, "Number of folds");
    cv_cmd->add_option("--cv-seed", cv.seed, "Fold assignment seed");
    cv_cmd->add_flag("--no-stratify", cv.no_stratify, "Plain folds for classification");
    cv_cmd->add_flag("--validation", cv.validation, "Also report a validation-fold MSE");
    add_format_option(cv_cmd, cv.format);

    ReproduceArgs rp;
    auto *rp_cmd = app.add_subcommand("reproduce", "Run a stored experiment recipe");
    rp_cmd->add_option("recipe", rp.recipe, "Recipe name or path to a recipe file")->required();
    rp_cmd->add_option("--recipes-dir", rp.recipes_dir, "Directory of recipe files");
    rp_cmd->add_option("--data-dir", rp.data_dir, "Dataset directory (default $SQQNN_DATA_DIR or ./data)");
    rp_cmd->add_option("--pair", rp.pair, "MNIST digit pair")->expected(2);
    rp_cmd->add_option("--curves-dir", rp.curves_dir, "Write loss curves here as CSV");
    add_format_option(rp_cmd, rp.format);

    FetchArgs fe;
    auto *fetch_cmd = app.add_subcommand("fetch", "Show where a recipe's data comes from");
    fetch_cmd->add_option("recipe", fe.recipe, "Recipe name")->required();
    fetch_cmd->add_option("--recipes-dir", fe.recipes_dir, "Directory of recipe files");
    fetch_cmd->add_option("--data-dir", fe.data_dir, "Dataset directory");
    fetch_cmd->add_flag("--download", fe.download, "Run the downloads with curl");

    GridArgs gr;
    auto *grid_cmd =
        app.add_subcommand("grid", "Decision-boundary grid of a two-feature model as CSV");
    grid_cmd->add_option("--model", gr.model, "Model file")->required();
    grid_cmd->add_option("--x", gr.x_range, "x1 range")->expected(2);
    grid_cmd->add_option("--y", gr.y_range, "x2 range")->expected(2);
    grid_cmd->add_option("--steps", gr.steps, "Points per axis");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen_cmd->parsed()) {
            return cmd_gen(gen, out);
        }
        if (train_cmd->parsed()) {
            return cmd_train(tr, out, err);
        }
        if (eval_cmd->parsed()) {
            return cmd_eval(ev, out, err);
        }
        if (cv_cmd->parsed()) {
            return cmd_crossval(cv, out, err);
        }
        if (rp_cmd->parsed()) {
            return cmd_reproduce(rp, out, err);
        }
        if (fetch_cmd->parsed()) {
            return cmd_fetch(fe, out, err);
        }
        if (grid_cmd->parsed()) {
            return cmd_grid(gr, out);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const experiment::MissingData &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const TrainingDiverged &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::filesystem::filesystem_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}

} // namespace sqqnn::cli
