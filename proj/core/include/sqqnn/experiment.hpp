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
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqqnn/data.hpp"
#include "sqqnn/errors.hpp"
#include "sqqnn/metrics.hpp"
#include "sqqnn/train.hpp"

namespace sqqnn::experiment {

/// Where the dataset behind a recipe comes from.
struct DatasetSpec {
    /// logic-gates, sinc, two-moons, csv or mnist.
    std::string kind;

    std::vector<std::string> gates;

    /// sinc: one run per noise level; two-moons uses the first entry.
    std::vector<double> noise{0.0};
    std::size_t n_train = 800;
    std::size_t n_val = 100;
    std::size_t n_test = 100;
    double half_width = 10.0;
    std::uint64_t seed = 0;
    std::uint64_t test_seed = 1;

    /// csv: file name relative to the data directory.
    std::string file;
    data::CsvOptions csv;

    std::string images_file;
    std::string labels_file;
    std::vector<std::pair<int, int>> pairs;
    std::size_t dct_keep = 0;
};

struct EvaluationSpec {
    /// train (fit and score the training set), holdout or crossval.
    std::string protocol = "holdout";
    metrics::Task task = metrics::Task::regression;
    std::size_t k = 10;
    std::uint64_t seed = 0;
    bool stratified = true;
    bool validation = false;
};

/// One expected-metric check. `group` selects a result group ("*" means
/// every group); the check is either a [min, max] window on the chosen
/// statistic or an ordering against the same metric of another group.
struct Assertion {
    std::string group = "*";
    std::string metric;
    std::string stat = "mean";
    std::optional<double> min;
    std::optional<double> max;
    std::optional<std::string> greater_than;
    std::string note;
};

struct FetchInfo {
    std::vector<std::string> files;
    std::vector<std::string> urls;
    std::string instructions;
};

struct Recipe {
    static constexpr int kVersion = 1;

    int version = kVersion;
    std::string name;
    std::string description;
    DatasetSpec dataset;
    train::Preprocessing preprocessing;
    train::TrainerSpec trainer;
    std::vector<std::size_t> degrees{1};
    EvaluationSpec evaluation;
    std::vector<Assertion> assertions;
    FetchInfo fetch;
};

[[nodiscard]] Recipe parse_recipe(const std::string &text);
[[nodiscard]] Recipe load_recipe(const std::filesystem::path &path);

/// Raised when a recipe's input files are absent from the data directory.
class MissingData : public Error {
  public:
    MissingData(std::vector<std::filesystem::path> missing, const FetchInfo &fetch);

    [[nodiscard]] const std::vector<std::filesystem::path> &missing() const noexcept {
        return missing_;
    }

  private:
    std::vector<std::filesystem::path> missing_;
};

/// $SQQNN_DATA_DIR when set, otherwise ./data.
[[nodiscard]] std::filesystem::path default_data_dir();

struct RunOptions {
    std::filesystem::path data_dir = default_data_dir();
    /// Restricts an mnist recipe to one digit pair.
    std::optional<std::pair<int, int>> pair;
    /// Progress lines go here when set.
    std::ostream *log = nullptr;
};

[[nodiscard]] std::vector<std::filesystem::path> required_files(const Recipe &recipe,
                                                               const RunOptions &options);

struct MetricRow {
    std::string group;
    std::string metric;
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t count = 1;
};

struct Curve {
    std::string group;
    std::vector<double> values;
};

struct Outcome {
    Assertion assertion;
    std::string group;
    double observed = 0.0;
    std::optional<double> reference;
    bool passed = false;

    [[nodiscard]] std::string describe() const;
};

struct Report {
    std::string recipe;
    std::vector<MetricRow> rows;
    std::vector<Curve> loss_curves;
    std::vector<Outcome> outcomes;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] const MetricRow *find(const std::string &group, const std::string &metric) const;
};

/// Runs every group of the recipe, then checks its assertions. Throws
/// MissingData before doing any work when inputs are absent.
[[nodiscard]] Report run(const Recipe &recipe, const RunOptions &options = {});

/// Re-evaluates the assertions against a report's rows.
[[nodiscard]] std::vector<Outcome> check(const std::vector<Assertion> &assertions,
                                         const std::vector<MetricRow> &rows);

} // namespace sqqnn::experiment
