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
#include <span>
#include <string>
#include <vector>

#include "sqqnn/data.hpp"
#include "sqqnn/train.hpp"

namespace sqqnn::metrics {

/// Counts with +1 as the positive class.
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    [[nodiscard]] std::size_t total() const noexcept { return tp + fp + tn + fn; }

    friend bool operator==(const ConfusionMatrix &, const ConfusionMatrix &) = default;
};

[[nodiscard]] ConfusionMatrix confusion(std::span<const int> predicted,
                                        std::span<const int> actual);

/// A ratio whose denominator may vanish; undefined values report 0.
struct Ratio {
    double value = 0.0;
    bool undefined = false;
};

struct ClassificationMetrics {
    Ratio accuracy;
    Ratio precision;
    Ratio sensitivity;
    Ratio specificity;
    Ratio f1;
};

[[nodiscard]] ClassificationMetrics metric_suite(const ConfusionMatrix &cm);

/// Per-fold values with their mean and sample (n - 1) standard deviation.
struct MetricSummary {
    std::string name;
    std::vector<double> values;
    double mean = 0.0;
    double stddev = 0.0;
};

[[nodiscard]] MetricSummary summarize(std::string name, std::vector<double> values);

enum class Task { regression, classification };

[[nodiscard]] std::string to_string(Task task);
[[nodiscard]] Task parse_task(const std::string &name);

/// Labels of a classification dataset as {-1, +1}; anything else throws.
[[nodiscard]] std::vector<int> class_labels(const data::Dataset &dataset);

[[nodiscard]] ConfusionMatrix evaluate_confusion(const train::TrainedModel &model,
                                                 const data::Dataset &dataset);
[[nodiscard]] ClassificationMetrics evaluate_classification(const train::TrainedModel &model,
                                                            const data::Dataset &dataset);
/// MSE in the model's scaled target space.
[[nodiscard]] double evaluate_regression(const train::TrainedModel &model,
                                         const data::Dataset &dataset);

struct CrossvalSpec {
    train::TrainerSpec trainer;
    train::Preprocessing preprocessing;
    Task task = Task::classification;
    std::size_t k = 10;
    std::uint64_t seed = 0;
    /// Classification folds preserve label ratios when set.
    bool stratified = true;
    /// Regression only: hold fold (i + 1) mod k out of training as a
    /// validation split and report its MSE.
    bool validation = false;
};

struct CrossvalResult {
    data::FoldPlan plan;
    /// accuracy, precision, sensitivity, specificity, f1 for classification;
    /// train_mse, [val_mse,] test_mse for regression.
    std::vector<MetricSummary> metrics;
    /// Number of folds in which a classification ratio was undefined, by
    /// metric position.
    std::vector<std::size_t> undefined_counts;

    [[nodiscard]] const MetricSummary &metric(const std::string &name) const;
};

/// The fold plan crossval uses for `dataset`.
[[nodiscard]] data::FoldPlan crossval_plan(const data::Dataset &dataset, const CrossvalSpec &spec);

/// Training and evaluation sets for one fold of `plan`; validation is empty
/// unless spec.validation is set.
struct FoldSplit {
    data::Dataset train;
    data::Dataset validation;
    data::Dataset test;
};
[[nodiscard]] FoldSplit fold_split(const data::Dataset &dataset, const data::FoldPlan &plan,
                                   std::size_t fold, const CrossvalSpec &spec);

[[nodiscard]] CrossvalResult crossval(const data::Dataset &dataset, const CrossvalSpec &spec);

} // namespace sqqnn::metrics
