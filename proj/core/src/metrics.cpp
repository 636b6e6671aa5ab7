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
#include "sqqnn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sqqnn/errors.hpp"

namespace sqqnn::metrics {

namespace {

Ratio ratio(std::size_t num, std::size_t den) {
    if (den == 0) {
        return {0.0, true};
    }
    return {static_cast<double>(num) / static_cast<double>(den), false};
}

} // namespace

ConfusionMatrix confusion(std::span<const int> predicted, std::span<const int> actual) {
    if (predicted.size() != actual.size()) {
        std::ostringstream msg;
        msg << "confusion: " << predicted.size() << " predictions vs " << actual.size()
            << " labels";
        fail(Errc::invalid_argument, msg.str());
    }
    require(!predicted.empty(), Errc::invalid_argument, "confusion: no samples");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const int p = predicted[i];
        const int a = actual[i];
        if ((p != 1 && p != -1) || (a != 1 && a != -1)) {
            fail(Errc::invalid_argument, "confusion: class values must be -1 or +1");
        }
        if (p == 1) {
            ++(a == 1 ? cm.tp : cm.fp);
        } else {
            ++(a == -1 ? cm.tn : cm.fn);
        }
    }
    return cm;
}

ClassificationMetrics metric_suite(const ConfusionMatrix &cm) {
    require(cm.total() > 0, Errc::invalid_argument, "metric_suite: empty confusion matrix");
    ClassificationMetrics m;
    m.accuracy = ratio(cm.tp + cm.tn, cm.total());
    m.precision = ratio(cm.tp, cm.tp + cm.fp);
    m.sensitivity = ratio(cm.tp, cm.tp + cm.fn);
    m.specificity = ratio(cm.tn, cm.tn + cm.fp);
    const double denom = m.precision.value + m.sensitivity.value;
    if (m.precision.undefined || m.sensitivity.undefined || denom == 0.0) {
        m.f1 = {0.0, true};
    } else {
        m.f1 = {2.0 * m.precision.value * m.sensitivity.value / denom, false};
    }
    return m;
}

MetricSummary summarize(std::string name, std::vector<double> values) {
    MetricSummary s;
    s.name = std::move(name);
    s.values = std::move(values);
    if (s.values.empty()) {
        return s;
    }
    const double n = static_cast<double>(s.values.size());
    s.mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) / n;
    if (s.values.size() > 1) {
        double sq = 0.0;
        for (double v : s.values) {
            sq += (v - s.mean) * (v - s.mean);
        }
        s.stddev = std::sqrt(sq / (n - 1.0));
    }
    return s;
}

std::string to_string(Task task) {
    return task == Task::regression ? "regression" : "classification";
}

Task parse_task(const std::string &name) {
    if (name == "regression") {
        return Task::regression;
    }
    if (name == "classification") {
        return Task::classification;
    }
    fail(Errc::invalid_argument, "unknown task '" + name + "'");
}

std::vector<int> class_labels(const data::Dataset &dataset) {
    std::vector<int> out(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const double y = dataset.targets[i];
        if (y != 1.0 && y != -1.0) {
            std::ostringstream msg;
            msg << "classification label " << y << " at row " << i << " is not -1 or +1";
            fail(Errc::invalid_label, msg.str());
        }
        out[i] = static_cast<int>(y);
    }
    return out;
}

ConfusionMatrix evaluate_confusion(const train::TrainedModel &model,
                                   const data::Dataset &dataset) {
    const std::vector<double> scores = train::predict_all(model, dataset);
    std::vector<int> predicted(scores.size());
    std::transform(scores.begin(), scores.end(), predicted.begin(),
                   [](double s) { return s >= 0.0 ? 1 : -1; });
    return confusion(predicted, class_labels(dataset));
}

ClassificationMetrics evaluate_classification(const train::TrainedModel &model,
                                              const data::Dataset &dataset) {
    return metric_suite(evaluate_confusion(model, dataset));
}

double evaluate_regression(const train::TrainedModel &model, const data::Dataset &dataset) {
    return train::mse_loss(train::predict_all(model, dataset),
                           train::scaled_targets(model, dataset));
}

const MetricSummary &CrossvalResult::metric(const std::string &name) const {
    for (const auto &m : metrics) {
        if (m.name == name) {
            return m;
        }
    }
    fail(Errc::invalid_argument, "no metric named '" + name + "'");
}

data::FoldPlan crossval_plan(const data::Dataset &dataset, const CrossvalSpec &spec) {
    if (spec.task == Task::classification && spec.stratified) {
        return data::stratified_kfold_plan(dataset.targets, spec.k, spec.seed);
    }
    return data::kfold_plan(dataset.size(), spec.k, spec.seed);
}

FoldSplit fold_split(const data::Dataset &dataset, const data::FoldPlan &plan, std::size_t fold,
                     const CrossvalSpec &spec) {
    FoldSplit out;
    out.test = dataset.subset(plan.test_indices(fold));
    if (!(spec.validation && spec.task == Task::regression)) {
        out.train = dataset.subset(plan.train_indices(fold));
        return out;
    }
    const std::size_t val_fold = (fold + 1) % plan.k;
    std::vector<std::size_t> train_idx;
    for (std::size_t f = 0; f < plan.k; ++f) {
        if (f != fold && f != val_fold) {
            train_idx.insert(train_idx.end(), plan.folds[f].begin(), plan.folds[f].end());
        }
    }
    std::sort(train_idx.begin(), train_idx.end());
    out.train = dataset.subset(train_idx);
    out.validation = dataset.subset(plan.folds[val_fold]);
    return out;
}

CrossvalResult crossval(const data::Dataset &dataset, const CrossvalSpec &spec) {
    dataset.validate();
    if (spec.validation && spec.task == Task::regression) {
        require(spec.k >= 3, Errc::invalid_argument,
                "cross-validation with a validation fold needs k >= 3");
    }
    CrossvalResult result;
    result.plan = crossval_plan(dataset, spec);

    const bool classify = spec.task == Task::classification;
    const std::vector<std::string> names =
        classify ? std::vector<std::string>{"accuracy", "precision", "sensitivity",
                                            "specificity", "f1"}
        : spec.validation ? std::vector<std::string>{"train_mse", "val_mse", "test_mse"}
                          : std::vector<std::string>{"train_mse", "test_mse"};
    std::vector<std::vector<double>> values(names.size());
    result.undefined_counts.assign(names.size(), 0);

    for (std::size_t fold = 0; fold < spec.k; ++fold) {
        const FoldSplit split = fold_split(dataset, result.plan, fold, spec);
        const train::FitResult fitted = train::fit(split.train, spec.trainer, spec.preprocessing);
        if (classify) {
            const ClassificationMetrics m = evaluate_classification(fitted.model, split.test);
            const Ratio all[] = {m.accuracy, m.precision, m.sensitivity, m.specificity, m.f1};
            for (std::size_t i = 0; i < names.size(); ++i) {
                values[i].push_back(all[i].value);
                result.undefined_counts[i] += all[i].undefined ? 1 : 0;
            }
        } else {
            std::size_t i = 0;
            values[i++].push_back(evaluate_regression(fitted.model, split.train));
            if (spec.validation) {
                values[i++].push_back(evaluate_regression(fitted.model, split.validation));
            }
            values[i].push_back(evaluate_regression(fitted.model, split.test));
        }
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
        result.metrics.push_back(summarize(names[i], std::move(values[i])));
    }
    return result;
}

} // namespace sqqnn::metrics
