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
#include "sqqnn/data.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "sqqnn/errors.hpp"
#include "sqqnn/features.hpp"

namespace sqqnn::data {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    s = s.substr(first, last - first + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string> split_fields(const std::string &line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        const auto end = comma == std::string::npos ? line.size() : comma;
        out.emplace_back(trim(std::string_view(line).substr(start, end - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

bool is_missing(std::string_view cell) { return cell.empty() || cell == "?"; }

bool parse_double(std::string_view cell, double &value) {
    if (!cell.empty() && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    const auto *end = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
    return ec == std::errc{} && ptr == end && std::isfinite(value);
}

std::size_t resolve_column(const std::string &spec, const std::vector<std::string> &names,
                           const std::filesystem::path &path) {
    long long index = 0;
    const auto *end = spec.data() + spec.size();
    const auto [ptr, ec] = std::from_chars(spec.data(), end, index);
    const auto width = static_cast<long long>(names.size());
    if (ec == std::errc{} && ptr == end) {
        if (index < 0) {
            index += width;
        }
        if (index < 0 || index >= width) {
            fail(Errc::invalid_argument, "column index " + spec + " is outside the " +
                                             std::to_string(names.size()) + " columns of " +
                                             path.string());
        }
        return static_cast<std::size_t>(index);
    }
    const auto it = std::find(names.begin(), names.end(), spec);
    if (it == names.end()) {
        fail(Errc::invalid_argument, "column '" + spec + "' not found in " + path.string());
    }
    return static_cast<std::size_t>(std::distance(names.begin(), it));
}

std::uint32_t read_be32(const std::vector<unsigned char> &bytes, std::size_t offset) {
    return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
           (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void write_be32(std::ostream &out, std::uint32_t v) {
    const std::array<char, 4> b{static_cast<char>((v >> 24) & 0xff),
                                static_cast<char>((v >> 16) & 0xff),
                                static_cast<char>((v >> 8) & 0xff), static_cast<char>(v & 0xff)};
    out.write(b.data(), b.size());
}

std::vector<unsigned char> read_all(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(Errc::io_error, "cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Dataset make_dataset(std::size_t n, std::size_t p, std::string provenance) {
    Dataset d;
    d.inputs = RealMatrix(n, p);
    d.targets.assign(n, 0.0);
    d.provenance = std::move(provenance);
    return d;
}

} // namespace

void Dataset::validate() const {
    require(size() >= 1, Errc::invalid_argument, "dataset is empty");
    require(inputs.rows() == targets.size(), Errc::invalid_argument,
            "dataset inputs and targets disagree on the sample count");
    require(inputs.all_finite(), Errc::invalid_argument, "dataset has non-finite inputs");
    require(std::all_of(targets.begin(), targets.end(),
                        [](double y) { return std::isfinite(y); }),
            Errc::invalid_argument, "dataset has non-finite targets");
}

void Dataset::require_unit_targets() const {
    validate();
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < -1.0 || targets[i] > 1.0) {
            std::ostringstream msg;
            msg << "target " << targets[i] << " at row " << i << " lies outside [-1, 1]";
            fail(Errc::invalid_label, msg.str());
        }
    }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    Dataset out = make_dataset(indices.size(), dim(), provenance);
    out.feature_names = feature_names;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const auto src = inputs.row(indices[i]);
        std::copy(src.begin(), src.end(), out.inputs.row(i).begin());
        out.targets[i] = targets[indices[i]];
    }
    return out;
}

CsvLoadResult load_csv(const std::filesystem::path &path, const CsvOptions &options) {
    std::ifstream in(path);
    if (!in) {
        fail(Errc::io_error, "cannot open " + path.string());
    }

    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
    std::vector<std::string> names;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split_fields(line);
        if (options.has_header && names.empty()) {
            names = std::move(fields);
            continue;
        }
        if (names.empty()) {
            for (std::size_t j = 0; j < fields.size(); ++j) {
                names.push_back(std::to_string(j));
            }
        }
        if (fields.size() != names.size()) {
            std::ostringstream msg;
            msg << path.string() << ":" << line_no << ": expected " << names.size()
                << " fields, found " << fields.size();
            fail(Errc::parse_error, msg.str());
        }
        rows.push_back(std::move(fields));
        line_numbers.push_back(line_no);
    }
    if (rows.empty()) {
        fail(Errc::parse_error, path.string() + " has no data rows");
    }

    const std::size_t target = resolve_column(options.target, names, path);
    std::set<std::size_t> ignored;
    for (const auto &spec : options.ignore_columns) {
        ignored.insert(resolve_column(spec, names, path));
    }
    ignored.erase(target);

    CsvLoadResult result;
    if (options.missing == MissingPolicy::drop_columns) {
        for (std::size_t j = 0; j < names.size(); ++j) {
            if (j == target || ignored.contains(j)) {
                continue;
            }
            const bool any_missing = std::any_of(
                rows.begin(), rows.end(), [j](const auto &r) { return is_missing(r[j]); });
            if (any_missing) {
                ignored.insert(j);
                result.dropped_columns.push_back(names[j]);
            }
        }
    }

    std::vector<std::size_t> features;
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (j != target && !ignored.contains(j)) {
            features.push_back(j);
        }
    }
    if (features.empty()) {
        fail(Errc::invalid_argument, path.string() + " has no feature columns left");
    }

    std::vector<double> values;
    std::vector<double> targets;
    values.reserve(rows.size() * features.size());
    std::vector<double> row_values(features.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto &fields = rows[r];
        bool missing = is_missing(fields[target]);
        for (std::size_t f = 0; f < features.size() && !missing; ++f) {
            const std::string &cell = fields[features[f]];
            if (is_missing(cell)) {
                missing = true;
            } else if (!parse_double(cell, row_values[f])) {
                std::ostringstream msg;
                msg << path.string() << ":" << line_numbers[r] << ": non-numeric value '"
                    << cell << "' in column '" << names[features[f]] << "'";
                fail(Errc::parse_error, msg.str());
            }
        }
        if (missing) {
            ++result.dropped_rows;
            continue;
        }
        double y = 0.0;
        const std::string &cell = fields[target];
        if (const auto it = options.label_map.find(cell); it != options.label_map.end()) {
            y = it->second;
        } else if (!parse_double(cell, y)) {
            std::ostringstream msg;
            msg << path.string() << ":" << line_numbers[r] << ": target value '" << cell
                << "' is neither numeric nor in the label map";
            fail(Errc::parse_error, msg.str());
        }
        values.insert(values.end(), row_values.begin(), row_values.end());
        targets.push_back(y);
    }
    if (targets.empty()) {
        fail(Errc::invalid_argument, path.string() + ": every row had missing values");
    }

    Dataset &d = result.dataset;
    d.inputs = RealMatrix(targets.size(), features.size(), std::move(values));
    d.targets = std::move(targets);
    for (std::size_t j : features) {
        d.feature_names.push_back(names[j]);
    }
    d.provenance = path.filename().string();
    return result;
}

void write_csv(const Dataset &dataset, const std::filesystem::path &path) {
    dataset.validate();
    std::ofstream out(path);
    if (!out) {
        fail(Errc::io_error, "cannot write " + path.string());
    }
    out.precision(17);
    for (std::size_t j = 0; j < dataset.dim(); ++j) {
        if (j < dataset.feature_names.size()) {
            out << dataset.feature_names[j];
        } else {
            out << "x" << (j + 1);
        }
        out << ",";
    }
    out << "y\n";
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        for (double v : dataset.inputs.row(i)) {
            out << v << ",";
        }
        out << dataset.targets[i] << "\n";
    }
    if (!out) {
        fail(Errc::io_error, "failed while writing " + path.string());
    }
}

RealMatrix LabeledImages::image(std::size_t i) const {
    require(i < count, Errc::invalid_argument, "image index out of range");
    RealMatrix out(rows, cols);
    const std::size_t stride = rows * cols;
    auto dst = out.data();
    for (std::size_t k = 0; k < stride; ++k) {
        dst[k] = static_cast<double>(pixels[i * stride + k]) / 255.0;
    }
    return out;
}

LabeledImages load_mnist_idx(const std::filesystem::path &images_path,
                             const std::filesystem::path &labels_path) {
    const auto img = read_all(images_path);
    const auto lab = read_all(labels_path);
    if (img.size() < 16) {
        fail(Errc::parse_error, images_path.string() + ": truncated IDX header");
    }
    if (lab.size() < 8) {
        fail(Errc::parse_error, labels_path.string() + ": truncated IDX header");
    }
    if (read_be32(img, 0) != kIdxImagesMagic) {
        fail(Errc::parse_error, images_path.string() + ": bad IDX image magic number");
    }
    if (read_be32(lab, 0) != kIdxLabelsMagic) {
        fail(Errc::parse_error, labels_path.string() + ": bad IDX label magic number");
    }

    LabeledImages set;
    set.count = read_be32(img, 4);
    set.rows = read_be32(img, 8);
    set.cols = read_be32(img, 12);
    const std::size_t label_count = read_be32(lab, 4);
    if (label_count != set.count) {
        std::ostringstream msg;
        msg << "IDX count mismatch: " << set.count << " images but " << label_count
            << " labels";
        fail(Errc::count_mismatch, msg.str());
    }
    const std::size_t pixel_bytes = set.count * set.rows * set.cols;
    if (img.size() < 16 + pixel_bytes) {
        fail(Errc::parse_error, images_path.string() + ": truncated pixel data");
    }
    if (lab.size() < 8 + label_count) {
        fail(Errc::parse_error, labels_path.string() + ": truncated label data");
    }
    set.pixels.assign(img.begin() + 16, img.begin() + 16 + static_cast<std::ptrdiff_t>(pixel_bytes));
    set.labels.assign(lab.begin() + 8, lab.begin() + 8 + static_cast<std::ptrdiff_t>(label_count));
    return set;
}

void write_mnist_idx(const LabeledImages &set, const std::filesystem::path &images_path,
                     const std::filesystem::path &labels_path) {
    require(set.pixels.size() == set.count * set.rows * set.cols &&
                set.labels.size() == set.count,
            Errc::invalid_argument, "image set buffers disagree with its header");
    std::ofstream img(images_path, std::ios::binary);
    std::ofstream lab(labels_path, std::ios::binary);
    if (!img || !lab) {
        fail(Errc::io_error, "cannot write IDX files");
    }
    write_be32(img, kIdxImagesMagic);
    write_be32(img, static_cast<std::uint32_t>(set.count));
    write_be32(img, static_cast<std::uint32_t>(set.rows));
    write_be32(img, static_cast<std::uint32_t>(set.cols));
    img.write(reinterpret_cast<const char *>(set.pixels.data()),
              static_cast<std::streamsize>(set.pixels.size()));
    write_be32(lab, kIdxLabelsMagic);
    write_be32(lab, static_cast<std::uint32_t>(set.count));
    lab.write(reinterpret_cast<const char *>(set.labels.data()),
              static_cast<std::streamsize>(set.labels.size()));
}

Dataset filter_pair(const LabeledImages &images, int a, int b, const DctOptions &dct) {
    require(a != b, Errc::invalid_argument, "filter_pair needs two different digits");
    require(a >= 0 && a <= 9 && b >= 0 && b <= 9, Errc::invalid_argument,
            "filter_pair digits must lie in 0-9");
    require(images.rows == images.cols && images.rows >= 1, Errc::invalid_argument,
            "filter_pair needs square images");
    const int positive = std::min(a, b);

    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < images.count; ++i) {
        const int label = images.labels[i];
        if (label == a || label == b) {
            picked.push_back(i);
        }
    }
    if (picked.empty()) {
        fail(Errc::invalid_argument, "no images carry digit " + std::to_string(a) +
                                         " or " + std::to_string(b));
    }

    const features::Dct2 transform(images.rows);
    const std::size_t side = images.rows;
    const std::size_t keep = (dct.keep_block == 0 || dct.keep_block >= side) ? side : dct.keep_block;
    Dataset d = make_dataset(picked.size(), keep * keep,
                             "mnist-" + std::to_string(std::min(a, b)) + "-" +
                                 std::to_string(std::max(a, b)));
    for (std::size_t r = 0; r < picked.size(); ++r) {
        const auto coeffs = features::flatten_block(transform.forward(images.image(picked[r])), keep);
        std::copy(coeffs.begin(), coeffs.end(), d.inputs.row(r).begin());
        d.targets[r] = images.labels[picked[r]] == positive ? 1.0 : -1.0;
    }
    return d;
}

LogicGate parse_logic_gate(const std::string &name) {
    std::string lower;
    std::transform(name.begin(), name.end(), std::back_inserter(lower),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (LogicGate g : all_logic_gates()) {
        if (to_string(g) == lower) {
            return g;
        }
    }
    fail(Errc::invalid_argument, "unknown logic gate '" + name + "'");
}

std::string to_string(LogicGate gate) {
    switch (gate) {
    case LogicGate::and_gate:
        return "and";
    case LogicGate::or_gate:
        return "or";
    case LogicGate::xor_gate:
        return "xor";
    case LogicGate::nand_gate:
        return "nand";
    case LogicGate::nor_gate:
        return "nor";
    case LogicGate::xnor_gate:
        return "xnor";
    }
    return "unknown";
}

std::vector<LogicGate> all_logic_gates() {
    return {LogicGate::and_gate,  LogicGate::or_gate,  LogicGate::xor_gate,
            LogicGate::nand_gate, LogicGate::nor_gate, LogicGate::xnor_gate};
}

Dataset gen_logic_gate(LogicGate gate) {
    Dataset d = make_dataset(4, 2, "gate-" + to_string(gate));
    d.feature_names = {"a", "b"};
    const std::array<std::array<bool, 2>, 4> inputs{{{false, false}, {false, true},
                                                     {true, false}, {true, true}}};
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const bool a = inputs[i][0];
        const bool b = inputs[i][1];
        bool out = false;
        switch (gate) {
        case LogicGate::and_gate: out = a && b; break;
        case LogicGate::or_gate: out = a || b; break;
        case LogicGate::xor_gate: out = a != b; break;
        case LogicGate::nand_gate: out = !(a && b); break;
        case LogicGate::nor_gate: out = !(a || b); break;
        case LogicGate::xnor_gate: out = a == b; break;
        }
        d.inputs(i, 0) = a ? 1.0 : -1.0;
        d.inputs(i, 1) = b ? 1.0 : -1.0;
        d.targets[i] = out ? 1.0 : -1.0;
    }
    return d;
}

double sinc(double x) noexcept { return x == 0.0 ? 1.0 : std::sin(x) / x; }

SincSplits gen_sinc(const SincOptions &options) {
    require(options.noise_sigma >= 0.0, Errc::invalid_argument, "sinc noise must be >= 0");
    require(options.half_width > 0.0, Errc::invalid_argument, "sinc interval must be non-empty");
    const std::size_t total = options.n_train + options.n_val + options.n_test;
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uniform(-options.half_width, options.half_width);
    std::vector<double> xs(total);
    for (double &x : xs) {
        x = uniform(rng);
    }
    // noise is drawn after every abscissa so a noisy run shares x with the clean one
    std::vector<double> ys(total);
    std::normal_distribution<double> gauss(0.0, options.noise_sigma > 0.0 ? options.noise_sigma : 1.0);
    for (std::size_t i = 0; i < total; ++i) {
        ys[i] = sinc(xs[i]) + (options.noise_sigma > 0.0 ? gauss(rng) : 0.0);
    }

    auto slice = [&](std::size_t begin, std::size_t count, const char *name) {
        Dataset d = make_dataset(count, 1, std::string("sinc-") + name);
        d.feature_names = {"x"};
        for (std::size_t i = 0; i < count; ++i) {
            d.inputs(i, 0) = xs[begin + i];
            d.targets[i] = ys[begin + i];
        }
        return d;
    };
    return {slice(0, options.n_train, "train"), slice(options.n_train, options.n_val, "val"),
            slice(options.n_train + options.n_val, options.n_test, "test")};
}

Dataset gen_two_moons(std::size_t n, double noise, std::uint64_t seed) {
    require(n >= 2, Errc::invalid_argument, "two moons needs at least 2 samples");
    require(noise >= 0.0, Errc::invalid_argument, "two moons noise must be >= 0");
    const std::size_t n_lower = n / 2;
    const std::size_t n_upper = n - n_lower;
    auto param = [](std::size_t i, std::size_t count) {
        return count <= 1 ? 0.0
                          : std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(count - 1);
    };

    Dataset d = make_dataset(n, 2, "two-moons");
    d.feature_names = {"x1", "x2"};
    for (std::size_t i = 0; i < n_upper; ++i) {
        const double t = param(i, n_upper);
        d.inputs(i, 0) = std::cos(t);
        d.inputs(i, 1) = std::sin(t);
        d.targets[i] = 1.0;
    }
    for (std::size_t i = 0; i < n_lower; ++i) {
        const double t = param(i, n_lower);
        d.inputs(n_upper + i, 0) = 1.0 - std::cos(t);
        d.inputs(n_upper + i, 1) = 0.5 - std::sin(t);
        d.targets[n_upper + i] = -1.0;
    }

    std::mt19937_64 rng(seed);
    if (noise > 0.0) {
        std::normal_distribution<double> gauss(0.0, noise);
        for (double &v : d.inputs.data()) {
            v += gauss(rng);
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Dataset shuffled = d.subset(order);
    shuffled.provenance = d.provenance;
    return shuffled;
}

std::size_t FoldPlan::n() const noexcept {
    std::size_t total = 0;
    for (const auto &f : folds) {
        total += f.size();
    }
    return total;
}

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
    require(fold < folds.size(), Errc::invalid_argument, "fold index out of range");
    return folds[fold];
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
    require(fold < folds.size(), Errc::invalid_argument, "fold index out of range");
    std::vector<std::size_t> out;
    out.reserve(n() - folds[fold].size());
    for (std::size_t f = 0; f < folds.size(); ++f) {
        if (f != fold) {
            out.insert(out.end(), folds[f].begin(), folds[f].end());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void check_fold_count(std::size_t n, std::size_t k) {
    require(k >= 2, Errc::invalid_argument, "k-fold needs k >= 2");
    if (k > n) {
        fail(Errc::invalid_argument, "k-fold with k=" + std::to_string(k) +
                                         " exceeds the " + std::to_string(n) + " samples");
    }
}

} // namespace

FoldPlan kfold_plan(std::size_t n, std::size_t k, std::uint64_t seed) {
    check_fold_count(n, k);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    FoldPlan plan{k, seed, false, std::vector<std::vector<std::size_t>>(k)};
    std::size_t next = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = n / k + (f < n % k ? 1 : 0);
        plan.folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(next),
                             order.begin() + static_cast<std::ptrdiff_t>(next + size));
        std::sort(plan.folds[f].begin(), plan.folds[f].end());
        next += size;
    }
    return plan;
}

FoldPlan stratified_kfold_plan(std::span<const double> labels, std::size_t k,
                               std::uint64_t seed) {
    check_fold_count(labels.size(), k);
    std::map<double, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        by_label[labels[i]].push_back(i);
    }
    std::mt19937_64 rng(seed);
    FoldPlan plan{k, seed, true, std::vector<std::vector<std::size_t>>(k)};
    std::size_t fold = 0;
    for (auto &[label, members] : by_label) {
        std::shuffle(members.begin(), members.end(), rng);
        for (std::size_t idx : members) {
            plan.folds[fold].push_back(idx);
            fold = (fold + 1) % k;
        }
    }
    for (auto &f : plan.folds) {
        std::sort(f.begin(), f.end());
    }
    return plan;
}

std::pair<Dataset, Dataset> split(const Dataset &dataset, const FoldPlan &plan,
                                  std::size_t fold) {
    require(plan.n() == dataset.size(), Errc::invalid_argument,
            "fold plan was built for a different sample count");
    return {dataset.subset(plan.train_indices(fold)), dataset.subset(plan.test_indices(fold))};
}

} // namespace sqqnn::data
