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
#include "sqqnn/model_store.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "sqqnn/errors.hpp"

namespace sqqnn::store {

namespace {

using nlohmann::json;

constexpr const char *kMagic = "sqqnn-model";
constexpr const char *kCoefficientOrder = "bias, power-1 block x_1..x_p, ..., power-K block";

[[noreturn]] void bad_field(const std::string &field, const std::string &why) {
    fail(Errc::parse_error, "model file field '" + field + "': " + why);
}

const json &field(const json &obj, const std::string &key, const std::string &path) {
    if (!obj.is_object() || !obj.contains(key)) {
        bad_field(path + key, "missing");
    }
    return obj.at(key);
}

double real_field(const json &obj, const std::string &key, const std::string &path) {
    const json &v = field(obj, key, path);
    if (!v.is_string()) {
        bad_field(path + key, "expected a hex-float string");
    }
    try {
        return parse_hex_float(v.get<std::string>());
    } catch (const Error &) {
        bad_field(path + key, "not a number: " + v.get<std::string>());
    }
}

std::size_t count_field(const json &obj, const std::string &key, const std::string &path) {
    const json &v = field(obj, key, path);
    if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
        bad_field(path + key, "expected a positive integer");
    }
    return v.get<std::size_t>();
}

std::string string_field(const json &obj, const std::string &key, const std::string &path) {
    const json &v = field(obj, key, path);
    if (!v.is_string()) {
        bad_field(path + key, "expected a string");
    }
    return v.get<std::string>();
}

json real_array(std::span<const double> values) {
    json arr = json::array();
    for (double v : values) {
        arr.push_back(hex_float(v));
    }
    return arr;
}

std::vector<double> real_array_field(const json &obj, const std::string &key,
                                     const std::string &path) {
    const json &v = field(obj, key, path);
    if (!v.is_array()) {
        bad_field(path + key, "expected an array");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_string()) {
            bad_field(path + key + "[" + std::to_string(i) + "]", "expected a hex-float string");
        }
        try {
            out.push_back(parse_hex_float(v[i].get<std::string>()));
        } catch (const Error &) {
            bad_field(path + key + "[" + std::to_string(i) + "]", "not a number");
        }
    }
    return out;
}

json gd_to_json(const train::GdConfig &c) {
    return {{"learning_rate", hex_float(c.learning_rate)},
            {"max_epochs", c.max_epochs},
            {"target_loss", hex_float(c.target_loss)},
            {"seed", c.seed},
            {"init_scale", hex_float(c.init_scale)},
            {"K", c.degree},
            {"loss", train::to_string(c.loss)},
            {"train_angle_coefficients", c.trainable.angle_coefficients},
            {"train_theta", c.trainable.theta},
            {"train_omega", c.trainable.omega},
            {"divergence_limit", hex_float(c.divergence_limit)}};
}

train::GdConfig gd_from_json(const json &j) {
    const std::string p = "trainer.gd.";
    train::GdConfig c;
    c.learning_rate = real_field(j, "learning_rate", p);
    c.max_epochs = count_field(j, "max_epochs", p);
    c.target_loss = real_field(j, "target_loss", p);
    c.seed = field(j, "seed", p).get<std::uint64_t>();
    c.init_scale = real_field(j, "init_scale", p);
    c.degree = count_field(j, "K", p);
    c.loss = train::parse_loss_kind(string_field(j, "loss", p));
    c.trainable.angle_coefficients = field(j, "train_angle_coefficients", p).get<bool>();
    c.trainable.theta = field(j, "train_theta", p).get<bool>();
    c.trainable.omega = field(j, "train_omega", p).get<bool>();
    c.divergence_limit = real_field(j, "divergence_limit", p);
    return c;
}

json lls_to_json(const train::LlsConfig &c) {
    json j = {{"K", c.degree}, {"epsilon", hex_float(c.epsilon)}};
    j["rcond"] = c.rcond ? json(hex_float(*c.rcond)) : json(nullptr);
    return j;
}

train::LlsConfig lls_from_json(const json &j) {
    const std::string p = "trainer.lls.";
    train::LlsConfig c;
    c.degree = count_field(j, "K", p);
    c.epsilon = real_field(j, "epsilon", p);
    if (!field(j, "rcond", p).is_null()) {
        c.rcond = real_field(j, "rcond", p);
    }
    return c;
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const auto secs =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    return std::to_string(secs);
}

} // namespace

std::string hex_float(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", value);
    return buf;
}

double parse_hex_float(const std::string &text) {
    if (text.empty()) {
        fail(Errc::parse_error, "empty number");
    }
    char *end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || std::isnan(v)) {
        fail(Errc::parse_error, "cannot parse number '" + text + "'");
    }
    return v;
}

std::string to_text(const train::TrainedModel &model) {
    model.validate();
    json j;
    j["format"] = kMagic;
    j["format_version"] = model.format_version;
    j["kind"] = train::to_string(model.kind);
    j["K"] = model.degree;
    j["p"] = model.dim;
    j["coefficient_order"] = kCoefficientOrder;
    json angles;
    angles["beta"] = real_array(model.beta.flat());
    if (model.alpha) {
        angles["alpha"] = real_array(model.alpha->flat());
    }
    if (model.gamma) {
        angles["gamma"] = real_array(model.gamma->flat());
    }
    j["angles"] = angles;
    j["theta"] = hex_float(model.theta);
    j["omega"] = hex_float(model.omega);

    json norm;
    if (model.normalization.inputs) {
        norm["inputs"] = {{"min", real_array(model.normalization.inputs->min)},
                          {"max", real_array(model.normalization.inputs->max)}};
    } else {
        norm["inputs"] = nullptr;
    }
    if (model.normalization.target) {
        norm["target"] = {{"min", hex_float(model.normalization.target->min)},
                          {"max", hex_float(model.normalization.target->max)}};
    } else {
        norm["target"] = nullptr;
    }
    j["normalization"] = norm;

    json trainer = json::object();
    if (model.gd_config) {
        trainer["gd"] = gd_to_json(*model.gd_config);
    }
    if (model.lls_config) {
        trainer["lls"] = lls_to_json(*model.lls_config);
    }
    j["trainer"] = trainer;
    j["created"] = {{"tool", "sqqnn"}, {"unix_time", timestamp()}};
    return j.dump(2) + "\n";
}

train::TrainedModel from_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        fail(Errc::parse_error, std::string("model file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || string_field(j, "format", "") != kMagic) {
        bad_field("format", "not an sqqnn model file");
    }
    const json &version = field(j, "format_version", "");
    if (!version.is_number_integer()) {
        bad_field("format_version", "expected an integer");
    }
    if (version.get<int>() != train::TrainedModel::kFormatVersion) {
        fail(Errc::unsupported_format,
             "unsupported model format version " + std::to_string(version.get<int>()));
    }

    try {
        train::TrainedModel m;
        m.format_version = version.get<int>();
        m.kind = train::parse_model_kind(string_field(j, "kind", ""));
        m.degree = count_field(j, "K", "");
        m.dim = count_field(j, "p", "");
        const std::size_t width =
            features::PolynomialWeightFunction::coefficient_count(m.degree, m.dim);

        const json &angles = field(j, "angles", "");
        auto poly = [&](const std::string &name) {
            auto coeffs = real_array_field(angles, name, "angles.");
            if (coeffs.size() != width) {
                bad_field("angles." + name, "expected " + std::to_string(width) +
                                                " coefficients, found " +
                                                std::to_string(coeffs.size()));
            }
            return features::PolynomialWeightFunction(m.degree, m.dim, std::move(coeffs));
        };
        m.beta = poly("beta");
        if (m.kind == train::ModelKind::gd_full) {
            m.alpha = poly("alpha");
            m.gamma = poly("gamma");
        }
        m.theta = real_field(j, "theta", "");
        m.omega = real_field(j, "omega", "");

        const json &norm = field(j, "normalization", "");
        if (const json &in = field(norm, "inputs", "normalization."); !in.is_null()) {
            features::FeatureScaling s;
            s.min = real_array_field(in, "min", "normalization.inputs.");
            s.max = real_array_field(in, "max", "normalization.inputs.");
            if (s.min.size() != m.dim || s.max.size() != m.dim) {
                bad_field("normalization.inputs", "expected " + std::to_string(m.dim) +
                                                      " entries per bound");
            }
            m.normalization.inputs = std::move(s);
        }
        if (const json &t = field(norm, "target", "normalization."); !t.is_null()) {
            m.normalization.target = features::TargetScaling{
                real_field(t, "min", "normalization.target."),
                real_field(t, "max", "normalization.target.")};
        }

        const json &trainer = field(j, "trainer", "");
        if (trainer.contains("gd")) {
            m.gd_config = gd_from_json(trainer.at("gd"));
        }
        if (trainer.contains("lls")) {
            m.lls_config = lls_from_json(trainer.at("lls"));
        }
        m.validate();
        return m;
    } catch (const json::exception &e) {
        fail(Errc::parse_error, std::string("malformed model file: ") + e.what());
    } catch (const Error &e) {
        if (e.code() == Errc::parse_error || e.code() == Errc::unsupported_format) {
            throw;
        }
        fail(Errc::parse_error, std::string("inconsistent model file: ") + e.what());
    }
}

void save(const train::TrainedModel &model, const std::filesystem::path &path) {
    const std::string text = to_text(model);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            fail(Errc::io_error, "cannot write " + tmp.string());
        }
        out << text;
        out.flush();
        if (!out) {
            fail(Errc::io_error, "failed while writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        fail(Errc::io_error, "cannot move model into " + path.string() + ": " + ec.message());
    }
}

train::TrainedModel load(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(Errc::io_error, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

} // namespace sqqnn::store
