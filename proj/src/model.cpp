#include "snnsim/model.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace snnsim {

namespace {

constexpr int kModelVersion = 1;
constexpr const char *kModelFormat = "snnsim-model";

const nlohmann::json &require_field(const nlohmann::json &doc, const char *name)
{
    auto it = doc.find(name);
    if (it == doc.end()) {
        throw std::runtime_error(std::string("model: missing field '") + name + "'");
    }
    return *it;
}

} // namespace

std::string serialize_model(const TrainedModel &model)
{
    nlohmann::json doc;
    doc["format"] = kModelFormat;
    doc["version"] = kModelVersion;
    doc["num_inputs"] = model.weights.num_inputs();
    doc["num_neurons"] = model.weights.num_neurons();
    doc["scale"] = model.weights.scale();
    doc["weights"] = std::vector<int>(
            model.weights.codes().begin(), model.weights.codes().end());

    doc["lif"] = {
            {"v_threshold", model.lif.v_threshold},
            {"v_reset", model.lif.v_reset},
            {"v_rest", model.lif.v_rest},
            {"leak_amount", model.lif.leak_amount},
            {"t_refractory", model.lif.t_refractory},
            {"inhibition_strength", model.lif.inhibition_strength},
            {"theta_plus", model.lif.theta_plus},
            {"theta_decay", model.lif.theta_decay},
    };
    doc["theta"] = model.theta;
    doc["stats"] = {
            {"wgh_max", model.stats.wgh_max},
            {"wgh_hp", model.stats.wgh_hp},
            {"histogram", model.stats.histogram},
    };
    doc["assignment"] = model.assignment.label_of_neuron;
    doc["num_classes"] = model.assignment.num_classes;
    doc["training_seed"] = model.training_seed;
    doc["duration"] = model.duration;
    doc["max_rate"] = model.max_rate;
    return doc.dump(2) + "\n";
}

TrainedModel deserialize_model(const std::string &text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &err) {
        throw std::runtime_error(std::string("model: malformed JSON: ") + err.what());
    }

    try {
        if (require_field(doc, "format").get<std::string>() != kModelFormat) {
            throw std::runtime_error("model: field 'format' is not a trained model");
        }
        if (require_field(doc, "version").get<int>() != kModelVersion) {
            throw std::runtime_error("model: field 'version' unsupported (expected 1)");
        }

        const int rows = require_field(doc, "num_inputs").get<int>();
        const int cols = require_field(doc, "num_neurons").get<int>();
        const double scale = require_field(doc, "scale").get<double>();

        QuantizedWeightMatrix weights(rows, cols, scale);
        const auto &codes = require_field(doc, "weights");
        if (codes.size() != static_cast<std::size_t>(rows) * cols) {
            throw std::runtime_error("model: field 'weights' has wrong length");
        }
        for (std::size_t k = 0; k < codes.size(); ++k) {
            const int code = codes[k].get<int>();
            if (code < 0 || code > 255) {
                throw std::runtime_error("model: field 'weights' code out of [0,255]");
            }
            weights.codes_mut()[k] = static_cast<std::uint8_t>(code);
        }

        TrainedModel model(std::move(weights));
        const auto &lif = require_field(doc, "lif");
        model.lif.v_threshold = require_field(lif, "v_threshold").get<double>();
        model.lif.v_reset = require_field(lif, "v_reset").get<double>();
        model.lif.v_rest = require_field(lif, "v_rest").get<double>();
        model.lif.leak_amount = require_field(lif, "leak_amount").get<double>();
        model.lif.t_refractory = require_field(lif, "t_refractory").get<int>();
        model.lif.inhibition_strength =
                require_field(lif, "inhibition_strength").get<double>();
        model.lif.theta_plus = require_field(lif, "theta_plus").get<double>();
        model.lif.theta_decay = require_field(lif, "theta_decay").get<double>();
        model.lif.validate();

        model.theta = require_field(doc, "theta").get<std::vector<double>>();
        if (model.theta.size() != static_cast<std::size_t>(cols)) {
            throw std::runtime_error("model: field 'theta' has wrong length");
        }

        const auto &stats = require_field(doc, "stats");
        model.stats.wgh_max =
                static_cast<std::uint8_t>(require_field(stats, "wgh_max").get<int>());
        model.stats.wgh_hp =
                static_cast<std::uint8_t>(require_field(stats, "wgh_hp").get<int>());
        const auto &hist = require_field(stats, "histogram");
        if (hist.size() != model.stats.histogram.size()) {
            throw std::runtime_error("model: field 'histogram' must have 256 bins");
        }
        for (std::size_t k = 0; k < hist.size(); ++k) {
            model.stats.histogram[k] = hist[k].get<std::uint64_t>();
        }

        model.assignment.label_of_neuron =
                require_field(doc, "assignment").get<std::vector<int>>();
        if (model.assignment.label_of_neuron.size() != static_cast<std::size_t>(cols)) {
            throw std::runtime_error("model: field 'assignment' has wrong length");
        }
        model.assignment.num_classes = require_field(doc, "num_classes").get<int>();
        model.training_seed = require_field(doc, "training_seed").get<std::uint64_t>();
        model.duration = require_field(doc, "duration").get<int>();
        model.max_rate = require_field(doc, "max_rate").get<double>();
        return model;
    } catch (const nlohmann::json::exception &err) {
        throw std::runtime_error(std::string("model: ") + err.what());
    }
}

void save_model(const TrainedModel &model, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("model: cannot open '" + path + "' for writing");
    }
    out << serialize_model(model);
    if (!out) {
        throw std::runtime_error("model: write to '" + path + "' failed");
    }
}

TrainedModel load_model(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("model: cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return deserialize_model(buffer.str());
}

} // namespace snnsim
