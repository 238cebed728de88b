#include "snnsim/fault_model.hpp"

#include <stdexcept>

#include <json.hpp>

#include "snnsim/rng.hpp"

namespace snnsim {

namespace {
constexpr int kFaultMapVersion = 1;
constexpr const char *kFaultMapFormat = "snnsim-fault-map";
} // namespace

FaultMap generate_fault_map(int rows, int cols, double fault_rate, std::uint64_t seed)
{
    if (rows <= 0 || cols <= 0) {
        throw std::invalid_argument("generate_fault_map: dimensions must be positive");
    }
    if (!(fault_rate >= 0.0 && fault_rate <= 1.0)) {
        throw std::invalid_argument("generate_fault_map: fault_rate must be in [0,1]");
    }

    FaultMap map;
    map.rows = rows;
    map.cols = cols;
    map.fault_rate = fault_rate;
    map.seed = seed;

    SplitMix64 rng(seed);
    if (fault_rate > 0.0) {
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                for (int b = 0; b < 8; ++b) {
                    if (rng.bernoulli(fault_rate)) {
                        map.synapse_flips.push_back({r, c, b});
                    }
                }
            }
        }
        for (int n = 0; n < cols; ++n) {
            if (rng.bernoulli(fault_rate)) {
                map.neuron_faults.emplace(
                        n, static_cast<NeuronFaultKind>(rng.next_below(4)));
            }
        }
    }
    return map;
}

QuantizedWeightMatrix apply_bit_flips(const QuantizedWeightMatrix &weights,
        const FaultMap &map)
{
    if (map.rows != weights.num_inputs() || map.cols != weights.num_neurons()) {
        throw std::invalid_argument("apply_bit_flips: map dimensions do not match weights");
    }
    QuantizedWeightMatrix out = weights;
    for (const SynapseFlip &flip : map.synapse_flips) {
        if (flip.row < 0 || flip.row >= weights.num_inputs() || flip.col < 0 ||
                flip.col >= weights.num_neurons() || flip.bit < 0 || flip.bit > 7) {
            throw std::invalid_argument("apply_bit_flips: location out of range");
        }
        out.set(flip.row, flip.col,
                out.at(flip.row, flip.col) ^ static_cast<std::uint8_t>(1u << flip.bit));
    }
    return out;
}

std::string serialize_fault_map(const FaultMap &map)
{
    nlohmann::json doc;
    doc["format"] = kFaultMapFormat;
    doc["version"] = kFaultMapVersion;
    doc["rows"] = map.rows;
    doc["cols"] = map.cols;
    doc["fault_rate"] = map.fault_rate;
    doc["seed"] = map.seed;

    auto &flips = doc["synapse_flips"] = nlohmann::json::array();
    for (const SynapseFlip &flip : map.synapse_flips) {
        flips.push_back({flip.row, flip.col, flip.bit});
    }
    auto &neurons = doc["neuron_faults"] = nlohmann::json::array();
    for (const auto &[index, kind] : map.neuron_faults) {
        neurons.push_back({{"neuron", index}, {"kind", to_string(kind)}});
    }
    return doc.dump(2) + "\n";
}

namespace {

const nlohmann::json &require_field(const nlohmann::json &doc, const char *name)
{
    auto it = doc.find(name);
    if (it == doc.end()) {
        throw std::runtime_error(
                std::string("fault map: missing field '") + name + "'");
    }
    return *it;
}

} // namespace

FaultMap deserialize_fault_map(const std::string &text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &err) {
        throw std::runtime_error(std::string("fault map: malformed JSON: ") + err.what());
    }

    try {
        if (require_field(doc, "format").get<std::string>() != kFaultMapFormat) {
            throw std::runtime_error("fault map: field 'format' is not a fault map");
        }
        if (require_field(doc, "version").get<int>() != kFaultMapVersion) {
            throw std::runtime_error("fault map: field 'version' unsupported (expected 1)");
        }

        FaultMap map;
        map.rows = require_field(doc, "rows").get<int>();
        map.cols = require_field(doc, "cols").get<int>();
        map.fault_rate = require_field(doc, "fault_rate").get<double>();
        map.seed = require_field(doc, "seed").get<std::uint64_t>();

        for (const auto &entry : require_field(doc, "synapse_flips")) {
            if (!entry.is_array() || entry.size() != 3) {
                throw std::runtime_error(
                        "fault map: field 'synapse_flips' entries must be [row,col,bit]");
            }
            map.synapse_flips.push_back(
                    {entry[0].get<int>(), entry[1].get<int>(), entry[2].get<int>()});
        }
        for (const auto &entry : require_field(doc, "neuron_faults")) {
            const int neuron = require_field(entry, "neuron").get<int>();
            const auto kind = neuron_fault_from_string(
                    require_field(entry, "kind").get<std::string>());
            map.neuron_faults.emplace(neuron, kind);
        }
        return map;
    } catch (const nlohmann::json::exception &err) {
        throw std::runtime_error(std::string("fault map: ") + err.what());
    }
}

} // namespace snnsim
