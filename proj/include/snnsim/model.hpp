#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snnsim/classify.hpp"
#include "snnsim/lif.hpp"
#include "snnsim/weights.hpp"

namespace snnsim {

// Everything inference needs from a finished training run: the quantized
// crossbar contents, the LIF parameters, the per-neuron adaptive thresholds
// frozen at their trained values, the clean-model statistics that
// parameterize the bounding policies, and the readout assignment.
struct TrainedModel {
    explicit TrainedModel(QuantizedWeightMatrix w) : weights(std::move(w)) {}

    QuantizedWeightMatrix weights;
    LifParams lif;
    std::vector<double> theta;
    CleanModelStats stats;
    NeuronLabelAssignment assignment;
    std::uint64_t training_seed = 0;
    // Encoding used during training; inference must present inputs the same
    // way.
    int duration = 100;
    double max_rate = 0.25;

    int num_inputs() const { return weights.num_inputs(); }
    int num_neurons() const { return weights.num_neurons(); }
};

// Versioned JSON model container (format "snnsim-model", version 1; layout
// documented in the README). Parse failures throw std::runtime_error naming
// the offending field.
std::string serialize_model(const TrainedModel &model);
TrainedModel deserialize_model(const std::string &text);

void save_model(const TrainedModel &model, const std::string &path);
TrainedModel load_model(const std::string &path);

} // namespace snnsim
