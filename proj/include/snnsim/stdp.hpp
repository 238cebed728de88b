#pragma once

#include <cstdint>

#include "snnsim/dataset.hpp"
#include "snnsim/lif.hpp"
#include "snnsim/model.hpp"

namespace snnsim {

// Pair-based STDP with pre/post traces and multiplicative weight
// dependence (exponent mu pulls potentiation toward w_limit and depression
// toward 0, so trained weights stay strictly inside the clip range).
struct StdpConfig {
    double w_limit = 1.0;
    double w_init_min = 0.2;   // initial weights uniform in [w_init_min, w_init_max) * w_limit
    double w_init_max = 0.5;
    double lr_post = 0.05;     // potentiation rate per pre-trace unit
    double lr_pre = 0.008;     // depression rate per post-trace unit
    double tau_pre = 20.0;     // trace time constants, timesteps
    double tau_post = 20.0;
    double mu = 1.0;
    // Divisive per-neuron weight normalization applied after every
    // presentation; 0 disables. Keeps receptive fields from collapsing onto
    // a few early winners at desk scale.
    double norm_target = 78.4;
    int epochs = 1;
};

struct TrainConfig {
    StdpConfig stdp;
    LifParams lif;             // homeostasis fields active during training
    int num_neurons = 100;
    int duration = 100;        // presentation window, timesteps
    double max_rate = 0.25;    // Poisson peak probability
    int label_subset = 0;      // images used for the labeling pass; 0 = all
};

// Trains the clean SNN: STDP over the dataset, quantization to 8-bit codes,
// clean-model statistics, and the labeling pass that assigns every neuron
// to the class it spiked most for. Two calls with identical inputs return
// bit-identical models.
//
// Throws std::invalid_argument for an empty dataset or fewer than two
// classes.
TrainedModel stdp_train(const Dataset &data, const TrainConfig &config,
        std::uint64_t seed);

} // namespace snnsim
