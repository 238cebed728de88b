#include "snnsim/stdp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "snnsim/encoding.hpp"
#include "snnsim/engine.hpp"
#include "snnsim/rng.hpp"

namespace snnsim {

namespace {

double soft_up(double w, double w_limit, double mu)
{
    return mu == 1.0 ? (w_limit - w) : w_limit * std::pow(1.0 - w / w_limit, mu);
}

double soft_down(double w, double w_limit, double mu)
{
    return mu == 1.0 ? w : w_limit * std::pow(w / w_limit, mu);
}

} // namespace

TrainedModel stdp_train(const Dataset &data, const TrainConfig &config,
        std::uint64_t seed)
{
    if (data.count() == 0) {
        throw std::invalid_argument("stdp_train: empty dataset");
    }
    if (data.num_classes() < 2) {
        throw std::invalid_argument("stdp_train: need at least two classes");
    }
    config.lif.validate();

    const int num_inputs = data.image_size();
    const int num_neurons = config.num_neurons;
    const StdpConfig &stdp = config.stdp;
    const double w_limit = stdp.w_limit;

    // Real-valued weights, input-row major like the quantized crossbar.
    std::vector<double> weights(static_cast<std::size_t>(num_inputs) * num_neurons);
    {
        SplitMix64 init_rng(derive_seed(seed, stream::kWeightInit));
        for (double &w : weights) {
            w = (stdp.w_init_min +
                        (stdp.w_init_max - stdp.w_init_min) * init_rng.next_double()) *
                    w_limit;
        }
    }

    std::vector<LifNeuronState> states(num_neurons);
    for (auto &s : states) {
        s.v_mem = config.lif.v_rest;
    }

    const double pre_decay = std::exp(-1.0 / stdp.tau_pre);
    const double post_decay = std::exp(-1.0 / stdp.tau_post);
    std::vector<double> x_pre(num_inputs);
    std::vector<double> x_post(num_neurons);
    std::vector<double> input_current(num_neurons);
    std::vector<std::uint8_t> spiked_prev(num_neurons);
    std::vector<int> post_spikes;
    int prev_spike_total = 0;

    for (int epoch = 0; epoch < stdp.epochs; ++epoch) {
        for (int idx = 0; idx < data.count(); ++idx) {
            const SpikeTrain train = encode_poisson(data.image(idx), config.duration,
                    config.max_rate,
                    derive_seed(seed, stream::kTrainEncode,
                            static_cast<std::uint64_t>(epoch) * data.count() + idx));

            // Fresh short-term state per presentation; theta persists.
            std::fill(x_pre.begin(), x_pre.end(), 0.0);
            std::fill(x_post.begin(), x_post.end(), 0.0);
            std::fill(spiked_prev.begin(), spiked_prev.end(), 0);
            prev_spike_total = 0;
            for (auto &s : states) {
                s.v_mem = config.lif.v_rest;
                s.refractory_remaining = 0;
            }

            for (int t = 0; t < config.duration; ++t) {
                for (double &x : x_pre) {
                    x *= pre_decay;
                }
                for (double &x : x_post) {
                    x *= post_decay;
                }

                const auto active = train.active_at(t);
                for (std::uint16_t row : active) {
                    x_pre[row] = 1.0;
                }

                std::fill(input_current.begin(), input_current.end(), 0.0);
                for (std::uint16_t row : active) {
                    const double *w_row =
                            weights.data() + static_cast<std::size_t>(row) * num_neurons;
                    for (int j = 0; j < num_neurons; ++j) {
                        input_current[j] += w_row[j];
                    }
                }

                post_spikes.clear();
                int spike_total = 0;
                for (int j = 0; j < num_neurons; ++j) {
                    const double inhibition = (prev_spike_total - spiked_prev[j] > 0)
                            ? config.lif.inhibition_strength
                            : 0.0;
                    const bool spiked =
                            lif_step(states[j], config.lif, input_current[j], inhibition);
                    spiked_prev[j] = spiked ? 1 : 0;
                    if (spiked) {
                        post_spikes.push_back(j);
                        spike_total += 1;
                    }
                }
                prev_spike_total = spike_total;

                // Depression: a pre spike pairs with the decayed post
                // history (this step's post spikes are excluded, they are
                // the potentiation pairing).
                for (std::uint16_t row : active) {
                    double *w_row =
                            weights.data() + static_cast<std::size_t>(row) * num_neurons;
                    for (int j = 0; j < num_neurons; ++j) {
                        if (x_post[j] > 0.0) {
                            w_row[j] = std::clamp(w_row[j] -
                                            stdp.lr_pre * x_post[j] *
                                                    soft_down(w_row[j], w_limit, stdp.mu),
                                    0.0, w_limit);
                            assert(w_row[j] >= 0.0 && w_row[j] <= w_limit);
                        }
                    }
                }
                // Potentiation: a post spike pairs with the pre trace
                // including simultaneous pre spikes.
                for (int j : post_spikes) {
                    for (int i = 0; i < num_inputs; ++i) {
                        if (x_pre[i] > 0.0) {
                            double &w = weights[static_cast<std::size_t>(i) * num_neurons + j];
                            w = std::clamp(w +
                                            stdp.lr_post * x_pre[i] *
                                                    soft_up(w, w_limit, stdp.mu),
                                    0.0, w_limit);
                            assert(w >= 0.0 && w <= w_limit);
                        }
                    }
                    x_post[j] = 1.0;
                }
            }

            if (stdp.norm_target > 0.0) {
                for (int j = 0; j < num_neurons; ++j) {
                    double sum = 0.0;
                    for (int i = 0; i < num_inputs; ++i) {
                        sum += weights[static_cast<std::size_t>(i) * num_neurons + j];
                    }
                    if (sum > 0.0) {
                        const double factor = stdp.norm_target / sum;
                        for (int i = 0; i < num_inputs; ++i) {
                            double &w = weights[static_cast<std::size_t>(i) * num_neurons + j];
                            w = std::clamp(w * factor, 0.0, w_limit);
                        }
                    }
                }
            }
        }
    }

    TrainedModel model(
            QuantizedWeightMatrix::quantize(weights, num_inputs, num_neurons, w_limit));
    model.lif = config.lif;
    model.training_seed = seed;
    model.duration = config.duration;
    model.max_rate = config.max_rate;
    model.theta.resize(num_neurons);
    for (int j = 0; j < num_neurons; ++j) {
        model.theta[j] = states[j].theta;
    }
    model.stats = compute_clean_stats(model.weights);

    // Labeling pass: clean inference over (a prefix of) the training set,
    // counting spikes per (neuron, class).
    const int num_classes = data.num_classes();
    const int label_count = config.label_subset > 0
            ? std::min(config.label_subset, data.count())
            : data.count();
    model.assignment.label_of_neuron.assign(num_neurons, 0);
    model.assignment.num_classes = num_classes;

    std::vector<std::uint64_t> spike_tally(
            static_cast<std::size_t>(num_neurons) * num_classes, 0);
    const MitigationPolicy nomit;
    const FaultMap no_faults = empty_fault_map(num_inputs, num_neurons);
    const EngineConfig engine_cfg;
    const CostParams cost_params;
    for (int idx = 0; idx < label_count; ++idx) {
        const SpikeTrain train = encode_poisson(data.image(idx), config.duration,
                config.max_rate, derive_seed(seed, stream::kLabelEncode, idx));
        const InferenceResult run =
                run_inference(model, train, no_faults, nomit, engine_cfg, cost_params);
        for (int j = 0; j < num_neurons; ++j) {
            spike_tally[static_cast<std::size_t>(j) * num_classes + data.labels[idx]] +=
                    run.spike_counts[j];
        }
    }
    for (int j = 0; j < num_neurons; ++j) {
        const auto *row = spike_tally.data() + static_cast<std::size_t>(j) * num_classes;
        int best = 0;
        for (int c = 1; c < num_classes; ++c) {
            if (row[c] > row[best]) {
                best = c;
            }
        }
        model.assignment.label_of_neuron[j] = best;
    }
    return model;
}

} // namespace snnsim
