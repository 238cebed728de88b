#include "snnsim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "snnsim/rng.hpp"

namespace snnsim {

std::int64_t column_accumulate_codes(std::span<const std::uint8_t> spikes,
        std::span<const std::uint8_t> column, const MitigationPolicy &policy)
{
    if (spikes.size() != column.size()) {
        throw std::invalid_argument("column_accumulate: spike/column length mismatch");
    }
    std::int64_t sum = 0;
    if (policy.bounds_weights()) {
        for (std::size_t i = 0; i < column.size(); ++i) {
            if (spikes[i]) {
                const std::uint8_t bounded = bound_weight(column[i], policy);
                assert(bounded < policy.wgh_th || bounded == policy.wgh_def);
                sum += bounded;
            }
        }
    } else {
        for (std::size_t i = 0; i < column.size(); ++i) {
            if (spikes[i]) {
                sum += column[i];
            }
        }
    }
    return sum;
}

double column_accumulate(std::span<const std::uint8_t> spikes,
        std::span<const std::uint8_t> column, const MitigationPolicy &policy,
        double scale)
{
    return static_cast<double>(column_accumulate_codes(spikes, column, policy)) * scale;
}

void detect_and_protect(LifNeuronState &state, const LifParams &params,
        int detect_cycles)
{
    if (state.v_mem >= params.v_threshold + state.theta) {
        state.over_threshold_cycles += 1;
        if (state.over_threshold_cycles >= detect_cycles) {
            state.spike_disabled = true;
        }
    } else {
        state.over_threshold_cycles = 0;
    }
}

InferenceResult run_inference(const TrainedModel &model, const SpikeTrain &input,
        const FaultMap &fault_map, const MitigationPolicy &policy,
        const EngineConfig &engine, const CostParams &cost)
{
    engine.validate();
    policy.validate();
    if (input.num_inputs() != model.num_inputs()) {
        throw std::invalid_argument("run_inference: spike train does not match model inputs");
    }

    const int num_neurons = model.num_neurons();
    const QuantizedWeightMatrix weights = apply_bit_flips(model.weights, fault_map);
    const double scale = weights.scale();
    const LifParams params = model.lif.frozen();
    const bool mitigated = policy.bounds_weights();

    std::vector<LifNeuronState> states(num_neurons);
    for (int j = 0; j < num_neurons; ++j) {
        states[j].v_mem = params.v_rest;
        states[j].theta = model.theta[j];
        if (auto it = fault_map.neuron_faults.find(j); it != fault_map.neuron_faults.end()) {
            states[j].fault = it->second;
        }
    }

    InferenceResult result;
    result.spike_counts.assign(num_neurons, 0);

    std::vector<std::int64_t> column_sum(num_neurons);
    std::vector<std::uint8_t> spiked_prev(num_neurons, 0);
    std::vector<std::uint8_t> spiked_now(num_neurons, 0);
    int prev_spike_total = 0;

    for (int t = 0; t < input.duration(); ++t) {
        std::fill(column_sum.begin(), column_sum.end(), 0);
        for (std::uint16_t row : input.active_at(t)) {
            const std::span<const std::uint8_t> codes = weights.row(row);
            if (mitigated) {
                for (int j = 0; j < num_neurons; ++j) {
                    const std::uint8_t bounded = bound_weight(codes[j], policy);
                    assert(bounded < policy.wgh_th || bounded == policy.wgh_def);
                    column_sum[j] += bounded;
                }
            } else {
                for (int j = 0; j < num_neurons; ++j) {
                    column_sum[j] += codes[j];
                }
            }
        }

        int spike_total = 0;
        for (int j = 0; j < num_neurons; ++j) {
            // Direct lateral inhibition: a spike anywhere in the previous
            // timestep pulls every other neuron down by one fixed amount.
            const double inhibition =
                    (prev_spike_total - spiked_prev[j] > 0) ? params.inhibition_strength : 0.0;
            const bool spiked = lif_step(states[j], params,
                    static_cast<double>(column_sum[j]) * scale, inhibition);
            if (mitigated) {
                detect_and_protect(states[j], params, engine.reset_fault_detect_cycles);
            }
            spiked_now[j] = spiked ? 1 : 0;
            spike_total += spiked_now[j];
            result.spike_counts[j] += spiked_now[j];
        }
        std::swap(spiked_prev, spiked_now);
        prev_spike_total = spike_total;
    }

    result.predicted = classify(result.spike_counts, model.assignment);
    result.cost = estimate_cost(policy, model.num_inputs(), num_neurons,
            input.duration(), cost, engine);
    return result;
}

int majority_vote(const std::array<int, 3> &votes)
{
    if (votes[1] == votes[2]) {
        return votes[1];
    }
    // votes[0] is either part of the only possible majority or, on a
    // three-way disagreement, the designated fallback.
    return votes[0];
}

TmrResult run_tmr(const TrainedModel &model, const SpikeTrain &input,
        double fault_rate, const EngineConfig &engine, const CostParams &cost,
        std::uint64_t seed)
{
    const MitigationPolicy nomit{.kind = PolicyKind::NoMitigation};
    MitigationPolicy tmr{.kind = PolicyKind::ReExecutionTMR};

    TmrResult result;
    for (int copy = 0; copy < tmr.tmr_copies; ++copy) {
        const FaultMap map = generate_fault_map(model.num_inputs(), model.num_neurons(),
                fault_rate, derive_seed(seed, stream::kTmrExec, copy));
        result.votes[copy] =
                run_inference(model, input, map, nomit, engine, cost).predicted;
    }
    result.predicted = majority_vote(result.votes);
    result.cost = estimate_cost(tmr, model.num_inputs(), model.num_neurons(),
            input.duration(), cost, engine);
    return result;
}

} // namespace snnsim
