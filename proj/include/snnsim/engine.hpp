#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "snnsim/cost_model.hpp"
#include "snnsim/encoding.hpp"
#include "snnsim/fault_model.hpp"
#include "snnsim/lif.hpp"
#include "snnsim/mitigation.hpp"
#include "snnsim/model.hpp"

namespace snnsim {

// Integer column sum of one crossbar column for one timestep: the adder
// chain accumulates the (optionally bounded) 8-bit code of every synapse
// whose input line spiked. Scaling to potential units happens after the
// integer sum, exactly as the per-synapse adders would.
//
// Throws std::invalid_argument on a spikes/column length mismatch.
std::int64_t column_accumulate_codes(std::span<const std::uint8_t> spikes,
        std::span<const std::uint8_t> column, const MitigationPolicy &policy);

double column_accumulate(std::span<const std::uint8_t> spikes,
        std::span<const std::uint8_t> column, const MitigationPolicy &policy,
        double scale);

// Reset-fault protection: one detector update per neuron per timestep. When
// the v_mem >= threshold comparison has held for detect_cycles consecutive
// timesteps without a successful reset, spike generation is disabled for
// the remainder of the inference.
void detect_and_protect(LifNeuronState &state, const LifParams &params,
        int detect_cycles);

struct InferenceResult {
    std::vector<std::uint32_t> spike_counts;
    int predicted = kNoPrediction;
    CostReport cost;
};

// Simulates one input presentation on the compute engine: applies the fault
// map's bit flips to a working copy of the weights, assigns the faulty
// neuron operations, and steps the LIF array over the spike train. BnP
// policies bound every weight read and run the protection detector;
// NoMitigation does neither. Neuron fault state (and any protection
// latching) lasts exactly one presentation.
//
// Throws std::invalid_argument on dimension mismatches.
InferenceResult run_inference(const TrainedModel &model, const SpikeTrain &input,
        const FaultMap &fault_map, const MitigationPolicy &policy,
        const EngineConfig &engine, const CostParams &cost);

struct TmrResult {
    int predicted = kNoPrediction;
    CostReport cost;
    std::array<int, 3> votes{kNoPrediction, kNoPrediction, kNoPrediction};
};

// Majority label of three redundant executions; a three-way disagreement
// falls back to the first execution's label.
int majority_vote(const std::array<int, 3> &votes);

// Re-execution baseline: three executions of the same input with
// independent fault maps (soft errors are transient, so each run sees a
// fresh pattern), majority vote over the predicted labels. A three-way
// disagreement falls back to the first execution's label.
TmrResult run_tmr(const TrainedModel &model, const SpikeTrain &input,
        double fault_rate, const EngineConfig &engine, const CostParams &cost,
        std::uint64_t seed);

} // namespace snnsim
