#pragma once

#include <cstdint>

#include "snnsim/mitigation.hpp"

namespace snnsim {

struct EngineConfig {
    int crossbar_rows = 256;
    int crossbar_cols = 256;
    int reset_fault_detect_cycles = 2;

    void validate() const;
};

// Parametric latency/energy/area model. The absolute scale (cycle time,
// power) is a stand-in for synthesis numbers; the per-policy factors encode
// the published relative overheads, so reports reproduce the relative shape
// of the hardware comparison, not an absolute axis.
struct CostParams {
    double base_cycles_per_timestep = 1.0;
    double cycle_time = 1e-9;  // seconds
    double base_power = 0.1;   // watts
    double bnp_latency_factor = 1.06;
    double bnp_energy_factor = 1.6;
    double tmr_factor = 3.0;
    double area_base = 1.0;
    double area_bnp1 = 1.14;
    double area_bnp23 = 1.18;

    void validate() const;
};

struct CostReport {
    double latency = 0.0;  // seconds
    double energy = 0.0;   // joules
    double area = 0.0;     // normalized to the unmodified engine
    std::uint64_t cycles = 0;
    int tiles = 0;
};

// Cost of one inference of `duration` timesteps under `policy`. A network
// larger than the crossbar is folded onto it tile by tile:
// tiles = ceil(inputs/rows) * ceil(neurons/cols). Re-execution triples
// cycles, latency, and energy; the BnP factors scale latency and energy
// only; area comes from the per-policy constants.
//
// Throws std::invalid_argument for non-positive dimensions or duration.
CostReport estimate_cost(const MitigationPolicy &policy, int num_inputs,
        int num_neurons, int duration, const CostParams &params,
        const EngineConfig &engine = {});

} // namespace snnsim
