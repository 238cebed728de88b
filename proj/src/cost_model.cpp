#include "snnsim/cost_model.hpp"

#include <cmath>
#include <stdexcept>

namespace snnsim {

void EngineConfig::validate() const
{
    if (crossbar_rows <= 0 || crossbar_cols <= 0) {
        throw std::invalid_argument("EngineConfig: crossbar dimensions must be positive");
    }
    if (reset_fault_detect_cycles < 2) {
        throw std::invalid_argument("EngineConfig: detect threshold must be >= 2");
    }
}

void CostParams::validate() const
{
    if (base_cycles_per_timestep <= 0.0 || cycle_time <= 0.0 || base_power <= 0.0) {
        throw std::invalid_argument("CostParams: base quantities must be positive");
    }
    if (bnp_latency_factor < 1.0 || bnp_energy_factor < 1.0 || area_base < 1.0 ||
            area_bnp1 < 1.0 || area_bnp23 < 1.0) {
        throw std::invalid_argument("CostParams: factors must be >= 1");
    }
    if (tmr_factor != 3.0) {
        throw std::invalid_argument("CostParams: tmr_factor is fixed at 3");
    }
}

CostReport estimate_cost(const MitigationPolicy &policy, int num_inputs,
        int num_neurons, int duration, const CostParams &params,
        const EngineConfig &engine)
{
    if (num_inputs <= 0 || num_neurons <= 0) {
        throw std::invalid_argument("estimate_cost: dimensions must be positive");
    }
    if (duration <= 0) {
        throw std::invalid_argument("estimate_cost: duration must be positive");
    }
    params.validate();
    engine.validate();

    const int tiles_in = (num_inputs + engine.crossbar_rows - 1) / engine.crossbar_rows;
    const int tiles_out = (num_neurons + engine.crossbar_cols - 1) / engine.crossbar_cols;
    const int tiles = tiles_in * tiles_out;

    const double base_cycles =
            static_cast<double>(duration) * tiles * params.base_cycles_per_timestep;
    const double base_latency = base_cycles * params.cycle_time;
    const double base_energy = params.base_power * base_latency;

    double latency_factor = 1.0;
    double energy_factor = 1.0;
    double area = params.area_base;
    switch (policy.kind) {
    case PolicyKind::NoMitigation:
        break;
    case PolicyKind::BnP1:
        latency_factor = params.bnp_latency_factor;
        energy_factor = params.bnp_energy_factor;
        area = params.area_bnp1;
        break;
    case PolicyKind::BnP2:
    case PolicyKind::BnP3:
        latency_factor = params.bnp_latency_factor;
        energy_factor = params.bnp_energy_factor;
        area = params.area_bnp23;
        break;
    case PolicyKind::ReExecutionTMR:
        // Redundancy in time: same silicon, three runs.
        latency_factor = params.tmr_factor;
        energy_factor = params.tmr_factor;
        break;
    }

    CostReport report;
    report.tiles = tiles;
    report.cycles = static_cast<std::uint64_t>(std::llround(base_cycles *
            (policy.kind == PolicyKind::ReExecutionTMR ? params.tmr_factor : 1.0)));
    report.latency = base_latency * latency_factor;
    report.energy = base_energy * energy_factor;
    report.area = area;
    return report;
}

} // namespace snnsim
