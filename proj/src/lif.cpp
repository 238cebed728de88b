#include "snnsim/lif.hpp"

#include <algorithm>
#include <stdexcept>

namespace snnsim {

void LifParams::validate() const
{
    if (!(v_reset <= v_rest && v_rest < v_threshold)) {
        throw std::invalid_argument(
                "LifParams: require v_reset <= v_rest < v_threshold");
    }
    if (leak_amount < 0.0) {
        throw std::invalid_argument("LifParams: leak_amount must be >= 0");
    }
    if (t_refractory < 0) {
        throw std::invalid_argument("LifParams: t_refractory must be >= 0");
    }
    if (theta_decay < 0.0 || theta_decay > 1.0) {
        throw std::invalid_argument("LifParams: theta_decay must be in [0,1]");
    }
}

bool lif_step(LifNeuronState &state, const LifParams &params, double input_current,
        double inhibition)
{
    bool emitted = false;

    if (state.refractory_remaining > 0) {
        state.refractory_remaining -= 1;
    } else {
        const auto fault = state.fault;
        const double integrate =
                (fault == NeuronFaultKind::VmemIncrease) ? 0.0 : input_current;
        const double leak =
                (fault == NeuronFaultKind::VmemLeak) ? 0.0 : params.leak_amount;

        state.v_mem = std::max(
                params.v_rest, state.v_mem + integrate - leak - inhibition);

        if (state.v_mem >= params.v_threshold + state.theta) {
            emitted = fault != NeuronFaultKind::SpikeGeneration &&
                    !state.spike_disabled;
            if (fault != NeuronFaultKind::VmemReset) {
                state.v_mem = params.v_reset;
                state.refractory_remaining = params.t_refractory;
            }
            state.theta += params.theta_plus;
        }
    }

    state.theta *= params.theta_decay;
    return emitted;
}

} // namespace snnsim
