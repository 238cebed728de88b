#pragma once

#include <optional>

#include "snnsim/neuron_fault.hpp"

namespace snnsim {

// Discrete-time LIF neuron parameters. Potentials are in arbitrary units;
// only their relative magnitudes matter. The leak is a fixed subtractive
// amount per timestep with a floor at v_rest, matching a digital datapath
// rather than an analog exponential decay.
struct LifParams {
    double v_threshold = 1.0;
    double v_reset = 0.0;
    double v_rest = 0.0;
    double leak_amount = 0.01;
    int t_refractory = 2;
    double inhibition_strength = 0.1;
    // Adaptive-threshold homeostasis. Active during STDP training; inference
    // runs with theta_plus = 0 and theta_decay = 1 so trained thresholds
    // stay frozen.
    double theta_plus = 0.0;
    double theta_decay = 1.0;

    // Throws std::invalid_argument when a field is out of range.
    void validate() const;

    LifParams frozen() const
    {
        LifParams p = *this;
        p.theta_plus = 0.0;
        p.theta_decay = 1.0;
        return p;
    }
};

struct LifNeuronState {
    double v_mem = 0.0;
    double theta = 0.0;
    int refractory_remaining = 0;
    std::optional<NeuronFaultKind> fault;
    // Set by the reset-fault protection logic; once true the neuron emits no
    // spikes for the remainder of the current inference.
    bool spike_disabled = false;
    // Consecutive timesteps the v_mem >= threshold comparison has held
    // without a successful reset (protection detector state).
    int over_threshold_cycles = 0;
};

// One timestep of a (possibly faulty) LIF neuron. Returns true when the
// neuron emits a spike on its output line.
//
// Fault-free semantics: during refractory, count down and do nothing else;
// otherwise integrate v += input - leak - inhibition (floored at v_rest),
// and on v >= v_threshold + theta emit a spike, reset to v_reset, enter
// refractory, and bump theta by theta_plus. theta decays multiplicatively
// every step.
//
// Faulty semantics (one kind per neuron per presentation):
//   VmemIncrease    integration term forced to 0
//   VmemLeak        leak term forced to 0
//   VmemReset       crossings fire but never reset and never enter
//                   refractory, so the neuron bursts while v stays over
//                   threshold
//   SpikeGeneration output forced to 0; the membrane still resets on a
//                   crossing (reset is driven by the comparator, not by the
//                   output spike)
bool lif_step(LifNeuronState &state, const LifParams &params, double input_current,
        double inhibition);

} // namespace snnsim
