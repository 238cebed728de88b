#pragma once

#include <stdexcept>
#include <string>

namespace snnsim {

// The four LIF operations a transient fault can break. A faulty neuron
// carries exactly one of these for the duration of one input presentation.
enum class NeuronFaultKind {
    VmemIncrease,    // integration stuck at zero: the neuron never charges
    VmemLeak,        // leak stuck at zero: the potential only goes up
    VmemReset,       // reset broken: threshold crossings do not clear v_mem
    SpikeGeneration, // output stage dead: no spikes regardless of v_mem
};

inline const char *to_string(NeuronFaultKind kind)
{
    switch (kind) {
    case NeuronFaultKind::VmemIncrease: return "vmem_increase";
    case NeuronFaultKind::VmemLeak: return "vmem_leak";
    case NeuronFaultKind::VmemReset: return "vmem_reset";
    case NeuronFaultKind::SpikeGeneration: return "spike_generation";
    }
    return "?";
}

inline NeuronFaultKind neuron_fault_from_string(const std::string &s)
{
    if (s == "vmem_increase") return NeuronFaultKind::VmemIncrease;
    if (s == "vmem_leak") return NeuronFaultKind::VmemLeak;
    if (s == "vmem_reset") return NeuronFaultKind::VmemReset;
    if (s == "spike_generation") return NeuronFaultKind::SpikeGeneration;
    throw std::runtime_error("unknown neuron fault kind: '" + s + "'");
}

} // namespace snnsim
