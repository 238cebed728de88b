#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "snnsim/neuron_fault.hpp"
#include "snnsim/weights.hpp"

namespace snnsim {

// One synapse-register bit-flip location.
struct SynapseFlip {
    int row = 0;
    int col = 0;
    int bit = 0;

    auto operator<=>(const SynapseFlip &) const = default;
};

// The sampled fault pattern of one execution: which weight bits flip and
// which neurons run one faulty operation. Immutable after generation.
struct FaultMap {
    int rows = 0;
    int cols = 0;
    double fault_rate = 0.0;
    std::uint64_t seed = 0;
    std::vector<SynapseFlip> synapse_flips;           // sorted (row, col, bit)
    std::map<int, NeuronFaultKind> neuron_faults;     // neuron index -> kind

    bool empty() const { return synapse_flips.empty() && neuron_faults.empty(); }
    bool operator==(const FaultMap &) const = default;
};

inline FaultMap empty_fault_map(int rows, int cols)
{
    FaultMap map;
    map.rows = rows;
    map.cols = cols;
    return map;
}

// Samples a fault map over a rows x cols crossbar: each of the rows*cols*8
// synapse-bit locations and each of the cols neuron-operation locations
// faults independently with probability fault_rate; a faulted neuron gets a
// uniformly drawn NeuronFaultKind. Locations are scanned in a fixed order
// (synapse bits row-major, bit 0..7, then neurons ascending) so the result
// is a pure function of (dims, rate, seed).
//
// Throws std::invalid_argument for fault_rate outside [0,1] or non-positive
// dimensions.
FaultMap generate_fault_map(int rows, int cols, double fault_rate, std::uint64_t seed);

// Returns a copy of `weights` with every listed bit XOR-ed. The flips model
// soft errors in the weight registers and persist until the next weight
// load, i.e. for the whole execution that uses the returned matrix.
//
// Throws std::invalid_argument when the map does not match the weight
// dimensions or lists an out-of-range location.
QuantizedWeightMatrix apply_bit_flips(const QuantizedWeightMatrix &weights,
        const FaultMap &map);

// Versioned human-readable (JSON) fault-map container. Parse failures throw
// std::runtime_error naming the offending field.
std::string serialize_fault_map(const FaultMap &map);
FaultMap deserialize_fault_map(const std::string &text);

} // namespace snnsim
