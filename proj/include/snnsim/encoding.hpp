#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace snnsim {

// Boolean spike raster of duration x num_inputs, stored as per-timestep
// lists of active input lines (the crossbar only ever needs to know which
// rows fired this step).
class SpikeTrain {
public:
    SpikeTrain(int duration, int num_inputs);

    int duration() const { return duration_; }
    int num_inputs() const { return num_inputs_; }

    // Active input indices at timestep t, ascending.
    std::span<const std::uint16_t> active_at(int t) const { return steps_[t]; }

    void add_spike(int t, int input) { steps_[t].push_back(static_cast<std::uint16_t>(input)); }

    bool spike(int t, int input) const;
    std::uint64_t total_spikes() const;
    std::uint32_t count_for_input(int input) const;

private:
    int duration_;
    int num_inputs_;
    std::vector<std::vector<std::uint16_t>> steps_;
};

// Poisson rate coding: pixel p fires each timestep independently with
// probability (p/255) * max_rate. Deterministic given the seed; pixels with
// zero intensity draw no randomness.
//
// Throws std::invalid_argument for an empty image, duration < 1, or
// max_rate outside (0,1].
SpikeTrain encode_poisson(std::span<const std::uint8_t> image, int duration,
        double max_rate, std::uint64_t seed);

} // namespace snnsim
