#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace snnsim {

// Returned by classify when no neuron spiked at all; callers count it as an
// incorrect prediction.
inline constexpr int kNoPrediction = -1;

// Unsupervised readout map: every excitatory neuron is assigned to the
// class it spiked most for during a labeling pass over the clean model.
struct NeuronLabelAssignment {
    std::vector<int> label_of_neuron;
    int num_classes = 0;

    bool operator==(const NeuronLabelAssignment &) const = default;
};

// Predicts the class whose assigned neurons have the highest mean spike
// count. Ties break toward the lower class index (the comparison is done in
// exact integer arithmetic, so ties are real ties). All-zero counts return
// kNoPrediction.
//
// Throws std::invalid_argument when the count vector length does not match
// the assignment.
int classify(std::span<const std::uint32_t> spike_counts,
        const NeuronLabelAssignment &assignment);

} // namespace snnsim
