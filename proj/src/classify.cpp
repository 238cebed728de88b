#include "snnsim/classify.hpp"

#include <stdexcept>

namespace snnsim {

int classify(std::span<const std::uint32_t> spike_counts,
        const NeuronLabelAssignment &assignment)
{
    if (spike_counts.size() != assignment.label_of_neuron.size()) {
        throw std::invalid_argument("classify: count vector does not match assignment");
    }

    std::vector<std::uint64_t> class_sum(assignment.num_classes, 0);
    std::vector<std::uint64_t> class_neurons(assignment.num_classes, 0);
    std::uint64_t total = 0;
    for (std::size_t n = 0; n < spike_counts.size(); ++n) {
        const int label = assignment.label_of_neuron[n];
        if (label < 0 || label >= assignment.num_classes) {
            throw std::invalid_argument("classify: assignment label out of range");
        }
        class_sum[label] += spike_counts[n];
        class_neurons[label] += 1;
        total += spike_counts[n];
    }
    if (total == 0) {
        return kNoPrediction;
    }

    // argmax of sum/neurons compared as exact fractions: a/b > c/d iff
    // a*d > c*b (all quantities fit 64 bits comfortably here).
    int best = -1;
    for (int c = 0; c < assignment.num_classes; ++c) {
        if (class_neurons[c] == 0) {
            continue;
        }
        if (best < 0 ||
                class_sum[c] * class_neurons[best] >
                        class_sum[best] * class_neurons[c]) {
            best = c;
        }
    }
    return best;
}

} // namespace snnsim
