#include "snnsim/encoding.hpp"

#include <algorithm>
#include <stdexcept>

#include "snnsim/rng.hpp"

namespace snnsim {

SpikeTrain::SpikeTrain(int duration, int num_inputs)
    : duration_(duration)
    , num_inputs_(num_inputs)
    , steps_(static_cast<std::size_t>(duration))
{
}

bool SpikeTrain::spike(int t, int input) const
{
    const auto &row = steps_[t];
    return std::binary_search(row.begin(), row.end(), static_cast<std::uint16_t>(input));
}

std::uint64_t SpikeTrain::total_spikes() const
{
    std::uint64_t total = 0;
    for (const auto &row : steps_) {
        total += row.size();
    }
    return total;
}

std::uint32_t SpikeTrain::count_for_input(int input) const
{
    std::uint32_t count = 0;
    for (const auto &row : steps_) {
        count += std::binary_search(
                         row.begin(), row.end(), static_cast<std::uint16_t>(input))
                ? 1
                : 0;
    }
    return count;
}

SpikeTrain encode_poisson(std::span<const std::uint8_t> image, int duration,
        double max_rate, std::uint64_t seed)
{
    if (image.empty()) {
        throw std::invalid_argument("encode_poisson: empty image");
    }
    if (duration < 1) {
        throw std::invalid_argument("encode_poisson: duration must be >= 1");
    }
    if (!(max_rate > 0.0 && max_rate <= 1.0)) {
        throw std::invalid_argument("encode_poisson: max_rate must be in (0,1]");
    }
    if (image.size() > 65535) {
        throw std::invalid_argument("encode_poisson: more than 65535 input lines");
    }

    // Only nonzero pixels can fire; precomputing them fixes the draw order
    // (per timestep, ascending input index) independently of image content
    // layout.
    std::vector<std::uint16_t> lines;
    std::vector<double> rates;
    for (std::size_t i = 0; i < image.size(); ++i) {
        if (image[i] > 0) {
            lines.push_back(static_cast<std::uint16_t>(i));
            rates.push_back(image[i] / 255.0 * max_rate);
        }
    }

    SpikeTrain train(duration, static_cast<int>(image.size()));
    SplitMix64 rng(seed);
    for (int t = 0; t < duration; ++t) {
        for (std::size_t k = 0; k < lines.size(); ++k) {
            if (rng.bernoulli(rates[k])) {
                train.add_spike(t, lines[k]);
            }
        }
    }
    return train;
}

} // namespace snnsim
