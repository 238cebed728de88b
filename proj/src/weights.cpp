#include "snnsim/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace snnsim {

QuantizedWeightMatrix::QuantizedWeightMatrix(int num_inputs, int num_neurons, double scale)
    : rows_(num_inputs)
    , cols_(num_neurons)
    , scale_(scale)
    , codes_(static_cast<std::size_t>(num_inputs) * num_neurons, 0)
{
    if (num_inputs <= 0 || num_neurons <= 0) {
        throw std::invalid_argument("QuantizedWeightMatrix: dimensions must be positive");
    }
    if (scale <= 0.0) {
        throw std::invalid_argument("QuantizedWeightMatrix: scale must be positive");
    }
}

QuantizedWeightMatrix QuantizedWeightMatrix::quantize(std::span<const double> real_weights,
        int num_inputs, int num_neurons, double w_limit)
{
    if (w_limit <= 0.0) {
        throw std::invalid_argument("quantize: w_limit must be positive");
    }
    if (real_weights.size() != static_cast<std::size_t>(num_inputs) * num_neurons) {
        throw std::invalid_argument("quantize: weight count does not match dimensions");
    }
    const double scale = w_limit / 255.0;
    QuantizedWeightMatrix q(num_inputs, num_neurons, scale);
    for (std::size_t k = 0; k < real_weights.size(); ++k) {
        const double code = std::floor(real_weights[k] / scale + 0.5);
        q.codes_[k] = static_cast<std::uint8_t>(std::clamp(code, 0.0, 255.0));
    }
    return q;
}

std::vector<std::uint8_t> QuantizedWeightMatrix::column(int c) const
{
    std::vector<std::uint8_t> out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) {
        out[r] = codes_[idx(r, c)];
    }
    return out;
}

CleanModelStats compute_clean_stats(const QuantizedWeightMatrix &weights)
{
    CleanModelStats stats;
    for (std::uint8_t code : weights.codes()) {
        stats.histogram[code] += 1;
        stats.wgh_max = std::max(stats.wgh_max, code);
    }

    // 16-bin coarse histogram over nonzero codes; bin k covers 16k..16k+15.
    std::array<std::uint64_t, 16> coarse{};
    for (int code = 1; code < 256; ++code) {
        coarse[code / 16] += stats.histogram[code];
    }
    int best_bin = 0;
    for (int k = 1; k < 16; ++k) {
        if (coarse[k] > coarse[best_bin]) {
            best_bin = k;
        }
    }
    const int center = best_bin * 16 + 8;
    stats.wgh_hp = static_cast<std::uint8_t>(
            std::min<int>(center, stats.wgh_max));
    return stats;
}

} // namespace snnsim
