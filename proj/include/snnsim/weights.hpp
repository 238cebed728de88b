#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace snnsim {

// Crossbar contents: 8-bit synaptic weight codes laid out input-rows x
// neuron-columns (row-major, so one input row is contiguous). `scale` maps
// an integer code back to potential units.
class QuantizedWeightMatrix {
public:
    QuantizedWeightMatrix(int num_inputs, int num_neurons, double scale);

    // Linear quantization of real-valued weights in [0, w_limit]:
    // scale = w_limit / 255, round half up.
    static QuantizedWeightMatrix quantize(std::span<const double> real_weights,
            int num_inputs, int num_neurons, double w_limit);

    int num_inputs() const { return rows_; }
    int num_neurons() const { return cols_; }
    double scale() const { return scale_; }

    std::uint8_t at(int row, int col) const { return codes_[idx(row, col)]; }
    void set(int row, int col, std::uint8_t code) { codes_[idx(row, col)] = code; }

    double dequantize(std::uint8_t code) const { return code * scale_; }

    std::span<const std::uint8_t> row(int r) const
    {
        return {codes_.data() + static_cast<std::size_t>(r) * cols_,
                static_cast<std::size_t>(cols_)};
    }
    // Strided copy; the storage is row-major.
    std::vector<std::uint8_t> column(int c) const;

    std::span<const std::uint8_t> codes() const { return codes_; }
    std::span<std::uint8_t> codes_mut() { return codes_; }

    bool operator==(const QuantizedWeightMatrix &other) const = default;

private:
    std::size_t idx(int row, int col) const
    {
        return static_cast<std::size_t>(row) * cols_ + col;
    }

    int rows_;
    int cols_;
    double scale_;
    std::vector<std::uint8_t> codes_;
};

// Statistics of the clean (fault-free) trained model that parameterize the
// weight-bounding policies: the maximum code, the most-probable nonzero
// code, and the full 256-bin code histogram.
struct CleanModelStats {
    std::uint8_t wgh_max = 0;
    std::uint8_t wgh_hp = 0;
    std::array<std::uint64_t, 256> histogram{};
};

// wgh_max is the exact maximum over all codes. wgh_hp comes from a 16-bin
// coarse histogram over the nonzero codes 1..255: take the most-populated
// bin (ties to the lower bin), report its center code 16*k + 8, clamped to
// wgh_max.
CleanModelStats compute_clean_stats(const QuantizedWeightMatrix &weights);

} // namespace snnsim
