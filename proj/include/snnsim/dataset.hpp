#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace snnsim {

struct Dataset {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> pixels;  // image-major, rows*cols per image
    std::vector<int> labels;

    int count() const { return static_cast<int>(labels.size()); }
    int image_size() const { return rows * cols; }
    std::span<const std::uint8_t> image(int i) const
    {
        return {pixels.data() + static_cast<std::size_t>(i) * image_size(),
                static_cast<std::size_t>(image_size())};
    }
    int num_classes() const;

    // Keeps the first n samples.
    Dataset subset(int n) const;
};

// Loads an image/label IDX pair and validates that the counts match.
Dataset load_dataset(const std::string &images_path, const std::string &labels_path);

// Writes the standard IDX pair (images then labels) under the given paths.
void save_dataset(const Dataset &data, const std::string &images_path,
        const std::string &labels_path);

// Deterministic stand-in workload for environments without the real MNIST
// files: 28x28 ten-class digit glyphs (seven-segment strokes) with random
// translation, scale, stroke thickness, intensity, and speckle noise. The
// same (count, seed) always produces identical bytes.
Dataset make_synthetic_dataset(int count, std::uint64_t seed);

} // namespace snnsim
