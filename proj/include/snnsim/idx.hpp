#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace snnsim {

struct IdxImages {
    int count = 0;
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> pixels;  // count * rows * cols, image-major

    std::size_t image_size() const { return static_cast<std::size_t>(rows) * cols; }
    const std::uint8_t *image(int i) const { return pixels.data() + i * image_size(); }
};

struct IdxLabels {
    std::vector<std::uint8_t> labels;
};

// IDX readers (the MNIST container format): big-endian magic 0x00000803
// for images / 0x00000801 for labels, big-endian dimension words, raw
// bytes. Failures throw std::runtime_error naming the byte offset.
IdxImages load_idx_images(const std::string &path);
IdxLabels load_idx_labels(const std::string &path);

// Writers used by the dataset generator and the tests.
void write_idx_images(const std::string &path, const IdxImages &images);
void write_idx_labels(const std::string &path, const IdxLabels &labels);

} // namespace snnsim
