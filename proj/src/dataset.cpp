#include "snnsim/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "snnsim/idx.hpp"
#include "snnsim/rng.hpp"

namespace snnsim {

int Dataset::num_classes() const
{
    int max_label = -1;
    for (int label : labels) {
        max_label = std::max(max_label, label);
    }
    return max_label + 1;
}

Dataset Dataset::subset(int n) const
{
    if (n < 0 || n > count()) {
        throw std::invalid_argument("Dataset::subset: size out of range");
    }
    Dataset out;
    out.rows = rows;
    out.cols = cols;
    out.pixels.assign(pixels.begin(),
            pixels.begin() + static_cast<std::size_t>(n) * image_size());
    out.labels.assign(labels.begin(), labels.begin() + n);
    return out;
}

Dataset load_dataset(const std::string &images_path, const std::string &labels_path)
{
    const IdxImages images = load_idx_images(images_path);
    const IdxLabels labels = load_idx_labels(labels_path);
    if (static_cast<std::size_t>(images.count) != labels.labels.size()) {
        throw std::runtime_error("dataset: " + std::to_string(images.count) +
                " images in '" + images_path + "' but " +
                std::to_string(labels.labels.size()) + " labels in '" + labels_path + "'");
    }
    Dataset data;
    data.rows = images.rows;
    data.cols = images.cols;
    data.pixels = images.pixels;
    data.labels.assign(labels.labels.begin(), labels.labels.end());
    return data;
}

void save_dataset(const Dataset &data, const std::string &images_path,
        const std::string &labels_path)
{
    IdxImages images;
    images.count = data.count();
    images.rows = data.rows;
    images.cols = data.cols;
    images.pixels = data.pixels;
    write_idx_images(images_path, images);

    IdxLabels labels;
    labels.labels.reserve(data.labels.size());
    for (int label : data.labels) {
        labels.labels.push_back(static_cast<std::uint8_t>(label));
    }
    write_idx_labels(labels_path, labels);
}

namespace {

struct Segment {
    double x0, y0, x1, y1;
};

// Seven-segment strokes on a unit canvas (y grows downward):
//   A top, B top-right, C bottom-right, D bottom, E bottom-left,
//   F top-left, G middle.
constexpr double kLeft = 0.27, kRight = 0.73, kTop = 0.16, kMid = 0.5, kBot = 0.84;
const Segment kSegments[7] = {
        {kLeft, kTop, kRight, kTop},    // A
        {kRight, kTop, kRight, kMid},   // B
        {kRight, kMid, kRight, kBot},   // C
        {kLeft, kBot, kRight, kBot},    // D
        {kLeft, kMid, kLeft, kBot},     // E
        {kLeft, kTop, kLeft, kMid},     // F
        {kLeft, kMid, kRight, kMid},    // G
};

// Active segments per digit, as ABCDEFG bitmasks.
constexpr unsigned kDigitSegments[10] = {
        0b1111110, // 0: ABCDEF
        0b0110000, // 1: BC
        0b1101101, // 2: ABDEG
        0b1111001, // 3: ABCDG
        0b0110011, // 4: BCFG
        0b1011011, // 5: ACDFG
        0b1011111, // 6: ACDEFG
        0b1110000, // 7: ABC
        0b1111111, // 8
        0b1111011, // 9: ABCDFG
};

double point_segment_distance(double px, double py, const Segment &s)
{
    const double dx = s.x1 - s.x0;
    const double dy = s.y1 - s.y0;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((px - s.x0) * dx + (py - s.y0) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double cx = s.x0 + t * dx;
    const double cy = s.y0 + t * dy;
    return std::hypot(px - cx, py - cy);
}

} // namespace

Dataset make_synthetic_dataset(int count, std::uint64_t seed)
{
    if (count <= 0) {
        throw std::invalid_argument("make_synthetic_dataset: count must be positive");
    }

    constexpr int kSide = 28;
    Dataset data;
    data.rows = kSide;
    data.cols = kSide;
    data.pixels.resize(static_cast<std::size_t>(count) * kSide * kSide);
    data.labels.resize(count);

    for (int i = 0; i < count; ++i) {
        SplitMix64 rng(derive_seed(seed, stream::kDataset, i));
        const int digit = static_cast<int>(rng.next_below(10));
        data.labels[i] = digit;

        const double scale = 0.85 + 0.25 * rng.next_double();
        const double dx = (rng.next_double() - 0.5) * 0.2;   // about +/- 2.8 px
        const double dy = (rng.next_double() - 0.5) * 0.2;
        const double thickness = 0.055 + 0.02 * rng.next_double();
        const double level = 0.75 + 0.25 * rng.next_double();
        const double soft = 0.03;  // blur band around each stroke

        std::uint8_t *img = data.pixels.data() + static_cast<std::size_t>(i) * kSide * kSide;
        for (int py = 0; py < kSide; ++py) {
            for (int px = 0; px < kSide; ++px) {
                // Map the pixel center into glyph coordinates.
                const double gx = ((px + 0.5) / kSide - 0.5 - dx) / scale + 0.5;
                const double gy = ((py + 0.5) / kSide - 0.5 - dy) / scale + 0.5;
                double coverage = 0.0;
                for (int s = 0; s < 7; ++s) {
                    if ((kDigitSegments[digit] >> (6 - s)) & 1u) {
                        const double d = point_segment_distance(gx, gy, kSegments[s]);
                        coverage = std::max(
                                coverage, std::clamp((thickness - d) / soft + 1.0, 0.0, 1.0));
                    }
                }
                img[py * kSide + px] =
                        static_cast<std::uint8_t>(std::lround(255.0 * level * coverage));
            }
        }

        // Light speckle noise so the encoder never sees a perfectly clean
        // background.
        for (int p = 0; p < kSide * kSide; ++p) {
            if (rng.bernoulli(0.01)) {
                img[p] = std::max<std::uint8_t>(
                        img[p], static_cast<std::uint8_t>(30 + rng.next_below(90)));
            }
        }
    }
    return data;
}

} // namespace snnsim
