#include "snnsim/idx.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace snnsim {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;

std::string hex32(std::uint32_t value)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08x", value);
    return buf;
}

std::vector<std::uint8_t> read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("idx: cannot open '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const std::vector<std::uint8_t> &data, std::size_t offset,
        const std::string &path)
{
    if (offset + 4 > data.size()) {
        throw std::runtime_error("idx: '" + path + "' truncated at byte offset " +
                std::to_string(offset) + " (need 4 more bytes)");
    }
    return (static_cast<std::uint32_t>(data[offset]) << 24) |
            (static_cast<std::uint32_t>(data[offset + 1]) << 16) |
            (static_cast<std::uint32_t>(data[offset + 2]) << 8) |
            static_cast<std::uint32_t>(data[offset + 3]);
}

void append_be32(std::vector<std::uint8_t> &out, std::uint32_t value)
{
    out.push_back(static_cast<std::uint8_t>(value >> 24));
    out.push_back(static_cast<std::uint8_t>(value >> 16));
    out.push_back(static_cast<std::uint8_t>(value >> 8));
    out.push_back(static_cast<std::uint8_t>(value));
}

void write_file(const std::string &path, const std::vector<std::uint8_t> &bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("idx: cannot open '" + path + "' for writing");
    }
    out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("idx: write to '" + path + "' failed");
    }
}

} // namespace

IdxImages load_idx_images(const std::string &path)
{
    const auto data = read_file(path);
    const std::uint32_t magic = read_be32(data, 0, path);
    if (magic != kImagesMagic) {
        throw std::runtime_error("idx: '" + path + "' wrong magic at byte offset 0: got " +
                hex32(magic) + ", expected 0x00000803 (images)");
    }

    IdxImages images;
    images.count = static_cast<int>(read_be32(data, 4, path));
    images.rows = static_cast<int>(read_be32(data, 8, path));
    images.cols = static_cast<int>(read_be32(data, 12, path));

    const std::size_t expected = 16 +
            static_cast<std::size_t>(images.count) * images.rows * images.cols;
    if (data.size() != expected) {
        throw std::runtime_error("idx: '" + path + "' has " + std::to_string(data.size()) +
                " bytes, expected " + std::to_string(expected));
    }
    images.pixels.assign(data.begin() + 16, data.end());
    return images;
}

IdxLabels load_idx_labels(const std::string &path)
{
    const auto data = read_file(path);
    const std::uint32_t magic = read_be32(data, 0, path);
    if (magic != kLabelsMagic) {
        throw std::runtime_error("idx: '" + path + "' wrong magic at byte offset 0: got " +
                hex32(magic) + ", expected 0x00000801 (labels)");
    }

    const std::uint32_t count = read_be32(data, 4, path);
    const std::size_t expected = 8 + count;
    if (data.size() != expected) {
        throw std::runtime_error("idx: '" + path + "' has " + std::to_string(data.size()) +
                " bytes, expected " + std::to_string(expected));
    }
    IdxLabels labels;
    labels.labels.assign(data.begin() + 8, data.end());
    return labels;
}

void write_idx_images(const std::string &path, const IdxImages &images)
{
    if (images.pixels.size() !=
            static_cast<std::size_t>(images.count) * images.rows * images.cols) {
        throw std::invalid_argument("idx: image buffer does not match header");
    }
    std::vector<std::uint8_t> bytes;
    bytes.reserve(16 + images.pixels.size());
    append_be32(bytes, kImagesMagic);
    append_be32(bytes, static_cast<std::uint32_t>(images.count));
    append_be32(bytes, static_cast<std::uint32_t>(images.rows));
    append_be32(bytes, static_cast<std::uint32_t>(images.cols));
    bytes.insert(bytes.end(), images.pixels.begin(), images.pixels.end());
    write_file(path, bytes);
}

void write_idx_labels(const std::string &path, const IdxLabels &labels)
{
    std::vector<std::uint8_t> bytes;
    bytes.reserve(8 + labels.labels.size());
    append_be32(bytes, kLabelsMagic);
    append_be32(bytes, static_cast<std::uint32_t>(labels.labels.size()));
    bytes.insert(bytes.end(), labels.labels.begin(), labels.labels.end());
    write_file(path, bytes);
}

} // namespace snnsim
