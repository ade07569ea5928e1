#include "inkspect/netpbm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "inkspect/errors.hpp"

namespace inkspect {
namespace {

void append_text(std::vector<std::byte>& out, const std::string& text) {
    for (char c : text) out.push_back(static_cast<std::byte>(c));
}

}  // namespace

std::vector<std::byte> encode_pgm(const BandImage& image) {
    if (image.pixels.empty()) throw InvalidParameterError("empty image");

    const auto [min_it, max_it] = std::minmax_element(image.pixels.begin(), image.pixels.end());
    const double lo = *min_it, hi = *max_it;
    const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;

    std::vector<std::byte> out;
    out.reserve(image.pixels.size() + 32);
    append_text(out, "P5\n" + std::to_string(image.cols) + " " + std::to_string(image.rows) +
                         "\n255\n");
    for (double v : image.pixels)
        out.push_back(static_cast<std::byte>(
            static_cast<std::uint8_t>(std::lround((v - lo) * scale))));
    return out;
}

std::vector<std::byte> encode_pbm(const BinaryMask& mask) {
    if (mask.bits.empty()) throw InvalidParameterError("empty mask");

    std::vector<std::byte> out;
    const int bytes_per_row = (mask.cols + 7) / 8;
    out.reserve(static_cast<std::size_t>(bytes_per_row) * mask.rows + 32);
    append_text(out, "P4\n" + std::to_string(mask.cols) + " " + std::to_string(mask.rows) + "\n");
    for (int r = 0; r < mask.rows; ++r) {
        for (int byte = 0; byte < bytes_per_row; ++byte) {
            std::uint8_t packed = 0;
            for (int bit = 0; bit < 8; ++bit) {
                const int c = byte * 8 + bit;
                if (c < mask.cols && mask.at(r, c)) packed |= static_cast<std::uint8_t>(0x80 >> bit);
            }
            out.push_back(static_cast<std::byte>(packed));
        }
    }
    return out;
}

std::vector<std::byte> encode_ppm(int rows, int cols, const std::vector<std::uint8_t>& rgb) {
    if (rows < 1 || cols < 1 || rgb.size() != static_cast<std::size_t>(rows) * cols * 3)
        throw InvalidParameterError("rgb buffer must hold rows*cols*3 bytes");

    std::vector<std::byte> out;
    out.reserve(rgb.size() + 32);
    append_text(out, "P6\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n255\n");
    for (std::uint8_t v : rgb) out.push_back(static_cast<std::byte>(v));
    return out;
}

void write_file(const std::string& path, const std::vector<std::byte>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<std::byte> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<std::byte> out;
    char buf[1 << 14];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const auto got = static_cast<std::size_t>(in.gcount());
        const auto* p = reinterpret_cast<const std::byte*>(buf);
        out.insert(out.end(), p, p + got);
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace inkspect
