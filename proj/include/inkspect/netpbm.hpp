#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "inkspect/cube.hpp"
#include "inkspect/segmentation.hpp"

namespace inkspect {

// Binary PGM (P5), 8-bit, min-max normalized. A constant image renders as
// all zeros.
std::vector<std::byte> encode_pgm(const BandImage& image);

// Binary PBM (P4), bit-packed MSB-first; ink (true) is black (1).
std::vector<std::byte> encode_pbm(const BinaryMask& mask);

// Binary PPM (P6) from interleaved RGB bytes.
std::vector<std::byte> encode_ppm(int rows, int cols, const std::vector<std::uint8_t>& rgb);

void write_file(const std::string& path, const std::vector<std::byte>& bytes);
std::vector<std::byte> read_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace inkspect
