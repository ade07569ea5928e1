#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inkspect/cube.hpp"

namespace inkspect {

enum class Interleave { BSQ, BIL, BIP };
enum class ByteOrder { Little, Big };

// ENVI numeric data type codes this reader understands.
enum class DataType {
    UInt8,    // code 1
    Int16,    // code 2
    Int32,    // code 3
    Float32,  // code 4
    Float64,  // code 5
    UInt16,   // code 12
    UInt32,   // code 13
};

int envi_type_code(DataType type);
std::size_t element_size(DataType type);
std::string to_string(Interleave interleave);
std::string to_string(DataType type);

// Parsed metadata of a .hdr file. Unrecognized keys are kept verbatim
// in `extra` so a header can be inspected losslessly.
struct EnviHeader {
    int samples = 0;  // image width, pixels
    int lines = 0;    // image height, pixels
    int bands = 0;
    Interleave interleave = Interleave::BSQ;
    DataType data_type = DataType::Float32;
    ByteOrder byte_order = ByteOrder::Little;
    std::uint64_t header_offset = 0;  // bytes to skip in the raw file
    std::optional<std::vector<double>> wavelengths_nm;
    std::optional<std::string> wavelength_units;
    std::map<std::string, std::string> extra;  // lowercased key -> raw value

    std::uint64_t payload_bytes() const {
        return static_cast<std::uint64_t>(samples) * lines * bands * element_size(data_type);
    }
};

// Parse ENVI header text (key = value lines, case-insensitive keys,
// `{ ... }` lists spanning multiple lines). Throws MissingKeyError,
// ParseError, FormatError or ConsistencyError.
EnviHeader parse_header(const std::string& text);

// Render a header back to text. parse_header(header_to_text(h)) restores
// every recognized field exactly (doubles use shortest round-trip form).
std::string header_to_text(const EnviHeader& header);

// Decode a raw payload into a cube according to the header.
HyperCube read_cube(const EnviHeader& header, std::span<const std::byte> raw);

struct EnviFilePair {
    std::string header_text;
    std::vector<std::byte> payload;
};

// Encode a cube as a header/payload pair that parse_header + read_cube
// reproduce exactly (bit-exact for float32-valued cubes).
EnviFilePair write_cube(const HyperCube& cube, Interleave interleave, DataType data_type);

// File-pair helpers. `path` may name the .hdr or the raw file; the
// counterpart is resolved next to it (.raw/.img/.dat or bare name).
HyperCube load_cube(const std::string& path);
EnviHeader load_header(const std::string& path);
void save_cube(const std::string& base_path, const HyperCube& cube,
               Interleave interleave = Interleave::BSQ,
               DataType data_type = DataType::Float32);

}  // namespace inkspect
