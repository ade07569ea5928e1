#include "inkspect/envi.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "inkspect/errors.hpp"
#include "inkspect/text.hpp"

namespace inkspect {
namespace {

// Normalize a key: lowercase, internal whitespace runs collapsed to one space.
std::string normalize_key(std::string_view raw) {
    std::string key;
    bool pending_space = false;
    for (char c : trim(raw)) {
        if (c == ' ' || c == '\t') {
            pending_space = !key.empty();
            continue;
        }
        if (pending_space) {
            key += ' ';
            pending_space = false;
        }
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
        key += c;
    }
    return key;
}

struct RawEntry {
    std::string value;
    int line = 0;  // 1-based line where the key appeared
};

long long parse_integer(const RawEntry& entry, const std::string& key) {
    const auto sv = trim(entry.value);
    long long out = 0;
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), out);
    if (ec != std::errc{} || ptr != sv.data() + sv.size())
        throw ParseError("non-numeric value for '" + key + "': '" + std::string(sv) + "'",
                         entry.line);
    return out;
}

std::vector<double> parse_double_list(const RawEntry& entry, const std::string& key) {
    std::vector<double> out;
    std::string_view rest = entry.value;
    while (true) {
        const auto comma = rest.find(',');
        const auto item = trim(comma == std::string_view::npos ? rest : rest.substr(0, comma));
        if (!item.empty()) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
            if (ec != std::errc{} || ptr != item.data() + item.size())
                throw ParseError("non-numeric entry in '" + key + "' list: '" +
                                     std::string(item) + "'",
                                 entry.line);
            out.push_back(v);
        }
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

DataType data_type_from_code(long long code, int line) {
    switch (code) {
        case 1: return DataType::UInt8;
        case 2: return DataType::Int16;
        case 3: return DataType::Int32;
        case 4: return DataType::Float32;
        case 5: return DataType::Float64;
        case 12: return DataType::UInt16;
        case 13: return DataType::UInt32;
        default:
            throw FormatError("unsupported data type code " + std::to_string(code) +
                              " (line " + std::to_string(line) + ")");
    }
}

template <typename T>
T byteswap_value(T v) {
    auto bytes = std::bit_cast<std::array<std::byte, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
}

template <typename T>
double decode_element(const std::byte* p, bool swap) {
    T v;
    std::memcpy(&v, p, sizeof(T));
    if (swap) v = byteswap_value(v);
    return static_cast<double>(v);
}

double decode_at(const std::byte* p, DataType type, bool swap) {
    switch (type) {
        case DataType::UInt8: return static_cast<double>(std::to_integer<std::uint8_t>(*p));
        case DataType::Int16: return decode_element<std::int16_t>(p, swap);
        case DataType::Int32: return decode_element<std::int32_t>(p, swap);
        case DataType::Float32: return decode_element<float>(p, swap);
        case DataType::Float64: return decode_element<double>(p, swap);
        case DataType::UInt16: return decode_element<std::uint16_t>(p, swap);
        case DataType::UInt32: return decode_element<std::uint32_t>(p, swap);
    }
    throw FormatError("unsupported data type");
}

template <typename T>
void encode_element(std::byte* p, T v) {
    std::memcpy(p, &v, sizeof(T));
}

template <typename T>
void encode_integral(std::byte* p, double v) {
    if (!(v >= static_cast<double>(std::numeric_limits<T>::min()) &&
          v <= static_cast<double>(std::numeric_limits<T>::max())) ||
        v != std::floor(v))
        throw InvalidParameterError("value " + format_double(v) +
                                    " not representable in the requested integer type");
    encode_element<T>(p, static_cast<T>(v));
}

void encode_at(std::byte* p, DataType type, double v) {
    switch (type) {
        case DataType::UInt8: encode_integral<std::uint8_t>(p, v); return;
        case DataType::Int16: encode_integral<std::int16_t>(p, v); return;
        case DataType::Int32: encode_integral<std::int32_t>(p, v); return;
        case DataType::Float32: encode_element<float>(p, static_cast<float>(v)); return;
        case DataType::Float64: encode_element<double>(p, v); return;
        case DataType::UInt16: encode_integral<std::uint16_t>(p, v); return;
        case DataType::UInt32: encode_integral<std::uint32_t>(p, v); return;
    }
    throw FormatError("unsupported data type");
}

// Element offset (in elements, after header_offset) of (r, c, b).
std::size_t interleave_offset(Interleave il, int r, int c, int b, int lines, int samples,
                              int bands) {
    const auto R = static_cast<std::size_t>(r);
    const auto C = static_cast<std::size_t>(c);
    const auto B = static_cast<std::size_t>(b);
    switch (il) {
        case Interleave::BSQ:
            return B * (static_cast<std::size_t>(lines) * samples) + R * samples + C;
        case Interleave::BIL:
            return R * (static_cast<std::size_t>(bands) * samples) + B * samples + C;
        case Interleave::BIP:
            return (R * samples + C) * bands + B;
    }
    throw FormatError("unsupported interleave");
}

}  // namespace

int envi_type_code(DataType type) {
    switch (type) {
        case DataType::UInt8: return 1;
        case DataType::Int16: return 2;
        case DataType::Int32: return 3;
        case DataType::Float32: return 4;
        case DataType::Float64: return 5;
        case DataType::UInt16: return 12;
        case DataType::UInt32: return 13;
    }
    return 0;
}

std::size_t element_size(DataType type) {
    switch (type) {
        case DataType::UInt8: return 1;
        case DataType::Int16:
        case DataType::UInt16: return 2;
        case DataType::Int32:
        case DataType::UInt32:
        case DataType::Float32: return 4;
        case DataType::Float64: return 8;
    }
    return 0;
}

std::string to_string(Interleave interleave) {
    switch (interleave) {
        case Interleave::BSQ: return "bsq";
        case Interleave::BIL: return "bil";
        case Interleave::BIP: return "bip";
    }
    return "?";
}

std::string to_string(DataType type) {
    switch (type) {
        case DataType::UInt8: return "uint8";
        case DataType::Int16: return "int16";
        case DataType::Int32: return "int32";
        case DataType::Float32: return "float32";
        case DataType::Float64: return "float64";
        case DataType::UInt16: return "uint16";
        case DataType::UInt32: return "uint32";
    }
    return "?";
}

EnviHeader parse_header(const std::string& text) {
    if (trim(text).empty()) throw ParseError("empty header");

    std::map<std::string, RawEntry> entries;
    int line_no = 0;
    std::size_t pos = 0;
    bool first_content_line = true;

    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string_view line(text.data() + pos, eol - pos);
        ++line_no;
        const int key_line = line_no;
        pos = eol + 1;

        const auto stripped = trim(line);
        if (stripped.empty()) continue;
        if (first_content_line) {
            first_content_line = false;
            if (to_lower(stripped) == "envi") continue;
        }
        if (stripped.front() == ';') continue;  // comment

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'key = value', got '" + std::string(stripped) + "'",
                             key_line);

        const std::string key = normalize_key(line.substr(0, eq));
        if (key.empty()) throw ParseError("empty key", key_line);

        std::string value(trim(line.substr(eq + 1)));
        if (!value.empty() && value.front() == '{') {
            // Brace-delimited list, possibly spanning several lines.
            std::string body = value.substr(1);
            while (body.find('}') == std::string::npos) {
                if (pos >= text.size())
                    throw ParseError("unterminated '{' list for key '" + key + "'", key_line);
                eol = text.find('\n', pos);
                if (eol == std::string::npos) eol = text.size();
                body += '\n';
                body.append(text, pos, eol - pos);
                ++line_no;
                pos = eol + 1;
            }
            body.erase(body.find('}'));
            value = std::string(trim(body));
        }
        entries[key] = RawEntry{value, key_line};
    }

    const auto take = [&](const char* key) -> std::optional<RawEntry> {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        RawEntry e = it->second;
        entries.erase(it);
        return e;
    };
    const auto require = [&](const char* key) -> RawEntry {
        auto e = take(key);
        if (!e) throw MissingKeyError(key);
        return *e;
    };

    EnviHeader h;
    const auto read_dim = [&](const char* key) -> int {
        const RawEntry e = require(key);
        const long long v = parse_integer(e, key);
        if (v < 1)
            throw ConsistencyError(std::string(key) + " must be >= 1, got " + std::to_string(v));
        if (v > std::numeric_limits<int>::max())
            throw ConsistencyError(std::string(key) + " out of range");
        return static_cast<int>(v);
    };
    h.samples = read_dim("samples");
    h.lines = read_dim("lines");
    h.bands = read_dim("bands");

    {
        const RawEntry e = require("data type");
        h.data_type = data_type_from_code(parse_integer(e, "data type"), e.line);
    }
    {
        const RawEntry e = require("interleave");
        const std::string v = to_lower(trim(e.value));
        if (v == "bsq") h.interleave = Interleave::BSQ;
        else if (v == "bil") h.interleave = Interleave::BIL;
        else if (v == "bip") h.interleave = Interleave::BIP;
        else throw FormatError("unknown interleave '" + v + "'");
    }
    if (auto e = take("byte order")) {
        const long long v = parse_integer(*e, "byte order");
        if (v == 0) h.byte_order = ByteOrder::Little;
        else if (v == 1) h.byte_order = ByteOrder::Big;
        else throw FormatError("unknown byte order " + std::to_string(v));
    }
    if (auto e = take("header offset")) {
        const long long v = parse_integer(*e, "header offset");
        if (v < 0) throw ConsistencyError("header offset must be non-negative");
        h.header_offset = static_cast<std::uint64_t>(v);
    }
    if (auto e = take("wavelength")) {
        auto wl = parse_double_list(*e, "wavelength");
        if (static_cast<int>(wl.size()) != h.bands)
            throw ConsistencyError("wavelength count " + std::to_string(wl.size()) +
                                   " does not match bands " + std::to_string(h.bands));
        for (std::size_t i = 1; i < wl.size(); ++i)
            if (!(wl[i - 1] < wl[i]))
                throw ConsistencyError("wavelengths must be strictly increasing (index " +
                                       std::to_string(i) + ")");
        h.wavelengths_nm = std::move(wl);
    }
    if (auto e = take("wavelength units")) h.wavelength_units = std::string(trim(e->value));

    for (auto& [key, entry] : entries) h.extra[key] = entry.value;
    return h;
}

std::string header_to_text(const EnviHeader& header) {
    std::string out = "ENVI\n";
    const auto field = [&](const std::string& key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    field("samples", std::to_string(header.samples));
    field("lines", std::to_string(header.lines));
    field("bands", std::to_string(header.bands));
    field("header offset", std::to_string(header.header_offset));
    field("file type", "ENVI Standard");
    field("data type", std::to_string(envi_type_code(header.data_type)));
    field("interleave", to_string(header.interleave));
    field("byte order", header.byte_order == ByteOrder::Little ? "0" : "1");
    if (header.wavelength_units) field("wavelength units", *header.wavelength_units);
    if (header.wavelengths_nm) {
        out += "wavelength = {";
        for (std::size_t i = 0; i < header.wavelengths_nm->size(); ++i) {
            if (i % 6 == 0) out += "\n ";
            out += format_double((*header.wavelengths_nm)[i]);
            if (i + 1 < header.wavelengths_nm->size()) out += ", ";
        }
        out += "}\n";
    }
    for (const auto& [key, value] : header.extra) field(key, value);
    return out;
}

HyperCube read_cube(const EnviHeader& header, std::span<const std::byte> raw) {
    const std::size_t esz = element_size(header.data_type);
    const std::uint64_t need = header.header_offset + header.payload_bytes();
    if (raw.size() < need) throw SizeMismatchError(need, raw.size());

    HyperCube cube;
    cube.rows = header.lines;
    cube.cols = header.samples;
    cube.bands = header.bands;
    cube.wavelengths_nm = header.wavelengths_nm;
    cube.data.resize(cube.element_count());

    const std::byte* base = raw.data() + header.header_offset;
    const bool swap = header.byte_order == ByteOrder::Big;  // host is little-endian
    static_assert(std::endian::native == std::endian::little);

    for (int r = 0; r < cube.rows; ++r)
        for (int c = 0; c < cube.cols; ++c) {
            double* dst = cube.data.data() + cube.index(r, c, 0);
            for (int b = 0; b < cube.bands; ++b) {
                const std::size_t off = interleave_offset(header.interleave, r, c, b,
                                                          header.lines, header.samples,
                                                          header.bands);
                const double v = decode_at(base + off * esz, header.data_type, swap);
                if (!std::isfinite(v))
                    throw ConsistencyError("non-finite value at row " + std::to_string(r) +
                                           ", col " + std::to_string(c) + ", band " +
                                           std::to_string(b));
                dst[b] = v;
            }
        }
    return cube;
}

EnviFilePair write_cube(const HyperCube& cube, Interleave interleave, DataType data_type) {
    if (cube.element_count() == 0) throw InvalidParameterError("cannot write an empty cube");

    EnviHeader h;
    h.samples = cube.cols;
    h.lines = cube.rows;
    h.bands = cube.bands;
    h.interleave = interleave;
    h.data_type = data_type;
    h.byte_order = ByteOrder::Little;
    h.wavelengths_nm = cube.wavelengths_nm;
    if (cube.wavelengths_nm) h.wavelength_units = "Nanometers";

    const std::size_t esz = element_size(data_type);
    EnviFilePair pair;
    pair.payload.resize(cube.element_count() * esz);
    for (int r = 0; r < cube.rows; ++r)
        for (int c = 0; c < cube.cols; ++c)
            for (int b = 0; b < cube.bands; ++b) {
                const std::size_t off =
                    interleave_offset(interleave, r, c, b, h.lines, h.samples, h.bands);
                encode_at(pair.payload.data() + off * esz, data_type, cube.at(r, c, b));
            }
    pair.header_text = header_to_text(h);
    return pair;
}

namespace {

namespace fs = std::filesystem;

// Given either member of the file pair, return (header path, raw path).
std::pair<fs::path, fs::path> resolve_pair(const std::string& path) {
    fs::path p(path);
    fs::path header, raw;
    if (to_lower(p.extension().string()) == ".hdr") {
        header = p;
        const fs::path stem = p.parent_path() / p.stem();
        for (const char* ext : {"", ".raw", ".img", ".dat", ".bsq", ".bil", ".bip"}) {
            fs::path candidate = stem;
            candidate += ext;
            if (fs::exists(candidate)) {
                raw = candidate;
                break;
            }
        }
        if (raw.empty()) throw IoError("no raw file found next to header '" + path + "'");
    } else {
        raw = p;
        fs::path candidate = p;
        candidate += ".hdr";
        if (fs::exists(candidate)) {
            header = candidate;
        } else {
            candidate = p.parent_path() / p.stem();
            candidate += ".hdr";
            if (fs::exists(candidate)) header = candidate;
        }
        if (header.empty()) throw IoError("no .hdr file found next to '" + path + "'");
    }
    return {header, raw};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::string out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return out;
}

}  // namespace

EnviHeader load_header(const std::string& path) {
    fs::path p(path);
    if (to_lower(p.extension().string()) != ".hdr") {
        const auto [header_path, raw_path] = resolve_pair(path);
        return parse_header(slurp(header_path));
    }
    return parse_header(slurp(p));
}

HyperCube load_cube(const std::string& path) {
    const auto [header_path, raw_path] = resolve_pair(path);
    const EnviHeader header = parse_header(slurp(header_path));
    const std::string raw = slurp(raw_path);
    return read_cube(header, std::as_bytes(std::span(raw.data(), raw.size())));
}

void save_cube(const std::string& base_path, const HyperCube& cube, Interleave interleave,
               DataType data_type) {
    const EnviFilePair pair = write_cube(cube, interleave, data_type);
    {
        std::ofstream out(base_path + ".hdr", std::ios::binary);
        if (!out) throw IoError("cannot write '" + base_path + ".hdr'");
        out << pair.header_text;
    }
    std::ofstream out(base_path + ".raw", std::ios::binary);
    if (!out) throw IoError("cannot write '" + base_path + ".raw'");
    out.write(reinterpret_cast<const char*>(pair.payload.data()),
              static_cast<std::streamsize>(pair.payload.size()));
}

}  // namespace inkspect
