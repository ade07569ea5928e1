#include "inkspect/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "inkspect/envi.hpp"
#include "inkspect/errors.hpp"
#include "inkspect/netpbm.hpp"
#include "inkspect/random.hpp"

#include "json.hpp"

namespace inkspect {
namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Ink reflectance: a rising logistic ramp. Each ink gets its own inflection
// wavelength (evenly spread over the spectral range), ramp width, base and
// amplitude, and stays darker than paper at every band.
double ink_reflectance(int ink, int inks, double wavelength, double wl_start, double wl_end) {
    const double inflection =
        wl_start + (wl_end - wl_start) * (ink + 1) / static_cast<double>(inks + 1);
    const double width = 14.0 + 6.0 * (ink % 3);
    const double base = 0.05 + 0.06 * ((ink * 2) % 5) / 4.0;
    const double amplitude = 0.35 + 0.30 * ((ink * 3) % 7) / 6.0;
    return base + amplitude * logistic((wavelength - inflection) / width);
}

double paper_reflectance(double wavelength) {
    return 0.86 + 0.06 * logistic((wavelength - 600.0) / 80.0);
}

}  // namespace

SynthDocument generate_document(const SynthSpec& spec) {
    if (spec.inks < 1) throw InvalidParameterError("ink count must be >= 1");
    if (spec.lines < 1) throw InvalidParameterError("line count must be >= 1");
    if (spec.inks > spec.lines)
        throw InvalidParameterError("ink count must not exceed line count (inks repeat as "
                                    "line index mod ink count)");
    if (spec.rows < 1 || spec.cols < 1 || spec.bands < 1)
        throw InvalidParameterError("cube dimensions must be positive");
    if (spec.noise_sigma < 0.0) throw InvalidParameterError("noise sigma must be >= 0");
    if (spec.bands > 1 && !(spec.wavelength_start_nm < spec.wavelength_end_nm))
        throw InvalidParameterError("wavelength range must be increasing");

    const int margin_rows = std::max(2, spec.rows / 16);
    const int margin_cols = std::max(2, spec.cols / 16);
    const int content_rows = spec.rows - 2 * margin_rows;
    const int slot = content_rows / spec.lines;
    if (slot < 10)
        throw InvalidParameterError("rows too small for " + std::to_string(spec.lines) +
                                    " text lines");
    const int span_cols = spec.cols - 2 * margin_cols;
    if (span_cols < 16) throw InvalidParameterError("cols too small for text strokes");

    SynthDocument doc;
    doc.spec = spec;

    std::vector<double> wavelengths(spec.bands);
    for (int b = 0; b < spec.bands; ++b)
        wavelengths[b] =
            spec.bands == 1
                ? spec.wavelength_start_nm
                : spec.wavelength_start_nm + (spec.wavelength_end_nm - spec.wavelength_start_nm) *
                                                 (static_cast<double>(b) / (spec.bands - 1));

    doc.prototypes.resize(spec.inks);
    for (int i = 0; i < spec.inks; ++i) {
        doc.prototypes[i].resize(spec.bands);
        for (int b = 0; b < spec.bands; ++b)
            doc.prototypes[i][b] = ink_reflectance(i, spec.inks, wavelengths[b],
                                                   spec.wavelength_start_nm,
                                                   spec.wavelength_end_nm);
    }
    doc.paper_spectrum.resize(spec.bands);
    for (int b = 0; b < spec.bands; ++b) doc.paper_spectrum[b] = paper_reflectance(wavelengths[b]);

    doc.ink_of_line.resize(spec.lines);
    for (int line = 0; line < spec.lines; ++line) doc.ink_of_line[line] = line % spec.inks;

    // Rasterize one thick sinusoidal stroke per line.
    std::vector<int> ink_at(static_cast<std::size_t>(spec.rows) * spec.cols, -1);
    const int stroke_height = std::max(5, slot * 3 / 5);
    const int thickness = std::max(2, stroke_height / 6);
    const double amplitude = std::max(0.0, stroke_height / 2.0 - thickness - 1.0);
    for (int line = 0; line < spec.lines; ++line) {
        const int row_top = margin_rows + line * slot + (slot - stroke_height) / 2;
        const double mid = row_top + stroke_height / 2.0;
        const double phase = 0.9 * line;
        for (int c = margin_cols; c < margin_cols + span_cols; ++c) {
            const double x = static_cast<double>(c - margin_cols) / span_cols;
            const double center =
                mid + amplitude * std::sin(2.0 * std::numbers::pi * 3.0 * x + phase);
            const int r_lo = std::max(row_top, static_cast<int>(std::ceil(center - thickness)));
            const int r_hi = std::min(row_top + stroke_height - 1,
                                      static_cast<int>(std::floor(center + thickness)));
            for (int r = r_lo; r <= r_hi; ++r)
                ink_at[static_cast<std::size_t>(r) * spec.cols + c] = doc.ink_of_line[line];
        }
    }

    doc.cube.rows = spec.rows;
    doc.cube.cols = spec.cols;
    doc.cube.bands = spec.bands;
    doc.cube.wavelengths_nm = wavelengths;
    doc.cube.data.resize(doc.cube.element_count());

    Rng rng(mix64(spec.seed) ^ 0x73796e7468ULL);
    for (int r = 0; r < spec.rows; ++r)
        for (int c = 0; c < spec.cols; ++c) {
            const int ink = ink_at[static_cast<std::size_t>(r) * spec.cols + c];
            const std::vector<double>& base =
                ink >= 0 ? doc.prototypes[ink] : doc.paper_spectrum;
            double* dst = doc.cube.data.data() + doc.cube.index(r, c, 0);
            for (int b = 0; b < spec.bands; ++b) {
                double v = base[b];
                if (spec.noise_sigma > 0.0) v += spec.noise_sigma * rng.normal();
                dst[b] = std::max(0.0, v);
            }
            if (ink >= 0) doc.pixels.push_back({r, c, ink});
        }
    return doc;
}

std::string ground_truth_json(const SynthDocument& doc) {
    nlohmann::ordered_json j;
    j["seed"] = doc.spec.seed;
    j["inks"] = doc.spec.inks;
    j["lines"] = doc.spec.lines;
    j["rows"] = doc.spec.rows;
    j["cols"] = doc.spec.cols;
    j["bands"] = doc.spec.bands;
    j["wavelength_start_nm"] = doc.spec.wavelength_start_nm;
    j["wavelength_end_nm"] = doc.spec.wavelength_end_nm;
    j["noise_sigma"] = doc.spec.noise_sigma;
    j["ink_of_line"] = doc.ink_of_line;
    j["prototypes"] = doc.prototypes;
    j["paper_spectrum"] = doc.paper_spectrum;
    auto pixels = nlohmann::ordered_json::array();
    for (const auto& pixel : doc.pixels)
        pixels.push_back({pixel.row, pixel.col, pixel.ink});
    j["pixels"] = std::move(pixels);
    return j.dump();
}

void save_document(const std::string& base_path, const SynthDocument& doc) {
    save_cube(base_path, doc.cube, Interleave::BSQ, DataType::Float32);
    write_text_file(base_path + "_truth.json", ground_truth_json(doc));
}

}  // namespace inkspect
