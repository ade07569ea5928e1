#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inkspect/clustering.hpp"
#include "inkspect/cube.hpp"

namespace inkspect {

// Parameters of the synthetic handwritten-document generator. Defaults
// match the layout this tool is normally pointed at: a 650x512 page with
// 149 bands between 478.78 and 900.97 nm, 12 text lines, 7 inks.
struct SynthSpec {
    int inks = 7;
    int lines = 12;
    int rows = 650;
    int cols = 512;
    int bands = 149;
    double wavelength_start_nm = 478.7825462;
    double wavelength_end_nm = 900.9723394;
    double noise_sigma = 0.01;
    std::uint64_t seed = 0;
};

struct GroundTruthPixel {
    int row = 0;
    int col = 0;
    int ink = 0;  // 0-based ink index
};

struct SynthDocument {
    HyperCube cube;
    std::vector<std::vector<double>> prototypes;  // inks x bands, noise-free
    std::vector<double> paper_spectrum;           // bands, noise-free
    std::vector<int> ink_of_line;                 // size lines
    std::vector<GroundTruthPixel> pixels;         // every ink pixel, raster order
    SynthSpec spec;
};

// Renders `lines` sinusoidal strokes onto bright paper. Each ink's
// reflectance is a logistic ramp with a distinct inflection wavelength;
// i.i.d. Gaussian noise is added to every element, clamped at zero.
// Deterministic per seed. Throws InvalidParameterError on bad parameters.
SynthDocument generate_document(const SynthSpec& spec);

// JSON ground-truth document (prototypes, ink-of-line assignment, pixels).
std::string ground_truth_json(const SynthDocument& doc);

// Writes <base>.hdr, <base>.raw (float32) and <base>_truth.json.
void save_document(const std::string& base_path, const SynthDocument& doc);

}  // namespace inkspect
