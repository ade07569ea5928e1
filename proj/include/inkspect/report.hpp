#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inkspect/clustering.hpp"
#include "inkspect/cube.hpp"
#include "inkspect/segmentation.hpp"

namespace inkspect {

using Rgb = std::array<std::uint8_t, 3>;

// Per-pixel cluster assignment: 0 == background/non-ink, 1..k == clusters.
struct LabelMap {
    int rows = 0;
    int cols = 0;
    std::vector<int> labels;  // row-major

    int at(int r, int c) const { return labels[static_cast<std::size_t>(r) * cols + c]; }
    std::size_t labeled_count() const;
    int max_label() const;
};

// Places label+1 at each provenance coordinate, 0 elsewhere. Every
// coordinate must be inside the mask's true set.
LabelMap build_label_map(const BinaryMask& mask, const std::vector<PixelCoord>& provenance,
                         const std::vector<int>& labels);

// Mean spectrum per cluster; empty clusters come back absent.
std::vector<std::optional<SpectralSignature>> cluster_mean_spectra(
    const SampleMatrix& samples, const std::vector<int>& labels, int k,
    const std::optional<std::vector<double>>& wavelengths_nm = std::nullopt);

// White background plus 12 distinguishable ink colors (Okabe-Ito order,
// extended). Index 0 is the background color.
const std::vector<Rgb>& default_palette();

// Binary PPM (P6); pixel color == palette[label]. Deterministic bytes.
std::vector<std::byte> render_label_map(const LabelMap& map, const std::vector<Rgb>& palette);

// CSV with a wavelength (or band index) first column and one named column
// per signature; absent signatures render as empty cells.
std::string spectra_csv(const std::vector<std::string>& column_names,
                        const std::vector<std::optional<SpectralSignature>>& signatures,
                        int bands, const std::optional<std::vector<double>>& wavelengths_nm);

}  // namespace inkspect
