#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace inkspect {

struct BinaryMask;

// One wavelength slice of a cube, or any derived 2-D intensity image.
struct BandImage {
    int rows = 0;
    int cols = 0;
    std::vector<double> pixels;  // row-major, rows*cols
    std::optional<int> band_index;
    std::optional<double> wavelength_nm;

    double at(int r, int c) const { return pixels[static_cast<std::size_t>(r) * cols + c]; }
    double& at(int r, int c) { return pixels[static_cast<std::size_t>(r) * cols + c]; }
};

// Reflectance per band for a pixel or a pixel set.
struct SpectralSignature {
    std::vector<double> values;  // length == bands
    std::optional<std::vector<double>> wavelengths_nm;
};

// In-memory hyperspectral cube. Element (row, col, band) is stored at
// (row*cols + col)*bands + band, so per-pixel spectra are contiguous.
// Values are held as double regardless of the on-disk type.
struct HyperCube {
    int rows = 0;
    int cols = 0;
    int bands = 0;
    std::optional<std::vector<double>> wavelengths_nm;  // length == bands when present
    std::vector<double> data;

    static HyperCube zeros(int rows, int cols, int bands);

    std::size_t element_count() const {
        return static_cast<std::size_t>(rows) * cols * bands;
    }
    std::size_t index(int r, int c, int b) const {
        return (static_cast<std::size_t>(r) * cols + c) * bands + b;
    }
    double at(int r, int c, int b) const { return data[index(r, c, b)]; }
    double& at(int r, int c, int b) { return data[index(r, c, b)]; }

    // Contiguous spectrum of one pixel; valid while the cube lives.
    std::span<const double> pixel_spectrum(int r, int c) const {
        return {data.data() + index(r, c, 0), static_cast<std::size_t>(bands)};
    }
};

// 2-D slice at one band, with its wavelength attached when known.
BandImage get_band(const HyperCube& cube, int band);

// Sub-cube over the image plane; all bands retained.
HyperCube crop(const HyperCube& cube, int top, int left, int height, int width);

// Per-pixel arithmetic mean across all bands.
BandImage to_grayscale(const HyperCube& cube);

// Spectrum of a single pixel.
SpectralSignature spectrum_at(const HyperCube& cube, int row, int col);

// Per-band mean over the pixels selected by the mask.
SpectralSignature mean_spectrum(const HyperCube& cube, const BinaryMask& mask);

}  // namespace inkspect
