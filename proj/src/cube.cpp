#include "inkspect/cube.hpp"

#include <string>

#include "inkspect/errors.hpp"
#include "inkspect/segmentation.hpp"

namespace inkspect {

HyperCube HyperCube::zeros(int rows, int cols, int bands) {
    if (rows < 1 || cols < 1 || bands < 1)
        throw InvalidParameterError("cube dimensions must be positive");
    HyperCube cube;
    cube.rows = rows;
    cube.cols = cols;
    cube.bands = bands;
    cube.data.assign(static_cast<std::size_t>(rows) * cols * bands, 0.0);
    return cube;
}

BandImage get_band(const HyperCube& cube, int band) {
    if (band < 0 || band >= cube.bands)
        throw BoundsError("band index " + std::to_string(band) + " out of range [0, " +
                          std::to_string(cube.bands) + ")");
    BandImage image;
    image.rows = cube.rows;
    image.cols = cube.cols;
    image.band_index = band;
    if (cube.wavelengths_nm) image.wavelength_nm = (*cube.wavelengths_nm)[band];
    image.pixels.resize(static_cast<std::size_t>(cube.rows) * cube.cols);
    for (int r = 0; r < cube.rows; ++r)
        for (int c = 0; c < cube.cols; ++c) image.at(r, c) = cube.at(r, c, band);
    return image;
}

HyperCube crop(const HyperCube& cube, int top, int left, int height, int width) {
    if (height < 1 || width < 1)
        throw BoundsError("crop rectangle must have positive size");
    if (top < 0 || left < 0 || top + height > cube.rows || left + width > cube.cols)
        throw BoundsError("crop rectangle exceeds image bounds");

    HyperCube out;
    out.rows = height;
    out.cols = width;
    out.bands = cube.bands;
    out.wavelengths_nm = cube.wavelengths_nm;
    out.data.resize(out.element_count());
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) {
            const double* src = cube.data.data() + cube.index(top + r, left + c, 0);
            double* dst = out.data.data() + out.index(r, c, 0);
            std::copy(src, src + cube.bands, dst);
        }
    return out;
}

BandImage to_grayscale(const HyperCube& cube) {
    BandImage image;
    image.rows = cube.rows;
    image.cols = cube.cols;
    image.pixels.resize(static_cast<std::size_t>(cube.rows) * cube.cols);
    for (int r = 0; r < cube.rows; ++r)
        for (int c = 0; c < cube.cols; ++c) {
            const double* spectrum = cube.data.data() + cube.index(r, c, 0);
            double sum = 0.0;
            for (int b = 0; b < cube.bands; ++b) sum += spectrum[b];
            image.at(r, c) = sum / cube.bands;
        }
    return image;
}

SpectralSignature spectrum_at(const HyperCube& cube, int row, int col) {
    if (row < 0 || row >= cube.rows || col < 0 || col >= cube.cols)
        throw BoundsError("pixel (" + std::to_string(row) + ", " + std::to_string(col) +
                          ") out of range");
    SpectralSignature sig;
    const auto view = cube.pixel_spectrum(row, col);
    sig.values.assign(view.begin(), view.end());
    sig.wavelengths_nm = cube.wavelengths_nm;
    return sig;
}

SpectralSignature mean_spectrum(const HyperCube& cube, const BinaryMask& mask) {
    if (mask.rows != cube.rows || mask.cols != cube.cols)
        throw InvalidParameterError("mask dimensions do not match the cube's image plane");

    SpectralSignature sig;
    sig.values.assign(cube.bands, 0.0);
    sig.wavelengths_nm = cube.wavelengths_nm;
    std::size_t count = 0;
    for (int r = 0; r < cube.rows; ++r)
        for (int c = 0; c < cube.cols; ++c) {
            if (!mask.at(r, c)) continue;
            ++count;
            const double* spectrum = cube.data.data() + cube.index(r, c, 0);
            for (int b = 0; b < cube.bands; ++b) sig.values[b] += spectrum[b];
        }
    if (count == 0) throw EmptySelectionError("mask selects no pixels");
    for (double& v : sig.values) v /= static_cast<double>(count);
    return sig;
}

}  // namespace inkspect
