#include "inkspect/segmentation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "inkspect/errors.hpp"

namespace inkspect {

std::size_t BinaryMask::population() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::optional<double> otsu_threshold(const BandImage& image) {
    if (image.pixels.empty()) throw InvalidParameterError("empty image");

    const auto [min_it, max_it] = std::minmax_element(image.pixels.begin(), image.pixels.end());
    const double lo = *min_it, hi = *max_it;
    if (!(hi > lo)) return std::nullopt;  // constant image: degenerate histogram

    constexpr int kBins = 256;
    std::array<std::int64_t, kBins> hist{};
    for (double v : image.pixels) {
        int bin = static_cast<int>((v - lo) / (hi - lo) * kBins);
        if (bin > kBins - 1) bin = kBins - 1;
        ++hist[bin];
    }

    const double total = static_cast<double>(image.pixels.size());
    double mean_total = 0.0;
    for (int i = 0; i < kBins; ++i) mean_total += i * static_cast<double>(hist[i]);
    mean_total /= total;

    // Single cumulative pass; bin index serves as the intensity value.
    int best_bin = 0;
    double best_variance = -1.0;
    double w0 = 0.0, sum0 = 0.0;
    for (int t = 0; t < kBins; ++t) {
        w0 += static_cast<double>(hist[t]) / total;
        sum0 += t * static_cast<double>(hist[t]) / total;
        if (w0 <= 0.0 || w0 >= 1.0) continue;
        const double mu0 = sum0 / w0;
        const double mu1 = (mean_total - sum0) / (1.0 - w0);
        const double variance = w0 * (1.0 - w0) * (mu0 - mu1) * (mu0 - mu1);
        if (variance > best_variance) {
            best_variance = variance;
            best_bin = t;
        }
    }
    if (best_variance < 0.0) return std::nullopt;  // all mass in one bin

    // Upper edge of the winning bin, mapped back to intensity units, so that
    // `pixel < threshold` selects exactly the bins <= best_bin.
    return lo + (hi - lo) * (static_cast<double>(best_bin) + 1.0) / kBins;
}

BinaryMask binarize(const BandImage& image, double threshold) {
    BinaryMask mask;
    mask.rows = image.rows;
    mask.cols = image.cols;
    mask.bits.resize(image.pixels.size());
    for (std::size_t i = 0; i < image.pixels.size(); ++i)
        mask.bits[i] = image.pixels[i] < threshold ? 1 : 0;
    return mask;
}

BinaryMask invert(const BinaryMask& mask) {
    BinaryMask out = mask;
    for (auto& bit : out.bits) bit ^= 1;
    return out;
}

std::vector<int> horizontal_projection(const BinaryMask& mask) {
    std::vector<int> counts(mask.rows, 0);
    for (int r = 0; r < mask.rows; ++r) {
        const std::uint8_t* row = mask.bits.data() + static_cast<std::size_t>(r) * mask.cols;
        counts[r] = static_cast<int>(std::accumulate(row, row + mask.cols, 0));
    }
    return counts;
}

std::vector<LineRegion> segment_lines(const BinaryMask& mask, int min_gap_rows,
                                      int min_ink_per_row) {
    if (min_gap_rows < 1) throw InvalidParameterError("min_gap_rows must be >= 1");
    if (min_ink_per_row < 1) throw InvalidParameterError("min_ink_per_row must be >= 1");

    const std::vector<int> projection = horizontal_projection(mask);

    // Maximal runs of rows carrying enough ink.
    std::vector<std::pair<int, int>> runs;  // [start, end)
    int run_start = -1;
    for (int r = 0; r < mask.rows; ++r) {
        const bool inked = projection[r] >= min_ink_per_row;
        if (inked && run_start < 0) run_start = r;
        if (!inked && run_start >= 0) {
            runs.emplace_back(run_start, r);
            run_start = -1;
        }
    }
    if (run_start >= 0) runs.emplace_back(run_start, mask.rows);

    // Merge runs separated by fewer than min_gap_rows blank rows.
    std::vector<std::pair<int, int>> merged;
    for (const auto& run : runs) {
        if (!merged.empty() && run.first - merged.back().second < min_gap_rows)
            merged.back().second = run.second;
        else
            merged.push_back(run);
    }

    std::vector<LineRegion> lines;
    lines.reserve(merged.size());
    for (const auto& [start, end] : merged) {
        LineRegion line;
        line.index = static_cast<int>(lines.size());
        line.row_start = start;
        line.row_end = end;
        line.mask = BinaryMask::empty(mask.rows, mask.cols);
        const auto from = static_cast<std::size_t>(start) * mask.cols;
        const auto to = static_cast<std::size_t>(end) * mask.cols;
        std::copy(mask.bits.begin() + from, mask.bits.begin() + to,
                  line.mask.bits.begin() + from);
        lines.push_back(std::move(line));
    }
    return lines;
}

SampleMatrix extract_samples(const HyperCube& cube, const BinaryMask& mask) {
    if (mask.rows != cube.rows || mask.cols != cube.cols)
        throw InvalidParameterError("mask dimensions do not match the cube's image plane");

    SampleMatrix samples;
    samples.d = cube.bands;
    samples.provenance.reserve(mask.population());
    for (int r = 0; r < cube.rows; ++r)
        for (int c = 0; c < cube.cols; ++c) {
            if (!mask.at(r, c)) continue;
            const auto spectrum = cube.pixel_spectrum(r, c);
            samples.values.insert(samples.values.end(), spectrum.begin(), spectrum.end());
            samples.provenance.push_back({r, c});
        }
    samples.n = static_cast<int>(samples.provenance.size());
    if (samples.n == 0) throw EmptySelectionError("mask selects no pixels");
    return samples;
}

SampleMatrix extract_line_samples(const HyperCube& cube, const LineRegion& region) {
    return extract_samples(cube, region.mask);
}

}  // namespace inkspect
