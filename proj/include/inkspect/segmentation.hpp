#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "inkspect/clustering.hpp"
#include "inkspect/cube.hpp"

namespace inkspect {

// 2-D boolean image; true == ink.
struct BinaryMask {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> bits;  // row-major, rows*cols, 0 or 1

    static BinaryMask empty(int rows, int cols) {
        return BinaryMask{rows, cols,
                          std::vector<std::uint8_t>(static_cast<std::size_t>(rows) * cols, 0)};
    }
    bool at(int r, int c) const { return bits[static_cast<std::size_t>(r) * cols + c] != 0; }
    void set(int r, int c, bool v) { bits[static_cast<std::size_t>(r) * cols + c] = v ? 1 : 0; }
    std::size_t population() const;
};

// One text line: its row span and the document ink mask restricted to it.
// The mask keeps full image dimensions and is zero outside [row_start, row_end).
struct LineRegion {
    int index = 0;      // 0-based, top to bottom
    int row_start = 0;  // inclusive
    int row_end = 0;    // exclusive
    BinaryMask mask;
};

// Threshold maximizing between-class variance over a 256-bin histogram of
// min-max-normalized intensities. Returns nullopt for a constant image
// (degenerate histogram); callers treat that as "no ink".
std::optional<double> otsu_threshold(const BandImage& image);

// bit(r,c) == pixel(r,c) < threshold. Ink is dark on bright paper.
BinaryMask binarize(const BandImage& image, double threshold);

// Bitwise complement.
BinaryMask invert(const BinaryMask& mask);

// Ink pixel count per row.
std::vector<int> horizontal_projection(const BinaryMask& mask);

// Maximal runs of rows whose projection is >= min_ink_per_row; runs
// separated by fewer than min_gap_rows blank rows are merged. Ordered top
// to bottom. An empty result is valid.
std::vector<LineRegion> segment_lines(const BinaryMask& mask, int min_gap_rows = 3,
                                      int min_ink_per_row = 5);

// One row per ink pixel of the region, in raster order, with (row, col)
// provenance recorded so labels can be mapped back to coordinates.
SampleMatrix extract_line_samples(const HyperCube& cube, const LineRegion& region);

// Same extraction for an arbitrary mask (the whole-document case).
SampleMatrix extract_samples(const HyperCube& cube, const BinaryMask& mask);

}  // namespace inkspect
