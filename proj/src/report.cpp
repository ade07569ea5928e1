#include "inkspect/report.hpp"

#include <algorithm>
#include <string>

#include "inkspect/errors.hpp"
#include "inkspect/netpbm.hpp"
#include "inkspect/text.hpp"

namespace inkspect {

std::size_t LabelMap::labeled_count() const {
    return static_cast<std::size_t>(
        std::count_if(labels.begin(), labels.end(), [](int v) { return v > 0; }));
}

int LabelMap::max_label() const {
    return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
}

LabelMap build_label_map(const BinaryMask& mask, const std::vector<PixelCoord>& provenance,
                         const std::vector<int>& labels) {
    if (provenance.size() != labels.size())
        throw InvalidParameterError("provenance and labels must have equal length");

    LabelMap map;
    map.rows = mask.rows;
    map.cols = mask.cols;
    map.labels.assign(static_cast<std::size_t>(mask.rows) * mask.cols, 0);
    for (std::size_t i = 0; i < provenance.size(); ++i) {
        const auto [r, c] = provenance[i];
        if (r < 0 || r >= mask.rows || c < 0 || c >= mask.cols || !mask.at(r, c))
            throw ConsistencyError("labeled pixel (" + std::to_string(r) + ", " +
                                   std::to_string(c) + ") is not inside the ink mask");
        if (labels[i] < 0) throw InvalidParameterError("labels must be non-negative");
        map.labels[static_cast<std::size_t>(r) * map.cols + c] = labels[i] + 1;
    }
    return map;
}

std::vector<std::optional<SpectralSignature>> cluster_mean_spectra(
    const SampleMatrix& samples, const std::vector<int>& labels, int k,
    const std::optional<std::vector<double>>& wavelengths_nm) {
    if (static_cast<int>(labels.size()) != samples.n)
        throw InvalidParameterError("labels size must equal the sample count");
    if (k < 1) throw InvalidParameterError("k must be >= 1");

    std::vector<std::vector<double>> sums(k, std::vector<double>(samples.d, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (int i = 0; i < samples.n; ++i) {
        const int label = labels[i];
        if (label < 0 || label >= k)
            throw InvalidParameterError("label " + std::to_string(label) + " outside [0, k)");
        const auto row = samples.row(i);
        for (int a = 0; a < samples.d; ++a) sums[label][a] += row[a];
        ++counts[label];
    }

    std::vector<std::optional<SpectralSignature>> out(k);
    for (int j = 0; j < k; ++j) {
        if (counts[j] == 0) continue;  // empty cluster stays absent
        SpectralSignature sig;
        sig.values.resize(samples.d);
        for (int a = 0; a < samples.d; ++a)
            sig.values[a] = sums[j][a] / static_cast<double>(counts[j]);
        sig.wavelengths_nm = wavelengths_nm;
        out[j] = std::move(sig);
    }
    return out;
}

const std::vector<Rgb>& default_palette() {
    // White background, then Okabe-Ito extended with four muted tones.
    static const std::vector<Rgb> palette = {
        {255, 255, 255},  // 0: background
        {230, 159, 0},    // orange
        {86, 180, 233},   // sky blue
        {0, 158, 115},    // bluish green
        {240, 228, 66},   // yellow
        {0, 114, 178},    // blue
        {213, 94, 0},     // vermillion
        {204, 121, 167},  // reddish purple
        {0, 0, 0},        // black
        {136, 34, 85},    // wine
        {68, 170, 153},   // teal
        {153, 153, 51},   // olive
        {51, 34, 136},    // indigo
    };
    return palette;
}

std::vector<std::byte> render_label_map(const LabelMap& map, const std::vector<Rgb>& palette) {
    const int needed = map.max_label() + 1;
    if (static_cast<int>(palette.size()) < needed)
        throw InvalidParameterError("palette has " + std::to_string(palette.size()) +
                                    " colors but " + std::to_string(needed) + " are needed");

    std::vector<std::uint8_t> rgb;
    rgb.reserve(map.labels.size() * 3);
    for (int label : map.labels) {
        const Rgb& color = palette[label];
        rgb.push_back(color[0]);
        rgb.push_back(color[1]);
        rgb.push_back(color[2]);
    }
    return encode_ppm(map.rows, map.cols, rgb);
}

std::string spectra_csv(const std::vector<std::string>& column_names,
                        const std::vector<std::optional<SpectralSignature>>& signatures,
                        int bands, const std::optional<std::vector<double>>& wavelengths_nm) {
    if (column_names.size() != signatures.size())
        throw InvalidParameterError("one column name per signature required");
    for (const auto& sig : signatures)
        if (sig && static_cast<int>(sig->values.size()) != bands)
            throw InvalidParameterError("signature length does not match band count");

    std::string csv = wavelengths_nm ? "wavelength_nm" : "band";
    for (const auto& name : column_names) {
        csv += ',';
        csv += name;
    }
    csv += '\n';
    for (int b = 0; b < bands; ++b) {
        csv += wavelengths_nm ? format_double((*wavelengths_nm)[b]) : std::to_string(b);
        for (const auto& sig : signatures) {
            csv += ',';
            if (sig) csv += format_double(sig->values[b]);
        }
        csv += '\n';
    }
    return csv;
}

}  // namespace inkspect
