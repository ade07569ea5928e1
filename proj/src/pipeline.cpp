#include "inkspect/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <utility>

#include "inkspect/errors.hpp"
#include "inkspect/netpbm.hpp"
#include "inkspect/random.hpp"
#include "inkspect/text.hpp"

#include "json.hpp"

namespace inkspect {
namespace {

using ordered_json = nlohmann::ordered_json;

template <typename Fn>
auto with_stage(const char* stage, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(std::string(stage) + ": " + e.what());
    }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

// Palette covering any k: the default table extended with a golden-angle
// hue wheel. Deterministic.
std::vector<Rgb> palette_for(int max_label) {
    std::vector<Rgb> palette = default_palette();
    double hue = 0.137;
    while (static_cast<int>(palette.size()) < max_label + 1) {
        hue = std::fmod(hue + 0.61803398875, 1.0);
        const double h6 = hue * 6.0;
        const int sector = static_cast<int>(h6) % 6;
        const double f = h6 - std::floor(h6);
        const double v = 0.85, s = 0.75;
        const double p = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
        double r = 0, g = 0, b = 0;
        switch (sector) {
            case 0: r = v; g = t; b = p; break;
            case 1: r = q; g = v; b = p; break;
            case 2: r = p; g = v; b = t; break;
            case 3: r = p; g = q; b = v; break;
            case 4: r = t; g = p; b = v; break;
            default: r = v; g = p; b = q; break;
        }
        palette.push_back({static_cast<std::uint8_t>(std::lround(r * 255)),
                           static_cast<std::uint8_t>(std::lround(g * 255)),
                           static_cast<std::uint8_t>(std::lround(b * 255))});
    }
    return palette;
}

BinaryMask full_mask(int rows, int cols) {
    BinaryMask mask = BinaryMask::empty(rows, cols);
    std::fill(mask.bits.begin(), mask.bits.end(), std::uint8_t{1});
    return mask;
}

// Bounding box of rows/cols whose ink density reaches min_density.
std::optional<CropRect> ink_bounding_box(const BinaryMask& mask, double min_density) {
    const std::vector<int> row_counts = horizontal_projection(mask);
    std::vector<int> col_counts(mask.cols, 0);
    for (int r = 0; r < mask.rows; ++r)
        for (int c = 0; c < mask.cols; ++c)
            if (mask.at(r, c)) ++col_counts[c];

    int top = -1, bottom = -1, left = -1, right = -1;
    for (int r = 0; r < mask.rows; ++r)
        if (row_counts[r] >= min_density * mask.cols) {
            if (top < 0) top = r;
            bottom = r;
        }
    for (int c = 0; c < mask.cols; ++c)
        if (col_counts[c] >= min_density * mask.rows) {
            if (left < 0) left = c;
            right = c;
        }
    if (top < 0 || left < 0) return std::nullopt;
    return CropRect{top, left, bottom - top + 1, right - left + 1};
}

ClusteringOutcome cluster_samples(const SampleMatrix& samples, const PipelineConfig& config) {
    ClusteringOutcome outcome;
    outcome.algorithm = config.algorithm;

    KMeansOptions kopts;
    kopts.seed = config.seed;
    kopts.max_iter = config.max_iter;
    kopts.tol = config.tol;
    kopts.restarts = config.restarts;

    int k = config.k;
    if (config.auto_k) {
        int k_max = std::min(config.k_max, samples.n - 1);
        if (config.k_min > k_max)
            throw InvalidParameterError("too few ink pixels (" + std::to_string(samples.n) +
                                        ") for the k sweep");
        InkCountOptions sweep;
        sweep.max_sweep_samples = config.sweep_subsample;
        sweep.kmeans = kopts;
        const InkCountResult estimate =
            estimate_ink_count(samples, config.k_min, k_max, config.seed, sweep);
        k = estimate.k_best;
        outcome.silhouette_table = estimate.scores;
    }
    if (k > samples.n)
        throw InvalidParameterError("k=" + std::to_string(k) + " exceeds the " +
                                    std::to_string(samples.n) + " available ink pixels");
    outcome.k = k;

    if (config.algorithm == "kmeans") {
        HardClusterResult result = kmeans(samples, k, kopts);
        outcome.labels = std::move(result.labels);
        outcome.centroids = std::move(result.centroids);
        outcome.objective = result.objective;
        outcome.iterations = result.iterations;
        outcome.converged = result.converged;
    } else if (config.algorithm == "fcm") {
        FcmOptions fopts;
        fopts.fuzziness = config.fuzziness;
        fopts.seed = config.seed;
        fopts.max_iter = config.max_iter;
        fopts.tol = config.tol;
        FuzzyClusterResult result = fcm(samples, k, fopts);
        outcome.labels.resize(samples.n);
        for (int i = 0; i < samples.n; ++i) {
            int best = 0;
            for (int j = 1; j < k; ++j)
                if (result.membership(i, j) > result.membership(i, best)) best = j;
            outcome.labels[i] = best;
        }
        outcome.centroids = std::move(result.centroids);
        outcome.objective = result.objective;
        outcome.iterations = result.iterations;
        outcome.converged = result.converged;
    } else if (config.algorithm == "agglomerative") {
        // Hierarchies need the O(n^2) distance matrix, so large documents
        // are clustered on a seeded subsample and extended by nearest
        // cluster mean.
        SampleMatrix reduced;
        const SampleMatrix* source = &samples;
        if (config.agglomerative_subsample > 0 && samples.n > config.agglomerative_subsample) {
            std::vector<int> indices(samples.n);
            for (int i = 0; i < samples.n; ++i) indices[i] = i;
            Rng rng(mix64(config.seed) ^ 0x6167676c6fULL);
            for (int i = 0; i < config.agglomerative_subsample; ++i) {
                const int j =
                    i + static_cast<int>(rng.index(static_cast<std::uint64_t>(samples.n - i)));
                std::swap(indices[i], indices[j]);
            }
            indices.resize(config.agglomerative_subsample);
            std::sort(indices.begin(), indices.end());
            reduced.n = static_cast<int>(indices.size());
            reduced.d = samples.d;
            for (int idx : indices) {
                const auto row = samples.row(idx);
                reduced.values.insert(reduced.values.end(), row.begin(), row.end());
            }
            source = &reduced;
        }
        if (k > source->n)
            throw InvalidParameterError("k exceeds the agglomerative subsample size");

        const Dendrogram dendrogram = agglomerative(*source, config.linkage);
        const std::vector<int> sub_labels = cut_dendrogram(dendrogram, k);

        // Cluster means of the subsample become centroids for everyone.
        std::vector<double> centroids(static_cast<std::size_t>(k) * samples.d, 0.0);
        std::vector<std::size_t> counts(k, 0);
        for (int i = 0; i < source->n; ++i) {
            const auto row = source->row(i);
            double* c = centroids.data() + static_cast<std::size_t>(sub_labels[i]) * samples.d;
            for (int a = 0; a < samples.d; ++a) c[a] += row[a];
            ++counts[sub_labels[i]];
        }
        for (int j = 0; j < k; ++j)
            if (counts[j] > 0)
                for (int a = 0; a < samples.d; ++a)
                    centroids[static_cast<std::size_t>(j) * samples.d + a] /=
                        static_cast<double>(counts[j]);

        outcome.labels.resize(samples.n);
        double objective = 0.0;
        for (int i = 0; i < samples.n; ++i) {
            double best = std::numeric_limits<double>::max();
            int best_j = 0;
            for (int j = 0; j < k; ++j) {
                const double d2 = squared_distance(
                    samples.row(i),
                    {centroids.data() + static_cast<std::size_t>(j) * samples.d,
                     static_cast<std::size_t>(samples.d)});
                if (d2 < best) {
                    best = d2;
                    best_j = j;
                }
            }
            outcome.labels[i] = best_j;
            objective += best;
        }
        outcome.centroids = std::move(centroids);
        outcome.objective = objective;
        outcome.iterations = static_cast<int>(dendrogram.merges.size());
        outcome.converged = true;
    } else {
        throw InvalidParameterError("unknown algorithm '" + config.algorithm +
                                    "' (expected kmeans, fcm or agglomerative)");
    }
    return outcome;
}

}  // namespace

AnalysisResult run_pipeline(const HyperCube& cube, const PipelineConfig& config) {
    AnalysisResult result;
    result.wavelengths_nm = cube.wavelengths_nm;
    result.bands = cube.bands;

    // Crop.
    HyperCube working;
    const HyperCube* active = &cube;
    if (config.crop_mode == CropMode::Rect) {
        with_stage("crop", [&] {
            const CropRect& r = config.crop_rect;
            working = crop(cube, r.top, r.left, r.height, r.width);
            result.crop_applied = r;
            active = &working;
            return 0;
        });
    } else if (config.crop_mode == CropMode::AutoMargin) {
        with_stage("crop", [&] {
            const BandImage overview = to_grayscale(cube);
            if (const auto t = otsu_threshold(overview)) {
                const BinaryMask mask = binarize(overview, *t);
                if (const auto box = ink_bounding_box(mask, 0.001)) {
                    working = crop(cube, box->top, box->left, box->height, box->width);
                    result.crop_applied = *box;
                    active = &working;
                }
            }
            return 0;
        });
    }

    // Grayscale projection (or a single band) and threshold.
    const BandImage intensity = with_stage("grayscale", [&] {
        return config.binarize_band ? get_band(*active, *config.binarize_band)
                                    : to_grayscale(*active);
    });
    result.threshold = with_stage("threshold", [&] { return otsu_threshold(intensity); });

    result.label_map.rows = active->rows;
    result.label_map.cols = active->cols;
    result.label_map.labels.assign(static_cast<std::size_t>(active->rows) * active->cols, 0);

    if (!result.threshold) {  // constant image: defined as all background
        result.ink_mask = BinaryMask::empty(active->rows, active->cols);
        result.status = AnalysisStatus::NoInk;
        return result;
    }

    result.ink_mask = with_stage("mask", [&] { return binarize(intensity, *result.threshold); });
    if (result.ink_mask.population() == 0) {
        result.status = AnalysisStatus::NoInk;
        return result;
    }

    // Text lines and their mean spectra.
    result.lines = with_stage("segment", [&] {
        return segment_lines(result.ink_mask, config.min_gap_rows, config.min_ink_per_row);
    });
    with_stage("signatures", [&] {
        for (const LineRegion& line : result.lines)
            result.line_signatures.push_back(mean_spectrum(*active, line.mask));
        return 0;
    });

    // Spectral samples for clustering.
    const BinaryMask sample_mask = config.include_background
                                       ? full_mask(active->rows, active->cols)
                                       : result.ink_mask;
    result.samples = with_stage("samples", [&] { return extract_samples(*active, sample_mask); });

    result.clustering =
        with_stage("cluster", [&] { return cluster_samples(result.samples, config); });

    result.label_map = with_stage("label-map", [&] {
        return build_label_map(sample_mask, result.samples.provenance,
                               result.clustering->labels);
    });
    return result;
}

std::string line_spans_json(const std::vector<LineRegion>& lines) {
    auto array = ordered_json::array();
    for (const LineRegion& line : lines) {
        ordered_json j;
        j["index"] = line.index;
        j["row_start"] = line.row_start;
        j["row_end"] = line.row_end;
        j["ink_pixels"] = line.mask.population();
        array.push_back(std::move(j));
    }
    return array.dump(2);
}

namespace {

ordered_json config_json(const PipelineConfig& config) {
    ordered_json j;
    j["input"] = config.input_path;
    j["output_dir"] = config.output_dir;
    switch (config.crop_mode) {
        case CropMode::None: j["crop"] = nullptr; break;
        case CropMode::AutoMargin: j["crop"] = "auto-margin"; break;
        case CropMode::Rect:
            j["crop"] = {{"top", config.crop_rect.top},
                         {"left", config.crop_rect.left},
                         {"height", config.crop_rect.height},
                         {"width", config.crop_rect.width}};
            break;
    }
    if (config.binarize_band)
        j["binarize_source"] = ordered_json{{"band", *config.binarize_band}};
    else
        j["binarize_source"] = "grayscale";
    j["min_gap_rows"] = config.min_gap_rows;
    j["min_ink_per_row"] = config.min_ink_per_row;
    j["algorithm"] = config.algorithm;
    if (config.auto_k)
        j["k"] = ordered_json{{"mode", "auto"}, {"k_min", config.k_min}, {"k_max", config.k_max}};
    else
        j["k"] = ordered_json{{"mode", "fixed"}, {"k", config.k}};
    j["seed"] = config.seed;
    j["tol"] = config.tol;
    j["max_iter"] = config.max_iter;
    j["fuzziness"] = config.fuzziness;
    j["linkage"] = linkage_name(config.linkage);
    j["restarts"] = config.restarts;
    j["agglomerative_subsample"] = config.agglomerative_subsample;
    j["sweep_subsample"] = config.sweep_subsample;
    j["include_background"] = config.include_background;
    return j;
}

ordered_json header_json(const EnviHeader& header) {
    ordered_json j;
    j["samples"] = header.samples;
    j["lines"] = header.lines;
    j["bands"] = header.bands;
    j["interleave"] = to_string(header.interleave);
    j["data_type"] = to_string(header.data_type);
    j["byte_order"] = header.byte_order == ByteOrder::Little ? "little" : "big";
    j["header_offset"] = header.header_offset;
    if (header.wavelengths_nm && !header.wavelengths_nm->empty()) {
        j["wavelength_start_nm"] = header.wavelengths_nm->front();
        j["wavelength_end_nm"] = header.wavelengths_nm->back();
    } else {
        j["wavelength_start_nm"] = nullptr;
        j["wavelength_end_nm"] = nullptr;
    }
    return j;
}

}  // namespace

std::string report_json(const AnalysisResult& result, const PipelineConfig& config,
                        const std::optional<EnviHeader>& header) {
    ordered_json j;
    j["tool"] = ordered_json{{"name", "inkspect"}, {"version", "0.1.0"}};
    j["status"] = result.status == AnalysisStatus::Ok ? "ok" : "no ink detected";
    j["config"] = config_json(config);
    j["header"] = header ? header_json(*header) : ordered_json(nullptr);

    if (result.crop_applied) {
        j["crop"] = {{"top", result.crop_applied->top},
                     {"left", result.crop_applied->left},
                     {"height", result.crop_applied->height},
                     {"width", result.crop_applied->width}};
    } else {
        j["crop"] = nullptr;
    }
    j["mask"] = ordered_json{
        {"ink_pixels", result.ink_mask.population()},
        {"threshold", result.threshold ? ordered_json(*result.threshold) : ordered_json(nullptr)}};

    auto lines = ordered_json::array();
    for (std::size_t i = 0; i < result.lines.size(); ++i) {
        const LineRegion& line = result.lines[i];
        ordered_json entry;
        entry["index"] = line.index;
        entry["row_start"] = line.row_start;
        entry["row_end"] = line.row_end;
        entry["ink_pixels"] = line.mask.population();
        entry["mean_signature"] = result.line_signatures[i].values;
        lines.push_back(std::move(entry));
    }
    j["lines"] = std::move(lines);

    if (result.clustering) {
        const ClusteringOutcome& c = *result.clustering;
        ordered_json params;
        params["seed"] = config.seed;
        params["tol"] = config.tol;
        params["max_iter"] = config.max_iter;
        if (c.algorithm == "fcm") params["fuzziness"] = config.fuzziness;
        if (c.algorithm == "agglomerative") {
            params["linkage"] = linkage_name(config.linkage);
            params["subsample"] = config.agglomerative_subsample;
        }
        if (c.algorithm == "kmeans") params["restarts"] = config.restarts;

        ordered_json cj;
        cj["algorithm"] = c.algorithm;
        cj["params"] = std::move(params);
        cj["k"] = c.k;
        cj["objective"] = c.objective;
        cj["iterations"] = c.iterations;
        cj["converged"] = c.converged;
        if (c.silhouette_table) {
            auto table = ordered_json::array();
            for (const auto& [k, score] : *c.silhouette_table)
                table.push_back(ordered_json{{"k", k}, {"score", score}});
            cj["silhouette_table"] = std::move(table);
        } else {
            cj["silhouette_table"] = nullptr;
        }
        std::vector<std::size_t> sizes(c.k, 0);
        for (int label : c.labels) ++sizes[label];
        cj["cluster_sizes"] = sizes;
        j["clustering"] = std::move(cj);
    } else {
        j["clustering"] = nullptr;
    }

    j["label_map_file"] = "label_map.ppm";
    j["outputs"] = ordered_json{{"mask_file", "mask.pbm"},
                                {"lines_file", "lines.json"},
                                {"line_spectra_file", "line_spectra.csv"},
                                {"cluster_spectra_file", "cluster_spectra.csv"}};
    return j.dump(2);
}

AnalysisArtifacts write_artifacts(const AnalysisResult& result, const PipelineConfig& config,
                                  const std::optional<EnviHeader>& header) {
    namespace fs = std::filesystem;
    fs::create_directories(config.output_dir);
    const auto path = [&](const char* name) { return (fs::path(config.output_dir) / name).string(); };

    AnalysisArtifacts artifacts;
    artifacts.status = result.status;

    const auto emit = [&](const std::string& p) { artifacts.written_files.push_back(p); };

    write_file(path("mask.pbm"), encode_pbm(result.ink_mask));
    emit(path("mask.pbm"));

    write_text_file(path("lines.json"), line_spans_json(result.lines));
    emit(path("lines.json"));

    const int bands = result.bands;
    if (bands > 0) {
        std::vector<std::string> line_names;
        std::vector<std::optional<SpectralSignature>> line_sigs;
        for (std::size_t i = 0; i < result.line_signatures.size(); ++i) {
            line_names.push_back("line_" + std::to_string(i + 1));
            line_sigs.push_back(result.line_signatures[i]);
        }
        write_text_file(path("line_spectra.csv"),
                        spectra_csv(line_names, line_sigs, bands, result.wavelengths_nm));
        emit(path("line_spectra.csv"));

        std::vector<std::string> cluster_names;
        std::vector<std::optional<SpectralSignature>> cluster_sigs;
        if (result.clustering) {
            cluster_sigs = cluster_mean_spectra(result.samples, result.clustering->labels,
                                                result.clustering->k, result.wavelengths_nm);
            for (int jdx = 0; jdx < result.clustering->k; ++jdx)
                cluster_names.push_back("cluster_" + std::to_string(jdx + 1));
        }
        write_text_file(path("cluster_spectra.csv"),
                        spectra_csv(cluster_names, cluster_sigs, bands, result.wavelengths_nm));
        emit(path("cluster_spectra.csv"));
    }

    write_file(path("label_map.ppm"),
               render_label_map(result.label_map, palette_for(result.label_map.max_label())));
    emit(path("label_map.ppm"));

    write_text_file(path("report.json"), report_json(result, config, header));
    artifacts.report_path = path("report.json");
    emit(artifacts.report_path);
    return artifacts;
}

AnalysisArtifacts run_analysis(const PipelineConfig& config) {
    EnviHeader header;
    HyperCube cube;
    try {
        header = load_header(config.input_path);
        cube = load_cube(config.input_path);
    } catch (const IoError& e) {
        throw IoError(std::string("load: ") + e.what());
    } catch (const Error& e) {
        // Header/payload problems are input errors, not analysis failures.
        throw ParseError(std::string("load: ") + e.what());
    }
    const AnalysisResult result = run_pipeline(cube, config);
    return write_artifacts(result, config, header);
}

}  // namespace inkspect
