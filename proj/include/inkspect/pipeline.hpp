#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inkspect/clustering.hpp"
#include "inkspect/cube.hpp"
#include "inkspect/envi.hpp"
#include "inkspect/report.hpp"
#include "inkspect/segmentation.hpp"

namespace inkspect {

enum class CropMode { None, Rect, AutoMargin };

struct CropRect {
    int top = 0;
    int left = 0;
    int height = 0;
    int width = 0;
};

struct PipelineConfig {
    std::string input_path;
    std::string output_dir = "inkspect_out";

    CropMode crop_mode = CropMode::None;
    CropRect crop_rect;

    // nullopt: binarize the grayscale projection; otherwise a single band.
    std::optional<int> binarize_band;
    int min_gap_rows = 3;
    int min_ink_per_row = 5;

    std::string algorithm = "kmeans";  // kmeans | fcm | agglomerative
    bool auto_k = true;
    int k = 7;
    int k_min = 2;
    int k_max = 10;
    std::uint64_t seed = 0;

    double tol = 1e-5;
    int max_iter = 300;
    double fuzziness = 2.0;
    Linkage linkage = Linkage::Average;
    int restarts = 10;
    int agglomerative_subsample = 5000;  // 0 = no subsampling
    int sweep_subsample = 2000;          // 0 = no subsampling
    bool include_background = false;
};

enum class AnalysisStatus { Ok, NoInk };

struct ClusteringOutcome {
    std::string algorithm;
    int k = 0;
    std::vector<int> labels;        // one per sample row
    std::vector<double> centroids;  // k*d
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    std::optional<std::map<int, double>> silhouette_table;  // present for auto-k
};

struct AnalysisResult {
    AnalysisStatus status = AnalysisStatus::Ok;
    int bands = 0;
    std::optional<CropRect> crop_applied;
    std::optional<double> threshold;
    BinaryMask ink_mask;
    std::vector<LineRegion> lines;
    std::vector<SpectralSignature> line_signatures;
    SampleMatrix samples;
    std::optional<ClusteringOutcome> clustering;
    LabelMap label_map;
    std::optional<std::vector<double>> wavelengths_nm;
};

// Runs crop -> grayscale -> threshold -> mask -> line segmentation ->
// sample extraction -> clustering -> label map on an in-memory cube.
// Pure given (cube, config); does no file I/O.
AnalysisResult run_pipeline(const HyperCube& cube, const PipelineConfig& config);

// The JSON analysis report (resolved config, header echo, per-line records,
// clustering summary, output file names). Stable key order.
std::string report_json(const AnalysisResult& result, const PipelineConfig& config,
                        const std::optional<EnviHeader>& header);

struct AnalysisArtifacts {
    AnalysisStatus status = AnalysisStatus::Ok;
    std::string report_path;
    std::vector<std::string> written_files;
};

// Load the cube, run the pipeline and write every artifact (report.json,
// label_map.ppm, mask.pbm, lines.json, line_spectra.csv, cluster_spectra.csv)
// under config.output_dir.
AnalysisArtifacts run_analysis(const PipelineConfig& config);

// Writes artifacts for an already-computed result; shared by run_analysis
// and the tests. Returns the list of files written.
AnalysisArtifacts write_artifacts(const AnalysisResult& result, const PipelineConfig& config,
                                  const std::optional<EnviHeader>& header);

std::string line_spans_json(const std::vector<LineRegion>& lines);

}  // namespace inkspect
