#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "inkspect/clustering.hpp"
#include "inkspect/cube.hpp"
#include "inkspect/envi.hpp"
#include "inkspect/errors.hpp"
#include "inkspect/netpbm.hpp"
#include "inkspect/pipeline.hpp"
#include "inkspect/report.hpp"
#include "inkspect/segmentation.hpp"
#include "inkspect/synth.hpp"

namespace py = pybind11;
using namespace inkspect;

namespace {

HyperCube cube_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> data,
                          std::optional<std::vector<double>> wavelengths) {
    if (data.ndim() != 3) throw InvalidParameterError("expected a (rows, cols, bands) array");
    HyperCube cube;
    cube.rows = static_cast<int>(data.shape(0));
    cube.cols = static_cast<int>(data.shape(1));
    cube.bands = static_cast<int>(data.shape(2));
    cube.wavelengths_nm = std::move(wavelengths);
    if (cube.wavelengths_nm && static_cast<int>(cube.wavelengths_nm->size()) != cube.bands)
        throw InvalidParameterError("wavelength count must equal the band count");
    cube.data.assign(data.data(), data.data() + data.size());
    return cube;
}

py::array_t<double> cube_to_array(const HyperCube& cube) {
    py::array_t<double> out({cube.rows, cube.cols, cube.bands});
    std::memcpy(out.mutable_data(), cube.data.data(), cube.data.size() * sizeof(double));
    return out;
}

py::array_t<double> image_to_array(const BandImage& image) {
    py::array_t<double> out({image.rows, image.cols});
    std::memcpy(out.mutable_data(), image.pixels.data(), image.pixels.size() * sizeof(double));
    return out;
}

BandImage image_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> data) {
    if (data.ndim() != 2) throw InvalidParameterError("expected a (rows, cols) array");
    BandImage image;
    image.rows = static_cast<int>(data.shape(0));
    image.cols = static_cast<int>(data.shape(1));
    image.pixels.assign(data.data(), data.data() + data.size());
    return image;
}

BinaryMask mask_from_array(py::array_t<bool, py::array::c_style | py::array::forcecast> data) {
    if (data.ndim() != 2) throw InvalidParameterError("expected a (rows, cols) boolean array");
    BinaryMask mask;
    mask.rows = static_cast<int>(data.shape(0));
    mask.cols = static_cast<int>(data.shape(1));
    mask.bits.resize(static_cast<std::size_t>(mask.rows) * mask.cols);
    const bool* src = data.data();
    for (std::size_t i = 0; i < mask.bits.size(); ++i) mask.bits[i] = src[i] ? 1 : 0;
    return mask;
}

py::array_t<bool> mask_to_array(const BinaryMask& mask) {
    py::array_t<bool> out({mask.rows, mask.cols});
    bool* dst = out.mutable_data();
    for (std::size_t i = 0; i < mask.bits.size(); ++i) dst[i] = mask.bits[i] != 0;
    return out;
}

SampleMatrix samples_from_array(
    py::array_t<double, py::array::c_style | py::array::forcecast> values) {
    if (values.ndim() != 2) throw InvalidParameterError("expected an (n, d) array");
    SampleMatrix samples;
    samples.n = static_cast<int>(values.shape(0));
    samples.d = static_cast<int>(values.shape(1));
    samples.values.assign(values.data(), values.data() + values.size());
    return samples;
}

py::array_t<double> matrix_to_array(const std::vector<double>& values, int rows, int cols) {
    py::array_t<double> out({rows, cols});
    std::memcpy(out.mutable_data(), values.data(), values.size() * sizeof(double));
    return out;
}

py::bytes bytes_of(const std::vector<std::byte>& data) {
    return py::bytes(reinterpret_cast<const char*>(data.data()), data.size());
}

std::vector<std::byte> to_byte_vector(const py::bytes& data) {
    const std::string_view view = data;
    const auto* p = reinterpret_cast<const std::byte*>(view.data());
    return std::vector<std::byte>(p, p + view.size());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hyperspectral document ink analysis core";

    const auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "HeaderParseError", base);
    py::register_exception<MissingKeyError>(m, "MissingKeyError", base);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", base);
    py::register_exception<FormatError>(m, "FormatError", base);
    py::register_exception<SizeMismatchError>(m, "SizeMismatchError", base);
    py::register_exception<BoundsError>(m, "BoundsError", base);
    py::register_exception<InvalidParameterError>(m, "InvalidParameterError", base);
    py::register_exception<EmptySelectionError>(m, "EmptySelectionError", base);
    py::register_exception<IoError>(m, "IoError", base);

    py::enum_<Interleave>(m, "Interleave")
        .value("BSQ", Interleave::BSQ)
        .value("BIL", Interleave::BIL)
        .value("BIP", Interleave::BIP);
    py::enum_<DataType>(m, "DataType")
        .value("UINT8", DataType::UInt8)
        .value("INT16", DataType::Int16)
        .value("INT32", DataType::Int32)
        .value("FLOAT32", DataType::Float32)
        .value("FLOAT64", DataType::Float64)
        .value("UINT16", DataType::UInt16)
        .value("UINT32", DataType::UInt32);
    py::enum_<ByteOrder>(m, "ByteOrder")
        .value("LITTLE", ByteOrder::Little)
        .value("BIG", ByteOrder::Big);
    py::enum_<Linkage>(m, "Linkage")
        .value("SINGLE", Linkage::Single)
        .value("COMPLETE", Linkage::Complete)
        .value("AVERAGE", Linkage::Average);
    py::enum_<CropMode>(m, "CropMode")
        .value("NONE", CropMode::None)
        .value("RECT", CropMode::Rect)
        .value("AUTO_MARGIN", CropMode::AutoMargin);
    py::enum_<AnalysisStatus>(m, "AnalysisStatus")
        .value("OK", AnalysisStatus::Ok)
        .value("NO_INK", AnalysisStatus::NoInk);

    py::class_<EnviHeader>(m, "EnviHeader")
        .def(py::init<>())
        .def_readwrite("samples", &EnviHeader::samples)
        .def_readwrite("lines", &EnviHeader::lines)
        .def_readwrite("bands", &EnviHeader::bands)
        .def_readwrite("interleave", &EnviHeader::interleave)
        .def_readwrite("data_type", &EnviHeader::data_type)
        .def_readwrite("byte_order", &EnviHeader::byte_order)
        .def_readwrite("header_offset", &EnviHeader::header_offset)
        .def_readwrite("wavelengths_nm", &EnviHeader::wavelengths_nm)
        .def_readwrite("wavelength_units", &EnviHeader::wavelength_units)
        .def_readwrite("extra", &EnviHeader::extra)
        .def("payload_bytes", &EnviHeader::payload_bytes)
        .def("__repr__", [](const EnviHeader& h) {
            return "<EnviHeader " + std::to_string(h.lines) + "x" + std::to_string(h.samples) +
                   "x" + std::to_string(h.bands) + " " + to_string(h.interleave) + " " +
                   to_string(h.data_type) + ">";
        });

    py::class_<HyperCube>(m, "HyperCube")
        .def(py::init(&cube_from_array), py::arg("data"), py::arg("wavelengths_nm") = py::none())
        .def_readonly("rows", &HyperCube::rows)
        .def_readonly("cols", &HyperCube::cols)
        .def_readonly("bands", &HyperCube::bands)
        .def_readonly("wavelengths_nm", &HyperCube::wavelengths_nm)
        .def("to_numpy", &cube_to_array)
        .def("at", &HyperCube::at, py::arg("row"), py::arg("col"), py::arg("band"))
        .def("__repr__", [](const HyperCube& c) {
            return "<HyperCube " + std::to_string(c.rows) + "x" + std::to_string(c.cols) + "x" +
                   std::to_string(c.bands) + ">";
        });

    py::class_<BandImage>(m, "BandImage")
        .def(py::init(&image_from_array), py::arg("pixels"))
        .def_readonly("rows", &BandImage::rows)
        .def_readonly("cols", &BandImage::cols)
        .def_readonly("band_index", &BandImage::band_index)
        .def_readonly("wavelength_nm", &BandImage::wavelength_nm)
        .def("to_numpy", &image_to_array);

    py::class_<SpectralSignature>(m, "SpectralSignature")
        .def_readonly("values", &SpectralSignature::values)
        .def_readonly("wavelengths_nm", &SpectralSignature::wavelengths_nm);

    py::class_<BinaryMask>(m, "BinaryMask")
        .def(py::init(&mask_from_array), py::arg("bits"))
        .def_readonly("rows", &BinaryMask::rows)
        .def_readonly("cols", &BinaryMask::cols)
        .def("population", &BinaryMask::population)
        .def("to_numpy", &mask_to_array);

    py::class_<LineRegion>(m, "LineRegion")
        .def_readonly("index", &LineRegion::index)
        .def_readonly("row_start", &LineRegion::row_start)
        .def_readonly("row_end", &LineRegion::row_end)
        .def_readonly("mask", &LineRegion::mask);

    py::class_<PixelCoord>(m, "PixelCoord")
        .def_readonly("row", &PixelCoord::row)
        .def_readonly("col", &PixelCoord::col)
        .def("__repr__", [](const PixelCoord& p) {
            return "(" + std::to_string(p.row) + ", " + std::to_string(p.col) + ")";
        });

    py::class_<SampleMatrix>(m, "SampleMatrix")
        .def(py::init(&samples_from_array), py::arg("values"))
        .def_readonly("n", &SampleMatrix::n)
        .def_readonly("d", &SampleMatrix::d)
        .def_readonly("provenance", &SampleMatrix::provenance)
        .def("to_numpy",
             [](const SampleMatrix& s) { return matrix_to_array(s.values, s.n, s.d); });

    py::class_<KMeansOptions>(m, "KMeansOptions")
        .def(py::init<>())
        .def_readwrite("seed", &KMeansOptions::seed)
        .def_readwrite("max_iter", &KMeansOptions::max_iter)
        .def_readwrite("tol", &KMeansOptions::tol)
        .def_readwrite("restarts", &KMeansOptions::restarts)
        .def_readwrite("initial_centroids", &KMeansOptions::initial_centroids);

    py::class_<HardClusterResult>(m, "HardClusterResult")
        .def_readonly("k", &HardClusterResult::k)
        .def_readonly("labels", &HardClusterResult::labels)
        .def_readonly("objective", &HardClusterResult::objective)
        .def_readonly("iterations", &HardClusterResult::iterations)
        .def_readonly("converged", &HardClusterResult::converged)
        .def_readonly("objective_trace", &HardClusterResult::objective_trace)
        .def("centroids_numpy", [](const HardClusterResult& r) {
            return matrix_to_array(r.centroids, r.k, r.d());
        });

    py::class_<FcmOptions>(m, "FcmOptions")
        .def(py::init<>())
        .def_readwrite("fuzziness", &FcmOptions::fuzziness)
        .def_readwrite("seed", &FcmOptions::seed)
        .def_readwrite("max_iter", &FcmOptions::max_iter)
        .def_readwrite("tol", &FcmOptions::tol);

    py::class_<FuzzyClusterResult>(m, "FuzzyClusterResult")
        .def_readonly("k", &FuzzyClusterResult::k)
        .def_readonly("fuzziness", &FuzzyClusterResult::fuzziness)
        .def_readonly("objective", &FuzzyClusterResult::objective)
        .def_readonly("iterations", &FuzzyClusterResult::iterations)
        .def_readonly("converged", &FuzzyClusterResult::converged)
        .def_readonly("objective_trace", &FuzzyClusterResult::objective_trace)
        .def("memberships_numpy",
             [](const FuzzyClusterResult& r) {
                 const int n = r.k > 0 ? static_cast<int>(r.memberships.size()) / r.k : 0;
                 return matrix_to_array(r.memberships, n, r.k);
             })
        .def("centroids_numpy", [](const FuzzyClusterResult& r) {
            const int d = r.k > 0 ? static_cast<int>(r.centroids.size()) / r.k : 0;
            return matrix_to_array(r.centroids, r.k, d);
        });

    py::class_<DendrogramMerge>(m, "DendrogramMerge")
        .def_readonly("id_a", &DendrogramMerge::id_a)
        .def_readonly("id_b", &DendrogramMerge::id_b)
        .def_readonly("distance", &DendrogramMerge::distance)
        .def_readonly("new_size", &DendrogramMerge::new_size)
        .def("__repr__", [](const DendrogramMerge& merge) {
            return "(" + std::to_string(merge.id_a) + ", " + std::to_string(merge.id_b) + ", " +
                   std::to_string(merge.distance) + ", " + std::to_string(merge.new_size) + ")";
        });

    py::class_<Dendrogram>(m, "Dendrogram")
        .def_readonly("n", &Dendrogram::n)
        .def_readonly("linkage", &Dendrogram::linkage)
        .def_readonly("merges", &Dendrogram::merges);

    py::class_<InkCountResult>(m, "InkCountResult")
        .def_readonly("k_best", &InkCountResult::k_best)
        .def_readonly("scores", &InkCountResult::scores);

    py::class_<LabelMap>(m, "LabelMap")
        .def_readonly("rows", &LabelMap::rows)
        .def_readonly("cols", &LabelMap::cols)
        .def("labeled_count", &LabelMap::labeled_count)
        .def("max_label", &LabelMap::max_label)
        .def("to_numpy", [](const LabelMap& map) {
            py::array_t<int> out({map.rows, map.cols});
            std::memcpy(out.mutable_data(), map.labels.data(), map.labels.size() * sizeof(int));
            return out;
        });

    py::class_<CropRect>(m, "CropRect")
        .def(py::init<>())
        .def(py::init([](int top, int left, int height, int width) {
                 return CropRect{top, left, height, width};
             }),
             py::arg("top"), py::arg("left"), py::arg("height"), py::arg("width"))
        .def_readwrite("top", &CropRect::top)
        .def_readwrite("left", &CropRect::left)
        .def_readwrite("height", &CropRect::height)
        .def_readwrite("width", &CropRect::width);

    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("input_path", &PipelineConfig::input_path)
        .def_readwrite("output_dir", &PipelineConfig::output_dir)
        .def_readwrite("crop_mode", &PipelineConfig::crop_mode)
        .def_readwrite("crop_rect", &PipelineConfig::crop_rect)
        .def_readwrite("binarize_band", &PipelineConfig::binarize_band)
        .def_readwrite("min_gap_rows", &PipelineConfig::min_gap_rows)
        .def_readwrite("min_ink_per_row", &PipelineConfig::min_ink_per_row)
        .def_readwrite("algorithm", &PipelineConfig::algorithm)
        .def_readwrite("auto_k", &PipelineConfig::auto_k)
        .def_readwrite("k", &PipelineConfig::k)
        .def_readwrite("k_min", &PipelineConfig::k_min)
        .def_readwrite("k_max", &PipelineConfig::k_max)
        .def_readwrite("seed", &PipelineConfig::seed)
        .def_readwrite("tol", &PipelineConfig::tol)
        .def_readwrite("max_iter", &PipelineConfig::max_iter)
        .def_readwrite("fuzziness", &PipelineConfig::fuzziness)
        .def_readwrite("linkage", &PipelineConfig::linkage)
        .def_readwrite("restarts", &PipelineConfig::restarts)
        .def_readwrite("agglomerative_subsample", &PipelineConfig::agglomerative_subsample)
        .def_readwrite("sweep_subsample", &PipelineConfig::sweep_subsample)
        .def_readwrite("include_background", &PipelineConfig::include_background);

    py::class_<ClusteringOutcome>(m, "ClusteringOutcome")
        .def_readonly("algorithm", &ClusteringOutcome::algorithm)
        .def_readonly("k", &ClusteringOutcome::k)
        .def_readonly("labels", &ClusteringOutcome::labels)
        .def_readonly("objective", &ClusteringOutcome::objective)
        .def_readonly("iterations", &ClusteringOutcome::iterations)
        .def_readonly("converged", &ClusteringOutcome::converged)
        .def_readonly("silhouette_table", &ClusteringOutcome::silhouette_table);

    py::class_<AnalysisResult>(m, "AnalysisResult")
        .def_readonly("status", &AnalysisResult::status)
        .def_readonly("bands", &AnalysisResult::bands)
        .def_readonly("threshold", &AnalysisResult::threshold)
        .def_readonly("ink_mask", &AnalysisResult::ink_mask)
        .def_readonly("lines", &AnalysisResult::lines)
        .def_readonly("line_signatures", &AnalysisResult::line_signatures)
        .def_readonly("samples", &AnalysisResult::samples)
        .def_readonly("clustering", &AnalysisResult::clustering)
        .def_readonly("label_map", &AnalysisResult::label_map);

    py::class_<AnalysisArtifacts>(m, "AnalysisArtifacts")
        .def_readonly("status", &AnalysisArtifacts::status)
        .def_readonly("report_path", &AnalysisArtifacts::report_path)
        .def_readonly("written_files", &AnalysisArtifacts::written_files);

    py::class_<SynthSpec>(m, "SynthSpec")
        .def(py::init<>())
        .def_readwrite("inks", &SynthSpec::inks)
        .def_readwrite("lines", &SynthSpec::lines)
        .def_readwrite("rows", &SynthSpec::rows)
        .def_readwrite("cols", &SynthSpec::cols)
        .def_readwrite("bands", &SynthSpec::bands)
        .def_readwrite("wavelength_start_nm", &SynthSpec::wavelength_start_nm)
        .def_readwrite("wavelength_end_nm", &SynthSpec::wavelength_end_nm)
        .def_readwrite("noise_sigma", &SynthSpec::noise_sigma)
        .def_readwrite("seed", &SynthSpec::seed);

    py::class_<GroundTruthPixel>(m, "GroundTruthPixel")
        .def_readonly("row", &GroundTruthPixel::row)
        .def_readonly("col", &GroundTruthPixel::col)
        .def_readonly("ink", &GroundTruthPixel::ink);

    py::class_<SynthDocument>(m, "SynthDocument")
        .def_readonly("cube", &SynthDocument::cube)
        .def_readonly("prototypes", &SynthDocument::prototypes)
        .def_readonly("paper_spectrum", &SynthDocument::paper_spectrum)
        .def_readonly("ink_of_line", &SynthDocument::ink_of_line)
        .def_readonly("pixels", &SynthDocument::pixels);

    // envi
    m.def("parse_header", &parse_header, py::arg("text"));
    m.def("header_to_text", &header_to_text, py::arg("header"));
    m.def(
        "read_cube",
        [](const EnviHeader& header, const py::bytes& raw) {
            const auto bytes = to_byte_vector(raw);
            return read_cube(header, bytes);
        },
        py::arg("header"), py::arg("raw"));
    m.def(
        "write_cube",
        [](const HyperCube& cube, Interleave interleave, DataType data_type) {
            const EnviFilePair pair = write_cube(cube, interleave, data_type);
            return py::make_tuple(pair.header_text, bytes_of(pair.payload));
        },
        py::arg("cube"), py::arg("interleave") = Interleave::BSQ,
        py::arg("data_type") = DataType::Float32);
    m.def("load_cube", &load_cube, py::arg("path"));
    m.def("load_header", &load_header, py::arg("path"));
    m.def("save_cube", &save_cube, py::arg("base_path"), py::arg("cube"),
          py::arg("interleave") = Interleave::BSQ, py::arg("data_type") = DataType::Float32);

    // cube
    m.def("get_band", &get_band, py::arg("cube"), py::arg("band"));
    m.def("crop", &crop, py::arg("cube"), py::arg("top"), py::arg("left"), py::arg("height"),
          py::arg("width"));
    m.def("to_grayscale", &to_grayscale, py::arg("cube"));
    m.def("spectrum_at", &spectrum_at, py::arg("cube"), py::arg("row"), py::arg("col"));
    m.def("mean_spectrum", &mean_spectrum, py::arg("cube"), py::arg("mask"));

    // segmentation
    m.def("otsu_threshold", &otsu_threshold, py::arg("image"));
    m.def("binarize", &binarize, py::arg("image"), py::arg("threshold"));
    m.def("invert", &invert, py::arg("mask"));
    m.def("horizontal_projection", &horizontal_projection, py::arg("mask"));
    m.def("segment_lines", &segment_lines, py::arg("mask"), py::arg("min_gap_rows") = 3,
          py::arg("min_ink_per_row") = 5);
    m.def("extract_samples", &extract_samples, py::arg("cube"), py::arg("mask"));
    m.def("extract_line_samples", &extract_line_samples, py::arg("cube"), py::arg("region"));

    // clustering
    m.def("kmeans", &kmeans, py::arg("samples"), py::arg("k"),
          py::arg("options") = KMeansOptions{});
    m.def("fcm", &fcm, py::arg("samples"), py::arg("k"), py::arg("options") = FcmOptions{},
          py::arg("observer") = nullptr);
    m.def(
        "fcm_memberships",
        [](const SampleMatrix& samples,
           py::array_t<double, py::array::c_style | py::array::forcecast> centroids, double m_) {
            if (centroids.ndim() != 2 || centroids.shape(1) != samples.d)
                throw InvalidParameterError("centroids must be a (k, d) array");
            const int k = static_cast<int>(centroids.shape(0));
            const std::span<const double> view(centroids.data(),
                                               static_cast<std::size_t>(centroids.size()));
            const auto memberships = fcm_memberships(samples, view, k, m_);
            py::array_t<double> out({samples.n, k});
            std::memcpy(out.mutable_data(), memberships.data(),
                        memberships.size() * sizeof(double));
            return out;
        },
        py::arg("samples"), py::arg("centroids"), py::arg("m") = 2.0);
    m.def("agglomerative", &agglomerative, py::arg("samples"),
          py::arg("linkage") = Linkage::Average);
    m.def("cut_dendrogram", &cut_dendrogram, py::arg("dendrogram"), py::arg("k"));
    m.def("silhouette_score", &silhouette_score, py::arg("samples"), py::arg("labels"));
    m.def(
        "estimate_ink_count",
        [](const SampleMatrix& samples, int k_min, int k_max, std::uint64_t seed,
           int max_sweep_samples) {
            InkCountOptions options;
            options.max_sweep_samples = max_sweep_samples;
            return estimate_ink_count(samples, k_min, k_max, seed, options);
        },
        py::arg("samples"), py::arg("k_min") = 2, py::arg("k_max") = 10, py::arg("seed") = 0,
        py::arg("max_sweep_samples") = 2000);

    // report
    m.def("build_label_map", &build_label_map, py::arg("mask"), py::arg("provenance"),
          py::arg("labels"));
    m.def("cluster_mean_spectra", &cluster_mean_spectra, py::arg("samples"), py::arg("labels"),
          py::arg("k"), py::arg("wavelengths_nm") = py::none());
    m.def("default_palette", &default_palette);
    m.def(
        "render_label_map",
        [](const LabelMap& map, std::optional<std::vector<Rgb>> palette) {
            return bytes_of(render_label_map(map, palette ? *palette : default_palette()));
        },
        py::arg("map"), py::arg("palette") = py::none());
    m.def("encode_pgm", [](const BandImage& image) { return bytes_of(encode_pgm(image)); },
          py::arg("image"));
    m.def("encode_pbm", [](const BinaryMask& mask) { return bytes_of(encode_pbm(mask)); },
          py::arg("mask"));

    // synth + pipeline
    m.def("generate_document", &generate_document, py::arg("spec") = SynthSpec{});
    m.def("ground_truth_json", &ground_truth_json, py::arg("document"));
    m.def("save_document", &save_document, py::arg("base_path"), py::arg("document"));
    m.def("run_pipeline", &run_pipeline, py::arg("cube"), py::arg("config") = PipelineConfig{});
    m.def("run_analysis", &run_analysis, py::arg("config"));
    m.def("report_json", &report_json, py::arg("result"), py::arg("config"),
          py::arg("header") = py::none());
    m.def("line_spans_json", &line_spans_json, py::arg("lines"));

    m.attr("__all__") = py::make_tuple(
        "Error", "HeaderParseError", "MissingKeyError", "ConsistencyError", "FormatError",
        "SizeMismatchError", "BoundsError", "InvalidParameterError", "EmptySelectionError",
        "IoError", "Interleave", "DataType", "ByteOrder", "Linkage", "CropMode",
        "AnalysisStatus", "EnviHeader", "HyperCube", "BandImage", "SpectralSignature",
        "BinaryMask", "LineRegion", "PixelCoord", "SampleMatrix", "KMeansOptions",
        "HardClusterResult", "FcmOptions", "FuzzyClusterResult", "DendrogramMerge", "Dendrogram",
        "InkCountResult", "LabelMap", "CropRect", "PipelineConfig", "ClusteringOutcome",
        "AnalysisResult", "AnalysisArtifacts", "SynthSpec", "GroundTruthPixel", "SynthDocument",
        "parse_header", "header_to_text", "read_cube", "write_cube", "load_cube", "load_header",
        "save_cube", "get_band", "crop", "to_grayscale", "spectrum_at", "mean_spectrum",
        "otsu_threshold", "binarize", "invert", "horizontal_projection", "segment_lines",
        "extract_samples", "extract_line_samples", "kmeans", "fcm", "fcm_memberships",
        "agglomerative", "cut_dendrogram", "silhouette_score", "estimate_ink_count",
        "build_label_map", "cluster_mean_spectra", "default_palette", "render_label_map",
        "encode_pgm", "encode_pbm", "generate_document", "ground_truth_json", "save_document",
        "run_pipeline", "run_analysis", "report_json", "line_spans_json");
}
