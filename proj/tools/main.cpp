#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "inkspect/envi.hpp"
#include "inkspect/errors.hpp"
#include "inkspect/netpbm.hpp"
#include "inkspect/pipeline.hpp"
#include "inkspect/synth.hpp"
#include "inkspect/text.hpp"

namespace {

using inkspect::Error;
using inkspect::PipelineConfig;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;  // analysis-domain failure (no ink, degenerate clustering)
constexpr int kExitUsage = 2;   // usage, I/O and parse errors

// Config files may be plain `key = value` lines or a flat JSON object;
// command-line flags always win.
class JsonOrIniConfig : public CLI::ConfigBase {
public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::stringstream buffer;
        buffer << input.rdbuf();
        const std::string text = buffer.str();
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            const auto j = nlohmann::json::parse(text);
            std::vector<CLI::ConfigItem> items;
            for (const auto& [key, value] : j.items()) {
                CLI::ConfigItem item;
                item.name = key;
                if (value.is_boolean())
                    item.inputs = {value.get<bool>() ? "true" : "false"};
                else if (value.is_string())
                    item.inputs = {value.get<std::string>()};
                else
                    item.inputs = {value.dump()};
                items.push_back(std::move(item));
            }
            return items;
        }
        std::stringstream replay(text);
        return CLI::ConfigBase::from_config(replay);
    }
};

std::string wavelength_summary(const inkspect::EnviHeader& header) {
    if (!header.wavelengths_nm || header.wavelengths_nm->empty()) return "no wavelength list";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f-%.2f nm", header.wavelengths_nm->front(),
                  header.wavelengths_nm->back());
    return buf;
}

int cmd_info(const std::string& path) {
    const inkspect::EnviHeader header = inkspect::load_header(path);
    std::cout << header.lines << " x " << header.samples << " x " << header.bands << ", "
              << [&] {
                     std::string s = inkspect::to_string(header.interleave);
                     for (char& c : s) c = static_cast<char>(std::toupper(c));
                     return s;
                 }()
              << ", " << inkspect::to_string(header.data_type) << ", "
              << wavelength_summary(header) << "\n";
    std::cout << "lines (rows):   " << header.lines << "\n";
    std::cout << "samples (cols): " << header.samples << "\n";
    std::cout << "bands:          " << header.bands << "\n";
    std::cout << "interleave:     " << inkspect::to_string(header.interleave) << "\n";
    std::cout << "data type:      " << inkspect::to_string(header.data_type) << "\n";
    std::cout << "byte order:     "
              << (header.byte_order == inkspect::ByteOrder::Little ? "little" : "big") << "\n";
    std::cout << "header offset:  " << header.header_offset << "\n";
    std::cout << "wavelengths:    " << wavelength_summary(header) << "\n";
    return kExitOk;
}

struct AnalyzeCli {
    PipelineConfig config;
    std::vector<int> crop_values;
    bool auto_margin = false;
    std::string k_text = "auto";
    std::string linkage_text = "average";
    int binarize_band = -1;
};

void apply_analyze_cli(AnalyzeCli& cli) {
    PipelineConfig& config = cli.config;
    if (!cli.crop_values.empty()) {
        if (cli.auto_margin)
            throw CLI::ValidationError("--crop and --auto-margin are mutually exclusive");
        config.crop_mode = inkspect::CropMode::Rect;
        config.crop_rect = {cli.crop_values[0], cli.crop_values[1], cli.crop_values[2],
                            cli.crop_values[3]};
    } else if (cli.auto_margin) {
        config.crop_mode = inkspect::CropMode::AutoMargin;
    }
    if (cli.binarize_band >= 0) config.binarize_band = cli.binarize_band;

    if (cli.k_text == "auto") {
        config.auto_k = true;
        if (config.k_min >= config.k_max)
            throw CLI::ValidationError("k=auto needs --k-min < --k-max");
    } else {
        config.auto_k = false;
        try {
            config.k = std::stoi(cli.k_text);
        } catch (...) {
            throw CLI::ValidationError("--k must be an integer or 'auto'");
        }
        if (config.k < 1) throw CLI::ValidationError("--k must be >= 1");
    }

    const auto linkage = inkspect::linkage_from_name(cli.linkage_text);
    if (!linkage) throw CLI::ValidationError("--linkage must be single, complete or average");
    config.linkage = *linkage;
}

void add_analyze_options(CLI::App* cmd, AnalyzeCli& cli) {
    cmd->add_option("input", cli.config.input_path, "ENVI cube (.hdr or raw path)")->required();
    cmd->add_option("-o,--output", cli.config.output_dir, "Output directory")
        ->capture_default_str();
    cmd->add_option("--crop", cli.crop_values, "Crop rectangle: top left height width")
        ->expected(4);
    cmd->add_flag("--auto-margin", cli.auto_margin,
                  "Trim rows/cols with ink density below 0.1%");
    cmd->add_option("--binarize-band", cli.binarize_band,
                    "Threshold this band instead of the grayscale projection");
    cmd->add_option("--min-gap-rows", cli.config.min_gap_rows,
                    "Blank rows needed to separate text lines")
        ->capture_default_str();
    cmd->add_option("--min-ink-per-row", cli.config.min_ink_per_row,
                    "Ink pixels needed to count a row as text")
        ->capture_default_str();
    cmd->add_option("--algorithm", cli.config.algorithm, "kmeans | fcm | agglomerative")
        ->check(CLI::IsMember({"kmeans", "fcm", "agglomerative"}))
        ->capture_default_str();
    cmd->add_option("--k", cli.k_text, "Cluster count, or 'auto' for a silhouette sweep")
        ->capture_default_str();
    cmd->add_option("--k-min", cli.config.k_min, "Sweep lower bound")->capture_default_str();
    cmd->add_option("--k-max", cli.config.k_max, "Sweep upper bound")->capture_default_str();
    cmd->add_option("--seed", cli.config.seed, "Random seed")->capture_default_str();
    cmd->add_option("--tol", cli.config.tol, "Convergence tolerance")->capture_default_str();
    cmd->add_option("--max-iter", cli.config.max_iter, "Iteration cap")->capture_default_str();
    cmd->add_option("--m,--fuzziness", cli.config.fuzziness, "Fuzzy c-means exponent (m > 1)")
        ->capture_default_str();
    cmd->add_option("--linkage", cli.linkage_text, "single | complete | average")
        ->capture_default_str();
    cmd->add_option("--restarts", cli.config.restarts, "k-means restarts")->capture_default_str();
    cmd->add_option("--subsample", cli.config.agglomerative_subsample,
                    "Agglomerative subsample cap (0 = all pixels)")
        ->capture_default_str();
    cmd->add_option("--sweep-subsample", cli.config.sweep_subsample,
                    "Auto-k sweep subsample cap (0 = all pixels)")
        ->capture_default_str();
    cmd->add_flag("--include-background", cli.config.include_background,
                  "Cluster background pixels together with the ink");
    cmd->set_config("--config", "", "Config file (key=value or JSON); flags take precedence");
    cmd->config_formatter(std::make_shared<JsonOrIniConfig>());
}

int cmd_analyze(AnalyzeCli& cli) {
    apply_analyze_cli(cli);
    const inkspect::AnalysisArtifacts artifacts = inkspect::run_analysis(cli.config);
    for (const std::string& file : artifacts.written_files)
        std::cout << "wrote " << file << "\n";
    if (artifacts.status == inkspect::AnalysisStatus::NoInk) {
        std::cerr << "no ink detected\n";
        return kExitDomain;
    }
    return kExitOk;
}

int cmd_synth(const std::string& base, const inkspect::SynthSpec& spec) {
    inkspect::SynthDocument doc;
    try {
        doc = inkspect::generate_document(spec);
    } catch (const inkspect::InvalidParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    inkspect::save_document(base, doc);
    std::cout << "wrote " << base << ".hdr\n";
    std::cout << "wrote " << base << ".raw\n";
    std::cout << "wrote " << base << "_truth.json\n";
    std::cout << "ink pixels: " << doc.pixels.size() << "\n";
    return kExitOk;
}

int cmd_band(const std::string& input, int band, const std::string& output) {
    const inkspect::HyperCube cube = inkspect::load_cube(input);
    const inkspect::BandImage image = inkspect::get_band(cube, band);
    inkspect::write_file(output, inkspect::encode_pgm(image));
    std::cout << "wrote " << output << "\n";
    return kExitOk;
}

int cmd_lines(const std::string& input, int min_gap_rows, int min_ink_per_row,
              const std::string& output) {
    const inkspect::HyperCube cube = inkspect::load_cube(input);
    const inkspect::BandImage gray = inkspect::to_grayscale(cube);
    std::vector<inkspect::LineRegion> lines;
    if (const auto threshold = inkspect::otsu_threshold(gray)) {
        const inkspect::BinaryMask mask = inkspect::binarize(gray, *threshold);
        lines = inkspect::segment_lines(mask, min_gap_rows, min_ink_per_row);
    }
    const std::string json = inkspect::line_spans_json(lines);
    if (output.empty()) {
        std::cout << json << "\n";
    } else {
        inkspect::write_text_file(output, json);
        std::cout << "wrote " << output << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperspectral document ink analysis"};
    app.require_subcommand(1);

    // info
    std::string info_path;
    CLI::App* info = app.add_subcommand("info", "Print header metadata of a cube");
    info->add_option("input", info_path, "ENVI cube (.hdr or raw path)")->required();

    // analyze
    AnalyzeCli analyze_cli;
    CLI::App* analyze =
        app.add_subcommand("analyze", "Segment ink, cluster spectra and write reports");
    add_analyze_options(analyze, analyze_cli);

    // synth
    inkspect::SynthSpec synth_spec;
    std::string synth_base;
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic handwritten cube");
    synth->add_option("output", synth_base, "Output base path (writes .hdr/.raw/_truth.json)")
        ->required();
    synth->add_option("--inks", synth_spec.inks, "Distinct inks")->capture_default_str();
    synth->add_option("--lines", synth_spec.lines, "Text lines")->capture_default_str();
    synth->add_option("--rows", synth_spec.rows, "Image height")->capture_default_str();
    synth->add_option("--cols", synth_spec.cols, "Image width")->capture_default_str();
    synth->add_option("--bands", synth_spec.bands, "Spectral bands")->capture_default_str();
    synth->add_option("--wl-start", synth_spec.wavelength_start_nm, "First wavelength (nm)")
        ->capture_default_str();
    synth->add_option("--wl-end", synth_spec.wavelength_end_nm, "Last wavelength (nm)")
        ->capture_default_str();
    synth->add_option("--noise", synth_spec.noise_sigma, "Gaussian noise sigma")
        ->capture_default_str();
    synth->add_option("--seed", synth_spec.seed, "Random seed")->capture_default_str();

    // band
    std::string band_input, band_output = "band.pgm";
    int band_index = 0;
    CLI::App* band = app.add_subcommand("band", "Export one band as 8-bit PGM");
    band->add_option("input", band_input, "ENVI cube")->required();
    band->add_option("index", band_index, "Band index (0-based)")->required();
    band->add_option("-o,--output", band_output, "Output PGM path")->capture_default_str();

    // lines
    std::string lines_input, lines_output;
    int lines_gap = 3, lines_ink = 5;
    CLI::App* lines = app.add_subcommand("lines", "Emit detected text line spans as JSON");
    lines->add_option("input", lines_input, "ENVI cube")->required();
    lines->add_option("-o,--output", lines_output, "Output JSON path (default: stdout)");
    lines->add_option("--min-gap-rows", lines_gap, "Blank rows needed to separate lines")
        ->capture_default_str();
    lines->add_option("--min-ink-per-row", lines_ink, "Ink pixels needed per text row")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (info->parsed()) return cmd_info(info_path);
        if (analyze->parsed()) return cmd_analyze(analyze_cli);
        if (synth->parsed()) return cmd_synth(synth_base, synth_spec);
        if (band->parsed()) return cmd_band(band_input, band_index, band_output);
        if (lines->parsed()) return cmd_lines(lines_input, lines_gap, lines_ink, lines_output);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const inkspect::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const inkspect::MissingKeyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const inkspect::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const inkspect::SizeMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const inkspect::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        // Domain failures (no ink, degenerate clustering, bad geometry).
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
