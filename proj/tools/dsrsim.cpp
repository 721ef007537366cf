#include "dsr/corpus.hpp"
#include "dsr/image_io.hpp"
#include "dsr/metrics.hpp"
#include "dsr/raster.hpp"
#include "dsr/replay.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Collects emitted file names; the manifest itself is written last so a
// complete manifest implies a complete run.
class OutputDir {
public:
    explicit OutputDir(std::string dir) : dir_(std::move(dir)) {
        fs::create_directories(dir_);
    }

    std::string path(const std::string& name) {
        manifest_.push_back(name);
        return (fs::path(dir_) / name).string();
    }

    void finalize() {
        std::ofstream out(fs::path(dir_) / "manifest.txt");
        if (!out) throw std::runtime_error("cannot write manifest in " + dir_);
        for (const auto& name : manifest_) out << name << '\n';
    }

private:
    std::string dir_;
    std::vector<std::string> manifest_;
};

std::string frame_name(const char* prefix, std::size_t index) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%04zu.ppm", prefix, index + 1);
    return buf;
}

ordered_json psnr_json(double v) {
    if (std::isfinite(v)) return v;
    return "inf";
}

void write_json_file(const ordered_json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

void write_csv_file(const dsr::SequenceReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    dsr::write_frame_csv(report, out);
}

double parse_psnr_floor(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

int run_replay(const std::string& input, const std::string& output, double t, int d,
               bool emit_frames, bool emit_rate_maps, bool emit_srt) {
    std::vector<dsr::Frame> frames = dsr::read_frame_dir(input);
    dsr::ReplayConfig cfg;
    cfg.params = dsr::ControllerParams{t, d};
    cfg.emit_frames = emit_frames;
    cfg.emit_rate_maps = emit_rate_maps;
    dsr::ReplayOutcome outcome = dsr::simulate_sequence(frames, cfg);

    OutputDir out(output);
    ordered_json j;
    j["config"] = {{"mode", "replay"},       {"input", input},
                   {"output", output},       {"tile_size", cfg.tile_size},
                   {"threshold_t", t},       {"diagonals_d", d},
                   {"emit_frames", emit_frames}, {"emit_rate_maps", emit_rate_maps}};
    ordered_json body = dsr::report_json(outcome.reports);
    j["per_frame"] = body["per_frame"];
    j["summary"] = body["summary"];
    write_json_file(j, out.path("report.json"));
    write_csv_file(outcome.reports, out.path("per_frame.csv"));

    const dsr::TileGrid grid = dsr::make_grid(frames[0].width, frames[0].height, cfg.tile_size);
    for (std::size_t f = 0; f < outcome.output_frames.size(); ++f) {
        if (emit_frames) {
            dsr::write_ppm(outcome.output_frames[f], out.path(frame_name("frame", f)));
        }
        if (emit_rate_maps) {
            dsr::write_ppm(dsr::rate_map_image(outcome.srt_states[f], grid),
                           out.path(frame_name("rate_map", f)));
        }
        if (emit_srt) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "srt_%04zu.csv", f + 1);
            std::ofstream srt_out(out.path(buf));
            dsr::write_srt_csv(outcome.srt_states[f], srt_out);
        }
    }
    out.finalize();

    std::printf("replay: %zu frames, invocation ratio %.6f, savings %.6f, mean PSNR %s\n",
                outcome.output_frames.size(), outcome.reports.invocation_ratio,
                outcome.reports.savings,
                std::isfinite(outcome.reports.mean_psnr_db)
                    ? (std::to_string(outcome.reports.mean_psnr_db) + " dB").c_str()
                    : "inf");
    return 0;
}

int run_pipeline(const std::string& input, const std::string& output, double t, int d,
                 bool emit_frames, bool emit_rate_maps) {
    dsr::Scene scene = dsr::load_scene(input);
    dsr::ControllerParams params{t, d};
    dsr::RenderParams rp;
    dsr::PipelineRunResult run = dsr::render_sequence(scene, params, rp);

    OutputDir out(output);
    ordered_json j;
    j["config"] = {{"mode", "pipeline"},   {"input", input},  {"output", output},
                   {"tile_size", 16},      {"threshold_t", t}, {"diagonals_d", d},
                   {"frames", scene.frame_count}};
    ordered_json body = dsr::report_json(run.report);
    j["per_frame"] = body["per_frame"];
    j["summary"] = body["summary"];
    write_json_file(j, out.path("report.json"));
    write_csv_file(run.report, out.path("per_frame.csv"));

    if (emit_frames) {
        for (std::size_t f = 0; f < run.output_frames.size(); ++f) {
            dsr::write_ppm(run.output_frames[f], out.path(frame_name("frame", f)));
            dsr::write_ppm(run.reference_frames[f], out.path(frame_name("reference", f)));
        }
    }
    if (emit_rate_maps) {
        const dsr::TileGrid grid = dsr::make_grid(scene.width, scene.height, 16);
        for (std::size_t f = 0; f < run.srt_states.size(); ++f) {
            dsr::write_ppm(dsr::rate_map_image(run.srt_states[f], grid),
                           out.path(frame_name("rate_map", f)));
        }
    }
    out.finalize();

    std::printf("pipeline: %d frames, invocation ratio %.6f, savings %.6f\n", scene.frame_count,
                run.report.invocation_ratio, run.report.savings);
    return 0;
}

int run_calibrate(const std::string& input, const std::string& output,
                  const std::string& floor_str, std::vector<double> t_grid,
                  std::vector<int> d_grid) {
    std::vector<dsr::Frame> frames = dsr::read_frame_dir(input);
    double floor = parse_psnr_floor(floor_str);
    dsr::CalibrationResult result = dsr::calibrate_parameters(frames, floor, t_grid, d_grid);

    OutputDir out(output);
    ordered_json j;
    j["config"] = {{"mode", "calibrate"},
                   {"input", input},
                   {"output", output},
                   {"psnr_floor_db", psnr_json(floor)},
                   {"t_grid", t_grid},
                   {"d_grid", d_grid}};
    j["sweep"] = ordered_json::array();
    for (const dsr::SweepPoint& p : result.sweep) {
        j["sweep"].push_back({{"threshold_t", p.t},
                              {"diagonals_d", p.d},
                              {"mean_psnr_db", psnr_json(p.mean_psnr_db)},
                              {"invocation_ratio", p.invocation_ratio},
                              {"savings", 1.0 - p.invocation_ratio}});
    }
    j["chosen"] = {{"threshold_t", result.t},
                   {"diagonals_d", result.d},
                   {"mean_psnr_db", psnr_json(result.mean_psnr_db)},
                   {"invocation_ratio", result.invocation_ratio},
                   {"savings", 1.0 - result.invocation_ratio},
                   {"met_floor", result.met_floor}};
    write_json_file(j, out.path("calibration.json"));
    out.finalize();

    std::printf("calibrate: chose t=%g d=%d (ratio %.6f, mean PSNR %s, floor %s)\n", result.t,
                result.d, result.invocation_ratio,
                std::isfinite(result.mean_psnr_db) ? std::to_string(result.mean_psnr_db).c_str()
                                                   : "inf",
                result.met_floor ? "met" : "NOT met");
    return 0;
}

int run_corpus(const std::string& output, int frames, int width, int height) {
    std::vector<dsr::Frame> corpus = dsr::synthetic_corpus(frames, width, height);
    OutputDir out(output);
    for (std::size_t f = 0; f < corpus.size(); ++f) {
        dsr::write_ppm(corpus[f], out.path(frame_name("frame", f)));
    }
    out.finalize();
    std::printf("corpus: wrote %zu frames to %s\n", corpus.size(), output.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic sampling rate simulator for tile-based rendering"};
    app.require_subcommand(1);

    std::string input, output;
    double t = dsr::kCalibratedT;
    int d = dsr::kCalibratedD;
    bool emit_frames = false, emit_rate_maps = false, emit_srt = false;

    auto* replay = app.add_subcommand("replay", "Apply DSR to a directory of PPM frames");
    replay->add_option("--input", input, "directory of input .ppm frames")->required();
    replay->add_option("--output", output, "output directory")->required();
    replay->add_option("--threshold-t", t, "MaxC threshold T");
    replay->add_option("--diagonals-d", d, "excluded low-frequency diagonals D")
        ->check(CLI::Range(0, 31));
    replay->add_flag("--emit-frames", emit_frames, "write simulated frames");
    replay->add_flag("--emit-rate-maps", emit_rate_maps, "write per-frame rate maps");
    replay->add_flag("--emit-srt", emit_srt, "write per-frame SRT snapshots as CSV");

    auto* pipeline = app.add_subcommand("pipeline", "Render an animated scene file with DSR");
    pipeline->add_option("--input", input, "scene file")->required();
    pipeline->add_option("--output", output, "output directory")->required();
    pipeline->add_option("--threshold-t", t, "MaxC threshold T");
    pipeline->add_option("--diagonals-d", d, "excluded low-frequency diagonals D")
        ->check(CLI::Range(0, 31));
    pipeline->add_flag("--emit-frames", emit_frames, "write DSR and reference frames");
    pipeline->add_flag("--emit-rate-maps", emit_rate_maps, "write per-frame rate maps");

    std::string psnr_floor = "40";
    std::vector<double> t_grid{8.0, 16.0, 32.0, 64.0};
    std::vector<int> d_grid{1, 2, 3};
    auto* calibrate = app.add_subcommand("calibrate", "Sweep (T, D) over a frame directory");
    calibrate->add_option("--input", input, "directory of input .ppm frames")->required();
    calibrate->add_option("--output", output, "output directory")->required();
    calibrate->add_option("--psnr-floor", psnr_floor, "mean PSNR floor in dB, or 'inf'");
    calibrate->add_option("--t-grid", t_grid, "threshold candidates")->delimiter(',');
    calibrate->add_option("--d-grid", d_grid, "diagonal candidates")->delimiter(',');

    int corpus_frames = 30, corpus_w = 256, corpus_h = 256;
    auto* corpus = app.add_subcommand("corpus", "Write the bundled synthetic frame sequence");
    corpus->add_option("--output", output, "output directory")->required();
    corpus->add_option("--frames", corpus_frames, "frame count");
    corpus->add_option("--width", corpus_w, "frame width");
    corpus->add_option("--height", corpus_h, "frame height");

    CLI11_PARSE(app, argc, argv);

    try {
        if (replay->parsed()) {
            return run_replay(input, output, t, d, emit_frames, emit_rate_maps, emit_srt);
        }
        if (pipeline->parsed()) {
            return run_pipeline(input, output, t, d, emit_frames, emit_rate_maps);
        }
        if (calibrate->parsed()) {
            return run_calibrate(input, output, psnr_floor, t_grid, d_grid);
        }
        if (corpus->parsed()) {
            return run_corpus(output, corpus_frames, corpus_w, corpus_h);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
