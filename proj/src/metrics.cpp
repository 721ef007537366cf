#include "dsr/metrics.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dsr {

double mse(const Frame& a, const Frame& b) {
    if (a.width != b.width || a.height != b.height) {
        throw std::invalid_argument("mse: frame dimensions differ");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        double dr = static_cast<double>(a.pixels[i].r) - b.pixels[i].r;
        double dg = static_cast<double>(a.pixels[i].g) - b.pixels[i].g;
        double db = static_cast<double>(a.pixels[i].b) - b.pixels[i].b;
        sum += dr * dr + dg * dg + db * db;
    }
    return sum / (3.0 * static_cast<double>(a.pixels.size()));
}

double psnr(double mse_value) {
    if (mse_value < 0.0) throw std::invalid_argument("psnr: mse must be non-negative");
    if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse_value);
}

SequenceReport aggregate(const std::vector<FrameReport>& reports) {
    if (reports.empty()) throw std::invalid_argument("aggregate: no frame reports");
    SequenceReport seq;
    seq.frames = reports;
    std::uint64_t invocations = 0;
    std::uint64_t baseline = 0;
    double psnr_sum = 0.0;
    int finite_frames = 0;
    for (const FrameReport& f : reports) {
        invocations += f.shader_invocations;
        baseline += f.baseline_invocations;
        if (std::isfinite(f.psnr_db)) {
            psnr_sum += f.psnr_db;
            finite_frames++;
        }
    }
    seq.mean_psnr_db = finite_frames > 0 ? psnr_sum / finite_frames
                                         : std::numeric_limits<double>::infinity();
    seq.invocation_ratio =
        baseline > 0 ? static_cast<double>(invocations) / static_cast<double>(baseline) : 1.0;
    seq.savings = 1.0 - seq.invocation_ratio;
    return seq;
}

static const char* kStateHeader =
    "full,down1_candidate,quarter,down2_candidate,sixteenth";

void write_frame_csv(const SequenceReport& report, std::ostream& out) {
    out << "frame,mse,psnr_db,shader_invocations,baseline_invocations,depth_ops,color_ops,"
        << kStateHeader << "\n";
    for (const FrameReport& f : report.frames) {
        out << f.frame_index << ',' << f.mse << ',';
        if (std::isfinite(f.psnr_db)) {
            out << f.psnr_db;
        } else {
            out << "inf";
        }
        out << ',' << f.shader_invocations << ',' << f.baseline_invocations << ',' << f.depth_ops
            << ',' << f.color_ops;
        for (std::uint64_t c : f.rate_histogram) out << ',' << c;
        out << '\n';
    }
}

// JSON has no infinity literal; infinite PSNR is an explicit "inf" token.
static nlohmann::ordered_json psnr_json(double v) {
    if (std::isfinite(v)) return v;
    return "inf";
}

nlohmann::ordered_json report_json(const SequenceReport& report) {
    nlohmann::ordered_json j;
    j["per_frame"] = nlohmann::ordered_json::array();
    static const char* names[kTileStateCount] = {"full", "down1_candidate", "quarter",
                                                 "down2_candidate", "sixteenth"};
    for (const FrameReport& f : report.frames) {
        nlohmann::ordered_json e;
        e["frame"] = f.frame_index;
        e["mse"] = f.mse;
        e["psnr_db"] = psnr_json(f.psnr_db);
        e["shader_invocations"] = f.shader_invocations;
        e["baseline_invocations"] = f.baseline_invocations;
        e["depth_ops"] = f.depth_ops;
        e["color_ops"] = f.color_ops;
        nlohmann::ordered_json hist;
        for (int s = 0; s < kTileStateCount; ++s) hist[names[s]] = f.rate_histogram[s];
        e["rate_histogram"] = hist;
        j["per_frame"].push_back(e);
    }
    j["summary"]["mean_psnr_db"] = psnr_json(report.mean_psnr_db);
    j["summary"]["invocation_ratio"] = report.invocation_ratio;
    j["summary"]["savings"] = report.savings;
    return j;
}

} // namespace dsr
