#pragma once

#include "dsr/frame.hpp"
#include "dsr/rate_control.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <json.hpp>

namespace dsr {

struct FrameReport {
    int frame_index = 0;
    double mse = 0.0;
    double psnr_db = 0.0; // +infinity when mse == 0
    std::uint64_t shader_invocations = 0;
    std::uint64_t baseline_invocations = 0;
    std::uint64_t depth_ops = 0;
    std::uint64_t color_ops = 0;
    std::array<std::uint64_t, kTileStateCount> rate_histogram{};
};

struct SequenceReport {
    std::vector<FrameReport> frames;
    // Mean over frames with finite PSNR; +infinity when every frame is exact.
    double mean_psnr_db = 0.0;
    double invocation_ratio = 1.0; // sum(invocations) / sum(baseline)
    double savings = 0.0;          // 1 - invocation_ratio
};

// Mean squared 8-bit difference over pixels and RGB channels, alpha excluded.
double mse(const Frame& a, const Frame& b);

// 10*log10(255^2 / mse); +infinity for mse == 0.
double psnr(double mse_value);

SequenceReport aggregate(const std::vector<FrameReport>& reports);

// Per-frame rows for plotting. Infinite PSNR is written as "inf".
void write_frame_csv(const SequenceReport& report, std::ostream& out);

// {per_frame:[...], summary:{...}}; the caller prepends its config object.
nlohmann::ordered_json report_json(const SequenceReport& report);

} // namespace dsr
