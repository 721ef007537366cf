#pragma once

#include "dsr/frame.hpp"
#include "dsr/metrics.hpp"
#include "dsr/rate_control.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace dsr {

struct ReplayConfig {
    ControllerParams params;
    int tile_size = 16;
    bool emit_frames = false;
    bool emit_rate_maps = false;
};

struct ReplayOutcome {
    std::vector<Frame> output_frames;
    SequenceReport reports;
    // Rate histogram of the SRT as used for each frame.
    std::vector<std::array<std::uint64_t, kTileStateCount>> srt_trace;
    // Full per-frame tables backing the histograms.
    std::vector<SamplingRateTable> srt_states;
};

// Point-samples the reference at offset (n/2, n/2) inside each n x n block
// and replicates it across the block. n = 1 is the identity.
TileRgba simulate_tile(const TileRgba& reference_tile, SamplingRate rate);

// Frame 0 runs all-Full; afterwards each tile is simulated at its SRT rate,
// the replicated tile is analyzed, and update_table sets the next frame.
ReplayOutcome simulate_sequence(const std::vector<Frame>& frames, const ReplayConfig& config);

struct SweepPoint {
    double t = 0.0;
    int d = 0;
    double mean_psnr_db = 0.0;
    double invocation_ratio = 1.0;
};

struct CalibrationResult {
    double t = 0.0;
    int d = 0;
    double mean_psnr_db = 0.0;
    double invocation_ratio = 1.0;
    bool met_floor = false;
    std::vector<SweepPoint> sweep;
};

// Exhaustive sweep over the (t, d) grid. Picks the point with maximal
// savings subject to mean PSNR >= psnr_floor_db; ties go to lower t, then
// lower d. If nothing meets the floor, returns the quality-maximizing point
// with met_floor = false.
CalibrationResult calibrate_parameters(const std::vector<Frame>& frames, double psnr_floor_db,
                                       std::vector<double> t_grid, std::vector<int> d_grid);

} // namespace dsr
