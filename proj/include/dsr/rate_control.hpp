#pragma once

#include "dsr/frame.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace dsr {

// Per-tile FSM state. Five states fit in 3 bits; the two candidate states
// add hysteresis before each rate drop.
enum class TileState : std::uint8_t {
    Full = 0,
    Down1Candidate = 1,
    Quarter = 2,
    Down2Candidate = 3,
    Sixteenth = 4,
};

inline constexpr int kTileStateCount = 5;

// Sampling rate 1/(n x n): one shaded sample per n x n pixel block.
struct SamplingRate {
    int n = 1;

    int superfragments_per_tile() const { return (16 / n) * (16 / n); }
    bool operator==(const SamplingRate&) const = default;
};

struct ControllerParams {
    double t = 0.0; // MaxC threshold, luma-coefficient units
    int d = 1;      // excluded low-frequency anti-diagonals
};

struct SrtStorage {
    std::uint64_t bits = 0;
    double kilobytes = 0.0;
};

// Per-tile state array persisted across frames. Starts all Full so frame 0
// is rendered and analyzed at full rate.
struct SamplingRateTable {
    std::vector<TileState> states;

    SamplingRateTable() = default;
    explicit SamplingRateTable(int tile_count)
        : states(static_cast<std::size_t>(tile_count), TileState::Full) {}

    int tile_count() const { return static_cast<int>(states.size()); }
};

// MaxC > t recovers to Full from any state; MaxC <= t advances one step
// down the ladder, Sixteenth self-loops.
TileState next_state(TileState current, double max_c, const ControllerParams& params);

SamplingRate rate_of(TileState state);

SrtStorage srt_storage(std::uint64_t tile_count);

SamplingRateTable update_table(const SamplingRateTable& srt,
                               const std::vector<double>& max_c_per_tile,
                               const ControllerParams& params);

std::uint8_t encode_state(TileState state);
TileState decode_state(std::uint8_t bits);

std::array<std::uint64_t, kTileStateCount> state_histogram(const SamplingRateTable& srt);

// One line per tile: "tile_id,state,n".
void write_srt_csv(const SamplingRateTable& srt, std::ostream& out);

// One pixel per tile, darker = lower rate.
Frame rate_map_image(const SamplingRateTable& srt, const TileGrid& grid);

} // namespace dsr
