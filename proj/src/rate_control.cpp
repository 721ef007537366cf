#include "dsr/rate_control.hpp"

#include <ostream>
#include <stdexcept>

namespace dsr {

TileState next_state(TileState current, double max_c, const ControllerParams& params) {
    if (max_c > params.t) return TileState::Full; // immediate quality recovery
    switch (current) {
        case TileState::Full: return TileState::Down1Candidate;
        case TileState::Down1Candidate: return TileState::Quarter;
        case TileState::Quarter: return TileState::Down2Candidate;
        case TileState::Down2Candidate: return TileState::Sixteenth;
        case TileState::Sixteenth: return TileState::Sixteenth;
    }
    return TileState::Full;
}

SamplingRate rate_of(TileState state) {
    switch (state) {
        case TileState::Full:
        case TileState::Down1Candidate: return SamplingRate{1};
        case TileState::Quarter:
        case TileState::Down2Candidate: return SamplingRate{2};
        case TileState::Sixteenth: return SamplingRate{4};
    }
    return SamplingRate{1};
}

SrtStorage srt_storage(std::uint64_t tile_count) {
    if (tile_count < 1) throw std::invalid_argument("srt_storage: tile count must be >= 1");
    SrtStorage s;
    s.bits = 3 * tile_count;
    s.kilobytes = static_cast<double>(s.bits) / 8.0 / 1024.0;
    return s;
}

SamplingRateTable update_table(const SamplingRateTable& srt,
                               const std::vector<double>& max_c_per_tile,
                               const ControllerParams& params) {
    if (max_c_per_tile.size() != srt.states.size()) {
        throw std::invalid_argument("update_table: MaxC array length does not match tile count");
    }
    SamplingRateTable next = srt;
    for (std::size_t i = 0; i < next.states.size(); ++i) {
        next.states[i] = next_state(srt.states[i], max_c_per_tile[i], params);
    }
    return next;
}

std::uint8_t encode_state(TileState state) {
    return static_cast<std::uint8_t>(state) & 0x7;
}

TileState decode_state(std::uint8_t bits) {
    std::uint8_t v = bits & 0x7;
    if (v >= kTileStateCount) throw std::invalid_argument("decode_state: not a valid 3-bit state");
    return static_cast<TileState>(v);
}

std::array<std::uint64_t, kTileStateCount> state_histogram(const SamplingRateTable& srt) {
    std::array<std::uint64_t, kTileStateCount> h{};
    for (TileState s : srt.states) h[static_cast<std::size_t>(s)]++;
    return h;
}

void write_srt_csv(const SamplingRateTable& srt, std::ostream& out) {
    static const char* names[kTileStateCount] = {"FULL", "DOWN1_CANDIDATE", "QUARTER",
                                                 "DOWN2_CANDIDATE", "SIXTEENTH"};
    out << "tile_id,state,n\n";
    for (std::size_t i = 0; i < srt.states.size(); ++i) {
        out << i << ',' << names[static_cast<std::size_t>(srt.states[i])] << ','
            << rate_of(srt.states[i]).n << '\n';
    }
}

Frame rate_map_image(const SamplingRateTable& srt, const TileGrid& grid) {
    if (srt.tile_count() != grid.tile_count()) {
        throw std::invalid_argument("rate_map_image: SRT size does not match grid");
    }
    Frame img(grid.cols, grid.rows);
    for (int ty = 0; ty < grid.rows; ++ty) {
        for (int tx = 0; tx < grid.cols; ++tx) {
            int n = rate_of(srt.states[static_cast<std::size_t>(ty) * grid.cols + tx]).n;
            std::uint8_t shade = n == 1 ? 255 : (n == 2 ? 128 : 64);
            img.at(tx, ty) = Color{shade, shade, shade, 255};
        }
    }
    return img;
}

} // namespace dsr
