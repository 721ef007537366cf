#pragma once

#include "dsr/mat.hpp"

#include <cstdint>
#include <vector>

namespace dsr {

struct Color {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    std::uint8_t a = 255;

    bool operator==(const Color&) const = default;
};

// Row-major RGBA raster. pixels.size() == width * height always holds.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<Color> pixels;

    Frame() = default;
    Frame(int w, int h, Color fill = Color{0, 0, 0, 255});

    Color& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    Color at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

    bool operator==(const Frame&) const = default;
};

// Tile decomposition of a frame. Both axes use ceiling division, so edge
// tiles may extend past the frame; tile windows are always full size.
struct TileGrid {
    int tile_size = 16;
    int cols = 0;
    int rows = 0;
    int frame_width = 0;
    int frame_height = 0;

    int tile_count() const { return cols * rows; }
    int origin_x(int tile_id) const { return (tile_id % cols) * tile_size; }
    int origin_y(int tile_id) const { return (tile_id / cols) * tile_size; }
};

// A tile-sized RGBA window. Out-of-frame pixels of edge tiles are filled by
// clamping to the nearest in-frame pixel.
struct TileRgba {
    int n = 16;
    std::vector<Color> px;

    explicit TileRgba(int size = 16) : n(size), px(static_cast<std::size_t>(size) * size) {}
    Color& at(int x, int y) { return px[static_cast<std::size_t>(y) * n + x]; }
    Color at(int x, int y) const { return px[static_cast<std::size_t>(y) * n + x]; }

    bool operator==(const TileRgba&) const = default;
};

// A tile's luma window, tile_size x tile_size even for partial edge tiles.
struct TileView {
    int tile_id = 0;
    int origin_x = 0;
    int origin_y = 0;
    Mat luma;
};

// Rec. 601 luma, kept as a real so no quantization noise enters the DCT.
double luma601(Color c);

TileGrid make_grid(int frame_width, int frame_height, int tile_size = 16);

TileRgba extract_tile_rgba(const Frame& frame, const TileGrid& grid, int tile_id);
TileView extract_tile(const Frame& frame, const TileGrid& grid, int tile_id);

Mat tile_luma(const TileRgba& tile);

// Writes the in-frame portion of a tile window back into the frame.
void blit_tile(Frame& frame, const TileGrid& grid, int tile_id, const TileRgba& tile);

} // namespace dsr
