#include "dsr/frame.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dsr {

Frame::Frame(int w, int h, Color fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("Frame: dimensions must be positive");
}

double luma601(Color c) {
    return 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
}

TileGrid make_grid(int frame_width, int frame_height, int tile_size) {
    if (frame_width <= 0 || frame_height <= 0 || tile_size <= 0) {
        throw std::invalid_argument("make_grid: dimensions and tile size must be positive");
    }
    TileGrid g;
    g.tile_size = tile_size;
    g.frame_width = frame_width;
    g.frame_height = frame_height;
    g.cols = (frame_width + tile_size - 1) / tile_size;
    g.rows = (frame_height + tile_size - 1) / tile_size;
    return g;
}

static void check_tile_args(const Frame& frame, const TileGrid& grid, int tile_id) {
    if (frame.width != grid.frame_width || frame.height != grid.frame_height) {
        throw std::invalid_argument("tile extraction: frame dimensions do not match grid");
    }
    if (static_cast<int>(frame.pixels.size()) != frame.width * frame.height) {
        throw std::invalid_argument("tile extraction: frame pixel array has wrong length");
    }
    if (tile_id < 0 || tile_id >= grid.tile_count()) {
        throw std::out_of_range("tile extraction: tile_id " + std::to_string(tile_id) +
                                " out of range [0, " + std::to_string(grid.tile_count()) + ")");
    }
}

TileRgba extract_tile_rgba(const Frame& frame, const TileGrid& grid, int tile_id) {
    check_tile_args(frame, grid, tile_id);
    const int ts = grid.tile_size;
    const int ox = grid.origin_x(tile_id);
    const int oy = grid.origin_y(tile_id);
    TileRgba tile(ts);
    for (int y = 0; y < ts; ++y) {
        int sy = std::min(oy + y, frame.height - 1);
        for (int x = 0; x < ts; ++x) {
            int sx = std::min(ox + x, frame.width - 1);
            tile.at(x, y) = frame.at(sx, sy);
        }
    }
    return tile;
}

Mat tile_luma(const TileRgba& tile) {
    Mat m(tile.n);
    for (int y = 0; y < tile.n; ++y) {
        for (int x = 0; x < tile.n; ++x) {
            m(y, x) = luma601(tile.at(x, y));
        }
    }
    return m;
}

TileView extract_tile(const Frame& frame, const TileGrid& grid, int tile_id) {
    TileRgba rgba = extract_tile_rgba(frame, grid, tile_id);
    TileView view;
    view.tile_id = tile_id;
    view.origin_x = grid.origin_x(tile_id);
    view.origin_y = grid.origin_y(tile_id);
    view.luma = tile_luma(rgba);
    return view;
}

void blit_tile(Frame& frame, const TileGrid& grid, int tile_id, const TileRgba& tile) {
    check_tile_args(frame, grid, tile_id);
    if (tile.n != grid.tile_size) {
        throw std::invalid_argument("blit_tile: tile size does not match grid");
    }
    const int ox = grid.origin_x(tile_id);
    const int oy = grid.origin_y(tile_id);
    const int xmax = std::min(grid.tile_size, frame.width - ox);
    const int ymax = std::min(grid.tile_size, frame.height - oy);
    for (int y = 0; y < ymax; ++y) {
        for (int x = 0; x < xmax; ++x) {
            frame.at(ox + x, oy + y) = tile.at(x, y);
        }
    }
}

} // namespace dsr
