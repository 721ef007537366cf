#include "dsr/corpus.hpp"

#include <cmath>
#include <stdexcept>

namespace dsr {

namespace {

constexpr int kSpriteSize = 48;
constexpr int kSpriteCell = 3; // odd cell so low-rate sampling still aliases visibly
constexpr int kSpriteStartX = 12;
constexpr int kSpriteStartY = 60;
constexpr int kSpriteVelX = 3;
constexpr int kSpriteVelY = 2;

std::uint8_t gradient_channel(int coord, int extent) {
    return static_cast<std::uint8_t>(std::lround(64.0 + 128.0 * coord / (extent - 1)));
}

} // namespace

std::vector<Frame> synthetic_corpus(int frame_count, int width, int height) {
    if (frame_count < 1 || width < 16 || height < 16) {
        throw std::invalid_argument("synthetic_corpus: need >= 1 frame and >= 16x16 pixels");
    }
    Frame background(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            background.at(x, y) = Color{gradient_channel(x, width), gradient_channel(y, height), 128, 255};
        }
    }

    std::vector<Frame> frames;
    frames.reserve(static_cast<std::size_t>(frame_count));
    for (int f = 0; f < frame_count; ++f) {
        Frame frame = background;
        int sx = kSpriteStartX + f * kSpriteVelX;
        int sy = kSpriteStartY + f * kSpriteVelY;
        for (int ly = 0; ly < kSpriteSize; ++ly) {
            int y = sy + ly;
            if (y < 0 || y >= height) continue;
            for (int lx = 0; lx < kSpriteSize; ++lx) {
                int x = sx + lx;
                if (x < 0 || x >= width) continue;
                bool odd = ((lx / kSpriteCell) + (ly / kSpriteCell)) & 1;
                frame.at(x, y) = odd ? Color{16, 16, 16, 255} : Color{240, 240, 240, 255};
            }
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

} // namespace dsr
