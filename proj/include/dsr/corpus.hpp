#pragma once

#include "dsr/frame.hpp"

#include <vector>

namespace dsr {

// The bundled synthetic sequence: a static two-axis color gradient with a
// moving 3-pixel-cell checkerboard sprite. Gradient tiles carry only low
// spatial frequencies and invite rate drops; sprite tiles stay busy.
std::vector<Frame> synthetic_corpus(int frame_count = 30, int width = 256, int height = 256);

// Defaults produced by `dsrsim calibrate` over synthetic_corpus() with
// --t-grid 8,16,32,64 --d-grid 1,2,3 --psnr-floor 40.
inline constexpr double kCalibratedT = 32.0;
inline constexpr int kCalibratedD = 1;

} // namespace dsr
