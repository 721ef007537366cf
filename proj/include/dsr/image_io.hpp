#pragma once

#include "dsr/frame.hpp"

#include <string>
#include <vector>

namespace dsr {

// Binary PPM (P6, maxval 255). Alpha is not stored; reads set a=255.
Frame read_ppm(const std::string& path);
void write_ppm(const Frame& frame, const std::string& path);

// All *.ppm files in a directory, sorted by name.
std::vector<std::string> list_frame_files(const std::string& dir);
std::vector<Frame> read_frame_dir(const std::string& dir);

} // namespace dsr
