#include "dsr/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace dsr {

namespace fs = std::filesystem;

// Reads one whitespace-delimited header token, skipping '#' comments.
static std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

Frame read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open PPM file: " + path);

    std::string magic = next_token(in);
    if (magic != "P6") throw std::runtime_error("not a binary PPM (P6) file: " + path);

    auto parse_int = [&](const char* what) {
        std::string tok = next_token(in);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
            throw std::runtime_error(std::string("bad PPM ") + what + " in " + path);
        }
        return std::stoi(tok);
    };
    int w = parse_int("width");
    int h = parse_int("height");
    int maxval = parse_int("maxval");
    if (w <= 0 || h <= 0) throw std::runtime_error("bad PPM dimensions in " + path);
    if (maxval != 255) throw std::runtime_error("unsupported PPM maxval (want 255) in " + path);

    Frame frame(w, h);
    std::vector<unsigned char> raw(static_cast<std::size_t>(w) * h * 3);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
        throw std::runtime_error("truncated PPM pixel data in " + path);
    }
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
        frame.pixels[i] = Color{raw[3 * i], raw[3 * i + 1], raw[3 * i + 2], 255};
    }
    return frame;
}

void write_ppm(const Frame& frame, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot create PPM file: " + path);
    out << "P6\n" << frame.width << " " << frame.height << "\n255\n";
    std::vector<unsigned char> raw(frame.pixels.size() * 3);
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
        raw[3 * i] = frame.pixels[i].r;
        raw[3 * i + 1] = frame.pixels[i].g;
        raw[3 * i + 2] = frame.pixels[i].b;
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw std::runtime_error("failed writing PPM file: " + path);
}

std::vector<std::string> list_frame_files(const std::string& dir) {
    if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir);
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".ppm") {
            files.push_back(entry.path().string());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::vector<Frame> read_frame_dir(const std::string& dir) {
    std::vector<std::string> files = list_frame_files(dir);
    if (files.empty()) throw std::runtime_error("no .ppm frames found in " + dir);
    std::vector<Frame> frames;
    frames.reserve(files.size());
    for (const auto& f : files) frames.push_back(read_ppm(f));
    return frames;
}

} // namespace dsr
