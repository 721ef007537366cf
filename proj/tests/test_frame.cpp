#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsr/frame.hpp"
#include "dsr/image_io.hpp"

#include "oracles.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

using namespace dsr;

TEST_CASE("make_grid uses ceiling division") {
    TileGrid g = make_grid(1920, 1088, 16);
    CHECK(g.cols == 120);
    CHECK(g.rows == 68);
    CHECK(g.tile_count() == 8160);

    // 1080 is not a multiple of 16; ceiling keeps a full row of edge tiles
    g = make_grid(1920, 1080, 16);
    CHECK(g.cols == 120);
    CHECK(g.rows == 68);
    CHECK(g.tile_count() == 8160);

    g = make_grid(16, 16, 16);
    CHECK(g.cols == 1);
    CHECK(g.rows == 1);
    CHECK(g.tile_count() == 1);
}

TEST_CASE("make_grid rejects non-positive arguments") {
    CHECK_THROWS_AS(make_grid(0, 16, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(16, -1, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(16, 16, 0), std::invalid_argument);
}

TEST_CASE("extract_tile on uniform frames") {
    Frame gray(32, 32, Color{128, 128, 128, 255});
    TileGrid g = make_grid(32, 32, 16);
    for (int id = 0; id < g.tile_count(); ++id) {
        TileView v = extract_tile(gray, g, id);
        for (int y = 0; y < 16; ++y) {
            for (int x = 0; x < 16; ++x) {
                CHECK(v.luma(y, x) == doctest::Approx(128.0));
            }
        }
    }

    Frame red(16, 16, Color{255, 0, 0, 255});
    TileGrid g1 = make_grid(16, 16, 16);
    TileView v = extract_tile(red, g1, 0);
    CHECK(v.luma(0, 0) == doctest::Approx(76.245));
    CHECK(v.luma(15, 15) == 0.299 * 255.0);
}

TEST_CASE("extract_tile matches the per-pixel luma oracle") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> byte(0, 255);
    Frame f(40, 24);
    for (Color& c : f.pixels) {
        c = Color{static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
                  static_cast<std::uint8_t>(byte(rng)), 255};
    }
    TileGrid g = make_grid(40, 24, 16);
    for (int id = 0; id < g.tile_count(); ++id) {
        TileView v = extract_tile(f, g, id);
        for (int y = 0; y < 16; ++y) {
            for (int x = 0; x < 16; ++x) {
                int sx = std::min(v.origin_x + x, f.width - 1);
                int sy = std::min(v.origin_y + y, f.height - 1);
                CHECK(v.luma(y, x) == oracle::luma(f.at(sx, sy)));
            }
        }
    }
}

TEST_CASE("edge tiles clamp to the nearest in-frame pixel") {
    Frame f(20, 20);
    for (int y = 0; y < 20; ++y) {
        for (int x = 0; x < 20; ++x) {
            f.at(x, y) = Color{static_cast<std::uint8_t>(x * 10), static_cast<std::uint8_t>(y * 10), 0, 255};
        }
    }
    TileGrid g = make_grid(20, 20, 16);
    REQUIRE(g.tile_count() == 4);
    TileView corner = extract_tile(f, g, 3); // origin (16,16)
    CHECK(corner.origin_x == 16);
    CHECK(corner.origin_y == 16);
    // beyond (19,19) everything clamps to the last row/column
    CHECK(corner.luma(10, 10) == oracle::luma(f.at(19, 19)));
    CHECK(corner.luma(0, 10) == oracle::luma(f.at(19, 16)));
    CHECK(corner.luma(10, 0) == oracle::luma(f.at(16, 19)));
}

TEST_CASE("extract_tile argument validation") {
    Frame f(32, 32);
    TileGrid g = make_grid(32, 32, 16);
    CHECK_THROWS_AS(extract_tile(f, g, 4), std::out_of_range);
    CHECK_THROWS_AS(extract_tile(f, g, -1), std::out_of_range);
    TileGrid wrong = make_grid(48, 32, 16);
    CHECK_THROWS_AS(extract_tile(f, wrong, 0), std::invalid_argument);
}

TEST_CASE("tile windows cover every in-frame pixel exactly once") {
    Frame f(40, 18);
    TileGrid g = make_grid(40, 18, 16);
    std::vector<int> seen(static_cast<std::size_t>(f.width) * f.height, 0);
    for (int id = 0; id < g.tile_count(); ++id) {
        int ox = g.origin_x(id);
        int oy = g.origin_y(id);
        for (int y = 0; y < g.tile_size; ++y) {
            for (int x = 0; x < g.tile_size; ++x) {
                int fx = ox + x;
                int fy = oy + y;
                if (fx < f.width && fy < f.height) {
                    seen[static_cast<std::size_t>(fy) * f.width + fx]++;
                }
            }
        }
    }
    for (int s : seen) CHECK(s == 1);
}

TEST_CASE("luma is monotone in each channel") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> byte(0, 254);
    for (int i = 0; i < 200; ++i) {
        Color c{static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
                static_cast<std::uint8_t>(byte(rng)), 255};
        double base = luma601(c);
        Color up = c;
        switch (i % 3) {
            case 0: up.r++; break;
            case 1: up.g++; break;
            default: up.b++; break;
        }
        CHECK(luma601(up) > base);
    }
}

TEST_CASE("extract_tile is pure") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> byte(0, 255);
    Frame f(32, 32);
    for (Color& c : f.pixels) {
        c = Color{static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
                  static_cast<std::uint8_t>(byte(rng)), 255};
    }
    TileGrid g = make_grid(32, 32, 16);
    TileView a = extract_tile(f, g, 2);
    TileView b = extract_tile(f, g, 2);
    CHECK(a.luma == b.luma);
}

TEST_CASE("PPM round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "dsr_test_frame";
    fs::create_directories(dir);

    std::mt19937 rng(23);
    std::uniform_int_distribution<int> byte(0, 255);
    Frame f(33, 17);
    for (Color& c : f.pixels) {
        c = Color{static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
                  static_cast<std::uint8_t>(byte(rng)), 255};
    }
    std::string path = (dir / "roundtrip.ppm").string();
    write_ppm(f, path);
    Frame back = read_ppm(path);
    CHECK(back == f);

    SUBCASE("rejects wrong maxval") {
        std::string bad = (dir / "maxval.ppm").string();
        std::ofstream out(bad, std::ios::binary);
        out << "P6\n2 2\n65535\n";
        out.write("aaaaaaaaaaaa", 12);
        out.close();
        CHECK_THROWS_WITH_AS(read_ppm(bad), doctest::Contains("maxval"), std::runtime_error);
    }
    SUBCASE("rejects truncated data") {
        std::string bad = (dir / "short.ppm").string();
        std::ofstream out(bad, std::ios::binary);
        out << "P6\n4 4\n255\n";
        out.write("abc", 3);
        out.close();
        CHECK_THROWS_WITH_AS(read_ppm(bad), doctest::Contains("truncated"), std::runtime_error);
    }
    SUBCASE("missing file names the path") {
        CHECK_THROWS_WITH_AS(read_ppm((dir / "nope.ppm").string()), doctest::Contains("nope.ppm"),
                             std::runtime_error);
    }
    SUBCASE("header comments are skipped") {
        std::string with_comment = (dir / "comment.ppm").string();
        std::ofstream out(with_comment, std::ios::binary);
        out << "P6\n# a comment\n1 1\n255\n";
        out.write("\x10\x20\x30", 3);
        out.close();
        Frame one = read_ppm(with_comment);
        CHECK(one.width == 1);
        CHECK(one.at(0, 0) == Color{16, 32, 48, 255});
    }
}

TEST_CASE("frame directory listing is sorted") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "dsr_test_framedir";
    fs::remove_all(dir);
    fs::create_directories(dir);
    Frame f(4, 4, Color{1, 2, 3, 255});
    write_ppm(f, (dir / "frame_0002.ppm").string());
    write_ppm(f, (dir / "frame_0001.ppm").string());
    write_ppm(f, (dir / "frame_0010.ppm").string());
    auto files = list_frame_files(dir.string());
    REQUIRE(files.size() == 3);
    CHECK(files[0].ends_with("frame_0001.ppm"));
    CHECK(files[2].ends_with("frame_0010.ppm"));
    CHECK(read_frame_dir(dir.string()).size() == 3);
}
