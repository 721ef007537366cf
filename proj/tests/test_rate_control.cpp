#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsr/rate_control.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

using namespace dsr;

namespace {

const TileState kAllStates[kTileStateCount] = {
    TileState::Full, TileState::Down1Candidate, TileState::Quarter, TileState::Down2Candidate,
    TileState::Sixteenth};

} // namespace

TEST_CASE("transition table, exhaustive") {
    ControllerParams p{10.0, 1};
    // low MaxC walks one step down the ladder
    CHECK(next_state(TileState::Full, 0.0, p) == TileState::Down1Candidate);
    CHECK(next_state(TileState::Down1Candidate, 0.0, p) == TileState::Quarter);
    CHECK(next_state(TileState::Quarter, 0.0, p) == TileState::Down2Candidate);
    CHECK(next_state(TileState::Down2Candidate, 0.0, p) == TileState::Sixteenth);
    CHECK(next_state(TileState::Sixteenth, 0.0, p) == TileState::Sixteenth);
    // high MaxC recovers immediately from every state
    for (TileState s : kAllStates) {
        CHECK(next_state(s, 11.0, p) == TileState::Full);
    }
    // MaxC == T counts as low
    CHECK(next_state(TileState::Sixteenth, 10.0, p) == TileState::Sixteenth);
    CHECK(next_state(TileState::Full, 10.0, p) == TileState::Down1Candidate);
}

TEST_CASE("state to rate mapping") {
    CHECK(rate_of(TileState::Full).n == 1);
    CHECK(rate_of(TileState::Down1Candidate).n == 1);
    CHECK(rate_of(TileState::Quarter).n == 2);
    CHECK(rate_of(TileState::Down2Candidate).n == 2);
    CHECK(rate_of(TileState::Sixteenth).n == 4);

    CHECK(SamplingRate{1}.superfragments_per_tile() == 256);
    CHECK(SamplingRate{2}.superfragments_per_tile() == 64);
    CHECK(SamplingRate{4}.superfragments_per_tile() == 16);
}

TEST_CASE("descent needs exactly four low frames") {
    ControllerParams p{5.0, 1};
    TileState s = TileState::Full;
    int steps = 0;
    while (s != TileState::Sixteenth) {
        s = next_state(s, 0.0, p);
        steps++;
        REQUIRE(steps <= 8);
    }
    CHECK(steps == 4);

    // three low frames are not enough
    s = TileState::Full;
    for (int i = 0; i < 3; ++i) s = next_state(s, 0.0, p);
    CHECK(s != TileState::Sixteenth);
}

TEST_CASE("monotone descent under persistent low MaxC") {
    ControllerParams p{5.0, 1};
    TileState s = TileState::Full;
    int prev_n = rate_of(s).n;
    for (int i = 0; i < 10; ++i) {
        s = next_state(s, 1.0, p);
        int n = rate_of(s).n;
        CHECK(n >= prev_n);
        prev_n = n;
    }
    CHECK(s == TileState::Sixteenth);
}

TEST_CASE("replaying a MaxC trace is deterministic") {
    ControllerParams p{7.5, 2};
    std::mt19937 rng(100);
    std::uniform_real_distribution<double> dist(0.0, 15.0);
    std::vector<double> trace;
    for (int i = 0; i < 64; ++i) trace.push_back(dist(rng));
    auto run = [&] {
        std::vector<TileState> states;
        TileState s = TileState::Full;
        for (double m : trace) {
            s = next_state(s, m, p);
            states.push_back(s);
        }
        return states;
    };
    CHECK(run() == run());
}

TEST_CASE("3-bit encoding round trips") {
    for (TileState s : kAllStates) {
        std::uint8_t bits = encode_state(s);
        CHECK(bits <= 0x7);
        CHECK(decode_state(bits) == s);
    }
    CHECK_THROWS_AS(decode_state(5), std::invalid_argument);
    CHECK_THROWS_AS(decode_state(7), std::invalid_argument);
}

TEST_CASE("SRT storage sizing") {
    SrtStorage s = srt_storage(8100);
    CHECK(s.bits == 24300);
    CHECK(s.kilobytes == doctest::Approx(2.966).epsilon(1e-3));

    CHECK(srt_storage(1).bits == 3);

    SrtStorage t = srt_storage(8160);
    CHECK(t.bits == 24480);
    CHECK(t.kilobytes == doctest::Approx(2.988).epsilon(1e-3));

    CHECK_THROWS_AS(srt_storage(0), std::invalid_argument);
}

TEST_CASE("update_table applies next_state element-wise") {
    ControllerParams p{10.0, 1};

    SamplingRateTable srt(6);
    for (TileState s : srt.states) CHECK(s == TileState::Full); // initial state

    std::vector<double> zeros(6, 0.0);
    SamplingRateTable next = update_table(srt, zeros, p);
    for (TileState s : next.states) CHECK(s == TileState::Down1Candidate);

    // recovery from a mixed table
    SamplingRateTable mixed(5);
    for (int i = 0; i < 5; ++i) mixed.states[static_cast<std::size_t>(i)] = kAllStates[i];
    std::vector<double> high(5, p.t + 1.0);
    SamplingRateTable rec = update_table(mixed, high, p);
    for (TileState s : rec.states) CHECK(s == TileState::Full);

    // random tables match the element-wise oracle
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> si(0, 4);
    std::uniform_real_distribution<double> mc(0.0, 20.0);
    SamplingRateTable rnd(64);
    std::vector<double> maxc(64);
    for (int i = 0; i < 64; ++i) {
        rnd.states[static_cast<std::size_t>(i)] = kAllStates[si(rng)];
        maxc[static_cast<std::size_t>(i)] = mc(rng);
    }
    SamplingRateTable out = update_table(rnd, maxc, p);
    for (int i = 0; i < 64; ++i) {
        CHECK(out.states[static_cast<std::size_t>(i)] ==
              next_state(rnd.states[static_cast<std::size_t>(i)], maxc[static_cast<std::size_t>(i)], p));
    }

    std::vector<double> short_arr(3, 0.0);
    CHECK_THROWS_AS(update_table(srt, short_arr, p), std::invalid_argument);
}

TEST_CASE("SRT CSV snapshot") {
    SamplingRateTable srt(3);
    srt.states[1] = TileState::Quarter;
    srt.states[2] = TileState::Sixteenth;
    std::ostringstream out;
    write_srt_csv(srt, out);
    CHECK(out.str() ==
          "tile_id,state,n\n"
          "0,FULL,1\n"
          "1,QUARTER,2\n"
          "2,SIXTEENTH,4\n");
}

TEST_CASE("rate map image is darker at lower rates") {
    TileGrid grid = make_grid(48, 32, 16); // 3x2 tiles
    SamplingRateTable srt(grid.tile_count());
    srt.states[0] = TileState::Sixteenth;
    srt.states[1] = TileState::Quarter;
    Frame img = rate_map_image(srt, grid);
    CHECK(img.width == 3);
    CHECK(img.height == 2);
    CHECK(img.at(0, 0).r == 64);
    CHECK(img.at(1, 0).r == 128);
    CHECK(img.at(2, 0).r == 255);
    CHECK(img.at(0, 0).r < img.at(1, 0).r);
    CHECK(img.at(1, 0).r < img.at(2, 0).r);

    SamplingRateTable wrong(2);
    CHECK_THROWS_AS(rate_map_image(wrong, grid), std::invalid_argument);
}
