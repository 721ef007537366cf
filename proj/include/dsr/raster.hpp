#pragma once

#include "dsr/frame.hpp"
#include "dsr/metrics.hpp"
#include "dsr/rate_control.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace dsr {

struct Vertex {
    double x = 0.0; // screen-space pixels
    double y = 0.0;
    double z = 0.0; // depth in [0,1]
    double r = 0.0; // color in [0,1]
    double g = 0.0;
    double b = 0.0;
    double a = 1.0;
    double u = 0.0;
    double v = 0.0;
};

enum class ShaderKind { Flat, Gouraud, Checker };

struct Triangle {
    Vertex v0, v1, v2;
    ShaderKind shader = ShaderKind::Flat;
    double checker_cell = 8.0; // cell size in uv units
};

struct Rgba {
    double r = 0.0, g = 0.0, b = 0.0, a = 1.0;
};

// One shaded sample covering an n x n pixel block; the sample sits at the
// block center (block_x + n/2, block_y + n/2).
struct Superfragment {
    int block_x = 0;
    int block_y = 0;
    int n = 1;
    double sample_x = 0.0;
    double sample_y = 0.0;
    double depth = 0.0;
    Rgba color;
};

// Four superfragments in a 2x2 arrangement covering a 2n x 2n pixel region.
// Order: top-left, top-right, bottom-left, bottom-right.
struct Superquad {
    const Triangle* tri = nullptr;
    std::array<Superfragment, 4> frags;
    std::array<bool, 4> covered{};
};

// On-chip tile storage: 256 entries regardless of rate. At rate 1/(n x n)
// only block-representative entries get touched.
struct TileBuffers {
    std::array<double, 256> depth;
    std::array<Rgba, 256> color;
    std::array<bool, 256> touched;

    TileBuffers() {
        depth.fill(1.0); // far plane
        color.fill(Rgba{});
        touched.fill(false);
    }
};

struct PipelineCounters {
    std::uint64_t shader_invocations = 0;
    std::uint64_t depth_ops = 0;
    std::uint64_t color_ops = 0;

    void merge(const PipelineCounters& o) {
        shader_invocations += o.shader_invocations;
        depth_ops += o.depth_ops;
        color_ops += o.color_ops;
    }
};

struct TileDesc {
    int origin_x = 0; // multiples of 16
    int origin_y = 0;
    SamplingRate rate;
};

// Emits, region by region in scene order, every superquad with at least one
// covered superfragment. Coverage = sample center inside the triangle under
// the top-left fill rule. Degenerate triangles are skipped.
std::vector<Superquad> rasterize_tile(std::span<const Triangle> triangles, const TileDesc& tile);

// Covered superfragments get barycentric depth, a strict less-than test
// against the block's single depth entry, and one shader invocation on pass.
// With blending on, a pass costs one color read plus one write.
void depth_test_and_shade(const Superquad& quad, const TileDesc& tile, TileBuffers& buffers,
                          PipelineCounters& counters, bool blend = false);

// Replicates every block's color to all its pixels; untouched blocks get the
// clear color. Output is quantized to 8 bits.
TileRgba resolve_tile(const TileBuffers& buffers, SamplingRate rate, Color clear_color);

struct RenderParams {
    int excluded_diagonals = 1;
    Color clear_color{0, 0, 0, 255};
    bool blend = false;
};

struct FrameRenderResult {
    Frame frame;
    std::vector<double> max_c; // per tile, from the resolved (post-replication) luma
    PipelineCounters counters;
};

// Renders every tile at its SRT rate, then runs the frequency analysis on the
// resolved tile. The caller applies update_table for the next frame.
FrameRenderResult render_frame(std::span<const Triangle> scene, const TileGrid& grid,
                               const SamplingRateTable& srt, const RenderParams& params);

// An animated screen-space scene: base triangles plus an optional linear
// per-frame vertex delta.
struct Scene {
    int width = 0;
    int height = 0;
    int frame_count = 1;
    double dx = 0.0;
    double dy = 0.0;
    std::vector<Triangle> triangles;

    std::vector<Triangle> triangles_at(int frame) const;
};

Scene load_scene(const std::string& path);

struct PipelineRunResult {
    std::vector<Frame> output_frames;    // DSR
    std::vector<Frame> reference_frames; // all tiles Full, the quality baseline
    SequenceReport report;
    std::vector<std::array<std::uint64_t, kTileStateCount>> srt_trace;
    std::vector<SamplingRateTable> srt_states; // table as used for each frame
};

// Per frame: render with the SRT, render the full-rate reference, compare,
// then advance the SRT from the DSR frame's MaxC values.
PipelineRunResult render_sequence(const Scene& scene, const ControllerParams& params,
                                  const RenderParams& render_params);

} // namespace dsr
