#include "dsr/raster.hpp"

#include "dsr/dct.hpp"
#include "dsr/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dsr {

namespace {

double edge_fn(double ax, double ay, double bx, double by, double px, double py) {
    return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

// Edge a->b of a positive-area triangle (y grows downward) owns its boundary
// pixels iff it is a top edge (horizontal, pointing +x) or a left edge
// (pointing -y).
bool is_top_left(const Vertex& a, const Vertex& b) {
    double dx = b.x - a.x;
    double dy = b.y - a.y;
    return (dy == 0.0 && dx > 0.0) || dy < 0.0;
}

struct TriSetup {
    Vertex a, b, c; // winding canonicalized to positive area
    double area2 = 0.0;
    bool degenerate = true;
    bool tl0 = false, tl1 = false, tl2 = false; // edges (b,c), (c,a), (a,b)
    ShaderKind shader = ShaderKind::Flat;
    double checker_cell = 8.0;
};

TriSetup setup_triangle(const Triangle& tri) {
    TriSetup s;
    s.a = tri.v0;
    s.b = tri.v1;
    s.c = tri.v2;
    s.shader = tri.shader;
    s.checker_cell = tri.checker_cell;
    double area2 = edge_fn(s.a.x, s.a.y, s.b.x, s.b.y, s.c.x, s.c.y);
    if (area2 == 0.0) return s;
    if (area2 < 0.0) {
        std::swap(s.b, s.c);
        area2 = edge_fn(s.a.x, s.a.y, s.b.x, s.b.y, s.c.x, s.c.y);
    }
    s.area2 = area2;
    s.degenerate = false;
    s.tl0 = is_top_left(s.b, s.c);
    s.tl1 = is_top_left(s.c, s.a);
    s.tl2 = is_top_left(s.a, s.b);
    return s;
}

struct EdgeWeights {
    double w0 = 0.0, w1 = 0.0, w2 = 0.0;
};

bool covers(const TriSetup& s, double px, double py, EdgeWeights& w) {
    w.w0 = edge_fn(s.b.x, s.b.y, s.c.x, s.c.y, px, py);
    w.w1 = edge_fn(s.c.x, s.c.y, s.a.x, s.a.y, px, py);
    w.w2 = edge_fn(s.a.x, s.a.y, s.b.x, s.b.y, px, py);
    bool in0 = w.w0 > 0.0 || (w.w0 == 0.0 && s.tl0);
    bool in1 = w.w1 > 0.0 || (w.w1 == 0.0 && s.tl1);
    bool in2 = w.w2 > 0.0 || (w.w2 == 0.0 && s.tl2);
    return in0 && in1 && in2;
}

double interp(const TriSetup& s, const EdgeWeights& w, double va, double vb, double vc) {
    return (w.w0 / s.area2) * va + (w.w1 / s.area2) * vb + (w.w2 / s.area2) * vc;
}

Rgba shade(const TriSetup& s, const EdgeWeights& w) {
    if (s.shader == ShaderKind::Flat) {
        return Rgba{s.a.r, s.a.g, s.a.b, s.a.a};
    }
    Rgba c;
    c.r = interp(s, w, s.a.r, s.b.r, s.c.r);
    c.g = interp(s, w, s.a.g, s.b.g, s.c.g);
    c.b = interp(s, w, s.a.b, s.b.b, s.c.b);
    c.a = interp(s, w, s.a.a, s.b.a, s.c.a);
    if (s.shader == ShaderKind::Checker) {
        double u = interp(s, w, s.a.u, s.b.u, s.c.u);
        double v = interp(s, w, s.a.v, s.b.v, s.c.v);
        long long cu = static_cast<long long>(std::floor(u / s.checker_cell));
        long long cv = static_cast<long long>(std::floor(v / s.checker_cell));
        if ((cu + cv) & 1) {
            c.r = 1.0 - c.r;
            c.g = 1.0 - c.g;
            c.b = 1.0 - c.b;
        }
    }
    return c;
}

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

} // namespace

std::vector<Superquad> rasterize_tile(std::span<const Triangle> triangles, const TileDesc& tile) {
    const int n = tile.rate.n;
    if (n != 1 && n != 2 && n != 4) {
        throw std::invalid_argument("rasterize_tile: sampling rate side must be 1, 2 or 4");
    }
    const int blocks = 16 / n;          // blocks per tile side
    const int regions = blocks / 2;     // superquad regions per side
    const double half = n / 2.0;        // sample sits at the block center

    std::vector<TriSetup> setups;
    setups.reserve(triangles.size());
    for (const Triangle& t : triangles) setups.push_back(setup_triangle(t));

    std::vector<Superquad> out;
    for (int ry = 0; ry < regions; ++ry) {
        for (int rx = 0; rx < regions; ++rx) {
            for (std::size_t ti = 0; ti < triangles.size(); ++ti) {
                const TriSetup& s = setups[ti];
                if (s.degenerate) continue;
                Superquad quad;
                quad.tri = &triangles[ti];
                bool any = false;
                for (int i = 0; i < 4; ++i) {
                    int bx = rx * 2 + (i & 1);
                    int by = ry * 2 + (i >> 1);
                    Superfragment& sf = quad.frags[static_cast<std::size_t>(i)];
                    sf.block_x = tile.origin_x + bx * n;
                    sf.block_y = tile.origin_y + by * n;
                    sf.n = n;
                    sf.sample_x = sf.block_x + half;
                    sf.sample_y = sf.block_y + half;
                    EdgeWeights w;
                    bool in = covers(s, sf.sample_x, sf.sample_y, w);
                    quad.covered[static_cast<std::size_t>(i)] = in;
                    any = any || in;
                }
                if (any) out.push_back(quad);
            }
        }
    }
    return out;
}

void depth_test_and_shade(const Superquad& quad, const TileDesc& tile, TileBuffers& buffers,
                          PipelineCounters& counters, bool blend) {
    TriSetup s = setup_triangle(*quad.tri);
    if (s.degenerate) return;
    for (int i = 0; i < 4; ++i) {
        if (!quad.covered[static_cast<std::size_t>(i)]) continue;
        const Superfragment& sf = quad.frags[static_cast<std::size_t>(i)];
        EdgeWeights w;
        covers(s, sf.sample_x, sf.sample_y, w);
        double z = interp(s, w, s.a.z, s.b.z, s.c.z);

        int lx = sf.block_x - tile.origin_x;
        int ly = sf.block_y - tile.origin_y;
        std::size_t idx = static_cast<std::size_t>(ly) * 16 + static_cast<std::size_t>(lx);

        counters.depth_ops++; // the superfragment's single depth-buffer access
        if (z < buffers.depth[idx]) {
            Rgba c = shade(s, w);
            counters.shader_invocations++;
            if (blend) {
                counters.color_ops++; // destination read
                const Rgba& dst = buffers.color[idx];
                double sa = c.a;
                c.r = sa * c.r + (1.0 - sa) * dst.r;
                c.g = sa * c.g + (1.0 - sa) * dst.g;
                c.b = sa * c.b + (1.0 - sa) * dst.b;
                c.a = sa + (1.0 - sa) * dst.a;
            }
            buffers.depth[idx] = z;
            buffers.color[idx] = c;
            buffers.touched[idx] = true;
            counters.color_ops++;
        }
    }
}

TileRgba resolve_tile(const TileBuffers& buffers, SamplingRate rate, Color clear_color) {
    const int n = rate.n;
    TileRgba out(16);
    for (int by = 0; by < 16 / n; ++by) {
        for (int bx = 0; bx < 16 / n; ++bx) {
            std::size_t rep = static_cast<std::size_t>(by * n) * 16 + static_cast<std::size_t>(bx * n);
            Color c = clear_color;
            if (buffers.touched[rep]) {
                const Rgba& s = buffers.color[rep];
                c = Color{to_byte(s.r), to_byte(s.g), to_byte(s.b), to_byte(s.a)};
            }
            for (int y = 0; y < n; ++y) {
                for (int x = 0; x < n; ++x) {
                    out.at(bx * n + x, by * n + y) = c;
                }
            }
        }
    }
    return out;
}

FrameRenderResult render_frame(std::span<const Triangle> scene, const TileGrid& grid,
                               const SamplingRateTable& srt, const RenderParams& params) {
    if (srt.tile_count() != grid.tile_count()) {
        throw std::invalid_argument("render_frame: SRT size does not match grid");
    }
    if (grid.tile_size != 16) {
        throw std::invalid_argument("render_frame: pipeline tiles are 16x16");
    }

    FrameRenderResult res;
    res.frame = Frame(grid.frame_width, grid.frame_height, params.clear_color);
    res.max_c.assign(static_cast<std::size_t>(grid.tile_count()), 0.0);
    std::vector<PipelineCounters> tile_counters(static_cast<std::size_t>(grid.tile_count()));

    const KernelMatrix kernel = build_kernel(16);

    parallel_for(grid.tile_count(), [&](int tile_id) {
        TileDesc desc{grid.origin_x(tile_id), grid.origin_y(tile_id),
                      rate_of(srt.states[static_cast<std::size_t>(tile_id)])};
        TileBuffers buffers;
        PipelineCounters& counters = tile_counters[static_cast<std::size_t>(tile_id)];
        for (const Superquad& quad : rasterize_tile(scene, desc)) {
            depth_test_and_shade(quad, desc, buffers, counters, params.blend);
        }
        TileRgba resolved = resolve_tile(buffers, desc.rate, params.clear_color);
        blit_tile(res.frame, grid, tile_id, resolved);
        auto [coeffs, ops] = dct2d_rowcol(tile_luma(resolved), kernel);
        res.max_c[static_cast<std::size_t>(tile_id)] =
            max_coefficient(coeffs, params.excluded_diagonals);
    });

    for (const PipelineCounters& c : tile_counters) res.counters.merge(c);
    return res;
}

std::vector<Triangle> Scene::triangles_at(int frame) const {
    std::vector<Triangle> out = triangles;
    if (frame == 0 || (dx == 0.0 && dy == 0.0)) return out;
    for (Triangle& t : out) {
        for (Vertex* v : {&t.v0, &t.v1, &t.v2}) {
            v->x += frame * dx;
            v->y += frame * dy;
        }
    }
    return out;
}

namespace {

[[noreturn]] void scene_error(const std::string& path, int line, const std::string& what) {
    throw std::runtime_error("scene file " + path + ":" + std::to_string(line) + ": " + what);
}

} // namespace

// Format, one entry per line ('#' starts a comment):
//   scene WIDTH HEIGHT FRAME_COUNT [DX DY]
//   tri x y z r g b [u v]  (three vertices)  flat|gouraud|checker:<cell>
Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scene file: " + path);

    Scene scene;
    bool have_header = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string tok; ls >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;

        if (!have_header) {
            if (tokens[0] != "scene" || (tokens.size() != 4 && tokens.size() != 6)) {
                scene_error(path, line_no, "expected 'scene WIDTH HEIGHT FRAMES [DX DY]'");
            }
            try {
                scene.width = std::stoi(tokens[1]);
                scene.height = std::stoi(tokens[2]);
                scene.frame_count = std::stoi(tokens[3]);
                if (tokens.size() == 6) {
                    scene.dx = std::stod(tokens[4]);
                    scene.dy = std::stod(tokens[5]);
                }
            } catch (const std::exception&) {
                scene_error(path, line_no, "bad number in header");
            }
            if (scene.width <= 0 || scene.height <= 0 || scene.frame_count <= 0) {
                scene_error(path, line_no, "resolution and frame count must be positive");
            }
            have_header = true;
            continue;
        }

        if (tokens[0] != "tri") scene_error(path, line_no, "expected a 'tri' line");
        // 3 vertices of 6 floats (x y z r g b) or 8 floats (.. u v), then a tag
        std::size_t nfloats = tokens.size() - 2;
        bool has_uv;
        if (nfloats == 18) {
            has_uv = false;
        } else if (nfloats == 24) {
            has_uv = true;
        } else {
            scene_error(path, line_no, "expected 18 or 24 vertex numbers plus a shader tag");
        }
        std::vector<double> vals;
        vals.reserve(nfloats);
        for (std::size_t i = 1; i + 1 < tokens.size(); ++i) {
            try {
                vals.push_back(std::stod(tokens[i]));
            } catch (const std::exception&) {
                scene_error(path, line_no, "bad number '" + tokens[i] + "'");
            }
        }
        Triangle tri;
        int stride = has_uv ? 8 : 6;
        Vertex* verts[3] = {&tri.v0, &tri.v1, &tri.v2};
        for (int vi = 0; vi < 3; ++vi) {
            const double* p = vals.data() + vi * stride;
            Vertex& v = *verts[vi];
            v.x = p[0];
            v.y = p[1];
            v.z = p[2];
            v.r = p[3];
            v.g = p[4];
            v.b = p[5];
            if (has_uv) {
                v.u = p[6];
                v.v = p[7];
            }
            if (v.z < 0.0 || v.z > 1.0) scene_error(path, line_no, "vertex depth outside [0,1]");
        }
        const std::string& tag = tokens.back();
        if (tag == "flat") {
            tri.shader = ShaderKind::Flat;
        } else if (tag == "gouraud") {
            tri.shader = ShaderKind::Gouraud;
        } else if (tag.rfind("checker:", 0) == 0) {
            tri.shader = ShaderKind::Checker;
            try {
                tri.checker_cell = std::stod(tag.substr(8));
            } catch (const std::exception&) {
                scene_error(path, line_no, "bad checker cell size in '" + tag + "'");
            }
            if (tri.checker_cell <= 0.0) scene_error(path, line_no, "checker cell must be positive");
        } else {
            scene_error(path, line_no, "unknown shader tag '" + tag + "'");
        }
        scene.triangles.push_back(tri);
    }
    if (!have_header) throw std::runtime_error("scene file " + path + ": missing header line");
    return scene;
}

PipelineRunResult render_sequence(const Scene& scene, const ControllerParams& params,
                                  const RenderParams& render_params) {
    TileGrid grid = make_grid(scene.width, scene.height, 16);
    SamplingRateTable srt(grid.tile_count());
    const SamplingRateTable full_rate(grid.tile_count());

    RenderParams rp = render_params;
    rp.excluded_diagonals = params.d;

    PipelineRunResult run;
    std::vector<FrameReport> reports;
    for (int f = 0; f < scene.frame_count; ++f) {
        std::vector<Triangle> tris = scene.triangles_at(f);
        FrameRenderResult dsr = render_frame(tris, grid, srt, rp);
        FrameRenderResult ref = render_frame(tris, grid, full_rate, rp);

        FrameReport fr;
        fr.frame_index = f;
        fr.mse = mse(dsr.frame, ref.frame);
        fr.psnr_db = psnr(fr.mse);
        fr.shader_invocations = dsr.counters.shader_invocations;
        fr.baseline_invocations = ref.counters.shader_invocations;
        fr.depth_ops = dsr.counters.depth_ops;
        fr.color_ops = dsr.counters.color_ops;
        fr.rate_histogram = state_histogram(srt);
        reports.push_back(fr);

        run.srt_trace.push_back(fr.rate_histogram);
        run.srt_states.push_back(srt);
        run.output_frames.push_back(std::move(dsr.frame));
        run.reference_frames.push_back(std::move(ref.frame));
        srt = update_table(srt, dsr.max_c, params);
    }
    run.report = aggregate(reports);
    return run;
}

} // namespace dsr
