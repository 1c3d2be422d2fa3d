#pragma once

#include <array>
#include <cstdio>
#include <sstream>
#include <string>

#include "latticeperfect/coloring.hpp"

namespace latticeperfect {

// Fixed palette: color 1 white, 2 black, 3 gray, then 13 saturated tones;
// colors beyond 16 reuse the palette cyclically.
inline std::array<unsigned char, 3> palette_color(int color) {
    static constexpr std::array<std::array<unsigned char, 3>, 16> pal{{
        {255, 255, 255}, {0, 0, 0},      {128, 128, 128}, {230, 25, 75},
        {60, 180, 75},   {255, 225, 25}, {0, 130, 200},   {245, 130, 48},
        {145, 30, 180},  {70, 240, 240}, {240, 50, 230},  {210, 245, 60},
        {250, 190, 212}, {0, 128, 128},  {220, 190, 255}, {170, 110, 40},
    }};
    return pal[static_cast<size_t>((color - 1) % 16)];
}

namespace detail {

struct Raster {
    int w = 0, h = 0;
    std::string rgb;  // 3 bytes per pixel

    void set(int x, int y, std::array<unsigned char, 3> c) {
        const size_t o = 3 * (static_cast<size_t>(y) * w + x);
        rgb[o] = static_cast<char>(c[0]);
        rgb[o + 1] = static_cast<char>(c[1]);
        rgb[o + 2] = static_cast<char>(c[2]);
    }
};

inline std::string ppm_bytes(const Raster& r) {
    std::string out = "P6\n" + std::to_string(r.w) + " " + std::to_string(r.h) + "\n255\n";
    out += r.rgb;
    return out;
}

inline std::array<unsigned char, 3> gray_of(double t) {
    const int g = static_cast<int>(t * 255.0 + 0.5);
    const unsigned char u = static_cast<unsigned char>(g < 0 ? 0 : (g > 255 ? 255 : g));
    return {u, u, u};
}

}  // namespace detail

// Binary P6 image of a coloring; one scale x scale block per vertex. Path
// patches render as a single row.
inline std::string render_coloring_ppm(const Coloring& c, int scale = 1) {
    const Patch& p = *c.patch;
    if (p.kind == GridKind::binary_tree)
        throw std::invalid_argument("tree patches render as text, not images");
    if (scale < 1) throw std::invalid_argument("scale must be >= 1");
    const int W = p.kind == GridKind::path ? p.dims[0] : p.dims[0];
    const int H = p.kind == GridKind::path ? 1 : p.dims[1];
    detail::Raster r;
    r.w = W * scale;
    r.h = H * scale;
    r.rgb.assign(static_cast<size_t>(r.w) * r.h * 3, '\0');
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const auto rgb = palette_color(c.color(y * W + x));
            for (int dy = 0; dy < scale; ++dy)
                for (int dx = 0; dx < scale; ++dx) r.set(x * scale + dx, y * scale + dy, rgb);
        }
    return detail::ppm_bytes(r);
}

// Value fields render on a linear grayscale between the min and max value.
inline std::string render_field_ppm(const ValueField& f, int scale = 1) {
    const Patch& p = *f.patch;
    if (p.kind == GridKind::binary_tree)
        throw std::invalid_argument("tree patches render as text, not images");
    if (scale < 1) throw std::invalid_argument("scale must be >= 1");
    double lo = f.values.empty() ? 0.0 : f.values[0], hi = lo;
    for (double v : f.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi - lo;
    const int W = p.dims[0];
    const int H = p.kind == GridKind::path ? 1 : p.dims[1];
    detail::Raster r;
    r.w = W * scale;
    r.h = H * scale;
    r.rgb.assign(static_cast<size_t>(r.w) * r.h * 3, '\0');
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const double v = f.values[static_cast<size_t>(y * W + x)];
            const auto rgb = detail::gray_of(span > 0 ? (v - lo) / span : 0.5);
            for (int dy = 0; dy < scale; ++dy)
                for (int dx = 0; dx < scale; ++dx) r.set(x * scale + dx, y * scale + dy, rgb);
        }
    return detail::ppm_bytes(r);
}

// SVG 1.1 with one unit rect per vertex.
inline std::string render_coloring_svg(const Coloring& c, int cell = 10) {
    const Patch& p = *c.patch;
    if (p.kind == GridKind::binary_tree)
        throw std::invalid_argument("tree patches render as text, not images");
    const int W = p.dims[0];
    const int H = p.kind == GridKind::path ? 1 : p.dims[1];
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W * cell
      << "\" height=\"" << H * cell << "\">\n";
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const auto rgb = palette_color(c.color(y * W + x));
            char col[8];
            std::snprintf(col, sizeof col, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
            s << "<rect x=\"" << x * cell << "\" y=\"" << y * cell << "\" width=\"" << cell
              << "\" height=\"" << cell << "\" fill=\"" << col << "\"/>\n";
        }
    s << "</svg>\n";
    return s.str();
}

// Indented text rendering for binary trees: spine vertices as lines, hanging
// subtrees nested below.
inline std::string render_tree_text(const Patch& p, const std::vector<int>& labels) {
    if (p.kind != GridKind::binary_tree) throw std::invalid_argument("not a tree patch");
    std::ostringstream s;
    const int S = p.dims[0];
    auto emit_subtree = [&](auto&& self, int v, int indent) -> void {
        s << std::string(static_cast<size_t>(indent) * 2, ' ') << "+ " << labels[static_cast<size_t>(v)] << "\n";
        const auto slots = p.raw_slots(v);
        for (int i = 1; i <= 2; ++i)
            if (slots[i] >= 0) self(self, slots[i], indent + 1);
    };
    for (int v = 0; v <= 2 * S; ++v) {
        s << "spine " << p.spine_coord[static_cast<size_t>(v)] << ": " << labels[static_cast<size_t>(v)] << "\n";
        if (p.raw_slots(v)[2] >= 0) emit_subtree(emit_subtree, p.raw_slots(v)[2], 1);
    }
    return s.str();
}

}  // namespace latticeperfect
