#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace latticeperfect {

enum class GridKind { path, square, triangular, hexagonal, binary_tree };

inline int degree_of(GridKind kind) {
    switch (kind) {
        case GridKind::path: return 2;
        case GridKind::square: return 4;
        case GridKind::triangular: return 6;
        case GridKind::hexagonal: return 3;
        case GridKind::binary_tree: return 3;
    }
    throw std::invalid_argument("unknown grid kind");
}

inline std::string to_string(GridKind kind) {
    switch (kind) {
        case GridKind::path: return "path";
        case GridKind::square: return "square";
        case GridKind::triangular: return "triangular";
        case GridKind::hexagonal: return "hexagonal";
        case GridKind::binary_tree: return "binary_tree";
    }
    return "?";
}

inline GridKind grid_kind_from_string(const std::string& s) {
    if (s == "path") return GridKind::path;
    if (s == "square") return GridKind::square;
    if (s == "triangular") return GridKind::triangular;
    if (s == "hexagonal") return GridKind::hexagonal;
    if (s == "binary_tree" || s == "tree") return GridKind::binary_tree;
    throw std::invalid_argument("unknown grid kind: " + s);
}

// Finite realization of one of the regular grids. Immutable after build_patch.
//
// Vertex index spaces:
//   path       : v = x,       x in [0,L)
//   square     : v = y*W + x, neighbor slots (+x,-x,+y,-y)
//   triangular : v = y*W + x, slots (+x,-x,+y,-y,+x+y,-x-y)  (skewed layout)
//   hexagonal  : v = y*W + x, slots (+x,-x, then y+1 if x+y even else y-1)
//   binary_tree: spine s in [-S,S] maps to v = s+S; hanging subtrees of depth H
//                below each spine vertex follow in build order. Slots for spine
//                vertices: (spine s-1, spine s+1, child); off-spine: (parent,
//                child0, child1).
//
// A neighbor slot is -1 when the neighbor falls outside an unwrapped axis;
// interior vertices are exactly those with no missing slot.
struct Patch {
    GridKind kind = GridKind::square;
    std::vector<int> dims;
    std::vector<bool> wrap;
    int k = 0;
    int vertex_count = 0;
    std::vector<int32_t> slots;      // vertex_count * k, -1 = missing
    std::vector<uint8_t> interior_mask;

    // binary_tree bookkeeping (empty otherwise)
    std::vector<int64_t> spine_coord;  // spine coordinate, or kNoSpine
    std::vector<int32_t> parent;       // off-spine parent (-1 for spine)
    std::vector<int32_t> level;        // 0 on the spine

    static constexpr int64_t kNoSpine = INT64_MIN;

    bool fully_wrapped() const {
        if (kind == GridKind::binary_tree) return false;
        for (bool w : wrap)
            if (!w) return false;
        return true;
    }

    bool interior(int v) const { return interior_mask[static_cast<size_t>(v)] != 0; }

    std::span<const int32_t> raw_slots(int v) const {
        return {slots.data() + static_cast<size_t>(v) * k, static_cast<size_t>(k)};
    }

    // Present neighbors in fixed slot order (length k for interior vertices).
    std::vector<int> neighbors(int v) const {
        if (v < 0 || v >= vertex_count) throw std::out_of_range("vertex index out of range");
        std::vector<int> out;
        out.reserve(k);
        for (int32_t u : raw_slots(v))
            if (u >= 0) out.push_back(u);
        return out;
    }

    int interior_count() const {
        int c = 0;
        for (int v = 0; v < vertex_count; ++v) c += interior(v);
        return c;
    }
};

using PatchPtr = std::shared_ptr<const Patch>;

struct PeriodVectors {
    std::array<int64_t, 2> v1{0, 0};
    std::array<int64_t, 2> v2{0, 0};

    int64_t det() const { return v1[0] * v2[1] - v1[1] * v2[0]; }
    bool all_even() const {
        return v1[0] % 2 == 0 && v1[1] % 2 == 0 && v2[0] % 2 == 0 && v2[1] % 2 == 0;
    }
};

namespace detail {

inline int wrap_coord(int c, int extent, bool wrapped) {
    if (wrapped) {
        int r = c % extent;
        return r < 0 ? r + extent : r;
    }
    return (c >= 0 && c < extent) ? c : -1;
}

// 2D grids share the row-major frame; only the offset table differs.
inline void build_2d(Patch& p) {
    const int W = p.dims[0], H = p.dims[1];
    p.vertex_count = W * H;
    p.slots.assign(static_cast<size_t>(p.vertex_count) * p.k, -1);
    p.interior_mask.assign(p.vertex_count, 0);

    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            const int v = y * W + x;
            std::vector<std::array<int, 2>> offs;
            switch (p.kind) {
                case GridKind::square:
                    offs = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
                    break;
                case GridKind::triangular:
                    offs = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}};
                    break;
                case GridKind::hexagonal: {
                    const int dy = ((x + y) % 2 == 0) ? 1 : -1;
                    offs = {{1, 0}, {-1, 0}, {0, dy}};
                    break;
                }
                default: throw std::logic_error("build_2d: not a 2D kind");
            }
            bool full = true;
            for (size_t s = 0; s < offs.size(); ++s) {
                const int nx = wrap_coord(x + offs[s][0], W, p.wrap[0]);
                const int ny = wrap_coord(y + offs[s][1], H, p.wrap[1]);
                if (nx < 0 || ny < 0) {
                    full = false;
                    continue;
                }
                p.slots[static_cast<size_t>(v) * p.k + s] = ny * W + nx;
            }
            p.interior_mask[v] = full ? 1 : 0;
        }
    }
}

inline void build_path(Patch& p) {
    const int L = p.dims[0];
    p.vertex_count = L;
    p.slots.assign(static_cast<size_t>(L) * 2, -1);
    p.interior_mask.assign(L, 0);
    for (int x = 0; x < L; ++x) {
        const int r = wrap_coord(x + 1, L, p.wrap[0]);
        const int l = wrap_coord(x - 1, L, p.wrap[0]);
        if (r >= 0) p.slots[2 * static_cast<size_t>(x)] = r;
        if (l >= 0) p.slots[2 * static_cast<size_t>(x) + 1] = l;
        p.interior_mask[x] = (r >= 0 && l >= 0) ? 1 : 0;
    }
}

// Two-sided spine [-S..S] with one hanging binary subtree of depth H below
// each spine vertex. Spine ends and deepest subtree level are non-interior.
inline void build_tree(Patch& p) {
    const int S = p.dims[0];
    const int H = p.dims[1];
    const int spine_n = 2 * S + 1;

    p.spine_coord.assign(spine_n, Patch::kNoSpine);
    p.parent.assign(spine_n, -1);
    p.level.assign(spine_n, 0);
    std::vector<std::array<int32_t, 3>> adj(spine_n, {-1, -1, -1});

    for (int s = -S; s <= S; ++s) {
        const int v = s + S;
        p.spine_coord[v] = s;
        if (s > -S) adj[v][0] = v - 1;
        if (s < S) adj[v][1] = v + 1;
    }

    auto new_vertex = [&](int par, int lvl) {
        const int v = static_cast<int>(adj.size());
        adj.push_back({par, -1, -1});
        p.spine_coord.push_back(Patch::kNoSpine);
        p.parent.push_back(par);
        p.level.push_back(lvl);
        return v;
    };

    // level 1: one child per spine vertex; levels 2..H: full binary fanout
    std::vector<int> frontier;
    for (int v = 0; v < spine_n; ++v) {
        if (H < 1) break;
        const int c = new_vertex(v, 1);
        adj[v][2] = c;
        frontier.push_back(c);
    }
    for (int lvl = 2; lvl <= H; ++lvl) {
        std::vector<int> next;
        for (int v : frontier) {
            const int c0 = new_vertex(v, lvl);
            const int c1 = new_vertex(v, lvl);
            adj[v][1] = c0;
            adj[v][2] = c1;
            next.push_back(c0);
            next.push_back(c1);
        }
        frontier = std::move(next);
    }

    p.vertex_count = static_cast<int>(adj.size());
    p.slots.assign(static_cast<size_t>(p.vertex_count) * 3, -1);
    p.interior_mask.assign(p.vertex_count, 0);
    for (int v = 0; v < p.vertex_count; ++v) {
        bool full = true;
        for (int s = 0; s < 3; ++s) {
            p.slots[static_cast<size_t>(v) * 3 + s] = adj[v][s];
            if (adj[v][s] < 0) full = false;
        }
        p.interior_mask[v] = full ? 1 : 0;
    }
}

}  // namespace detail

inline PatchPtr build_patch(GridKind kind, std::vector<int> dims, std::vector<bool> wrap) {
    auto p = std::make_shared<Patch>();
    p->kind = kind;
    p->k = degree_of(kind);

    switch (kind) {
        case GridKind::path: {
            if (dims.size() != 1) throw std::invalid_argument("path patch needs one extent");
            if (dims[0] <= 0) throw std::invalid_argument("extents must be positive");
            if (wrap.size() != 1) wrap.assign(1, !wrap.empty() && wrap[0]);
            p->dims = dims;
            p->wrap = wrap;
            detail::build_path(*p);
            break;
        }
        case GridKind::square:
        case GridKind::triangular:
        case GridKind::hexagonal: {
            if (dims.size() != 2) throw std::invalid_argument("2D patch needs two extents");
            if (dims[0] <= 0 || dims[1] <= 0) throw std::invalid_argument("extents must be positive");
            if (wrap.size() != 2) throw std::invalid_argument("2D patch needs two wrap flags");
            if (kind == GridKind::hexagonal && (wrap[0] || wrap[1])) {
                if (dims[0] % 2 != 0 || dims[1] % 2 != 0)
                    throw std::invalid_argument("wrapped hexagonal patch needs even extents");
            }
            p->dims = dims;
            p->wrap = wrap;
            detail::build_2d(*p);
            break;
        }
        case GridKind::binary_tree: {
            if (dims.size() == 1) dims.push_back(2);
            if (dims.size() != 2) throw std::invalid_argument("tree patch needs spine half-length and hang depth");
            if (dims[0] <= 0 || dims[1] <= 0) throw std::invalid_argument("extents must be positive");
            for (bool w : wrap)
                if (w) throw std::invalid_argument("binary tree patch cannot wrap");
            p->dims = dims;
            p->wrap.assign(dims.size(), false);
            detail::build_tree(*p);
            break;
        }
    }
    return p;
}

// Translation by an integer shift on a fully wrapped patch; returns the vertex
// permutation perm with perm[v] = image of v. Graph automorphism by construction.
inline std::vector<int> translate(const Patch& patch, const std::vector<int>& shift) {
    if (!patch.fully_wrapped()) throw std::invalid_argument("translate requires a fully wrapped patch");
    if (shift.size() != patch.dims.size()) throw std::invalid_argument("shift dimension mismatch");

    std::vector<int> perm(patch.vertex_count);
    if (patch.kind == GridKind::path) {
        const int L = patch.dims[0];
        for (int x = 0; x < L; ++x) perm[x] = detail::wrap_coord(x + shift[0], L, true);
        return perm;
    }
    if (patch.kind == GridKind::hexagonal) {
        if (shift[0] % 2 != 0 || shift[1] % 2 != 0)
            throw std::invalid_argument("hexagonal translation components must be even");
    }
    const int W = patch.dims[0], H = patch.dims[1];
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const int nx = detail::wrap_coord(x + shift[0], W, true);
            const int ny = detail::wrap_coord(y + shift[1], H, true);
            perm[y * W + x] = ny * W + nx;
        }
    return perm;
}

}  // namespace latticeperfect
