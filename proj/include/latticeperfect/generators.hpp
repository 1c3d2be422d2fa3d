#pragma once

#include <array>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "latticeperfect/coloring.hpp"
#include "latticeperfect/grid.hpp"

namespace latticeperfect {

// ---------------------------------------------------------------------------
// Path colorings (k = 2)
// ---------------------------------------------------------------------------

struct PathWord {
    std::vector<int> colors;  // one period, canonical rotation/reflection
    int period = 0;
    std::vector<int> multiplicities;  // occurrences of each color 1..n per period
};

struct PathColoringResult {
    std::vector<PathWord> words;  // one per irreducible block of the matrix
};

namespace detail {

inline std::vector<int> canonical_cyclic_word(std::vector<int> w) {
    auto best = w;
    auto consider = [&](const std::vector<int>& seq) {
        const size_t p = seq.size();
        for (size_t r = 0; r < p; ++r) {
            std::vector<int> rot(p);
            for (size_t i = 0; i < p; ++i) rot[i] = seq[(i + r) % p];
            if (rot < best) best = rot;
        }
    };
    consider(w);
    std::reverse(w.begin(), w.end());
    consider(w);
    return best;
}

}  // namespace detail

// Periodic word of a perfect coloring of the infinite path. The word is grown
// two-sidedly deterministic: after fixing (w0, w1) the matrix forces every
// further letter, and the step map on letter pairs is invertible, so the
// sequence is purely periodic. Reducible matrices yield one word per block.
inline PathColoringResult path_coloring(const ColoringMatrix& m) {
    if (m.k != 2) throw std::invalid_argument("path colorings require k = 2");
    const auto rep = validate_matrix(m);
    if (!rep.admissible) throw std::invalid_argument("matrix is not admissible (row sums / sign symmetry)");

    // support components = irreducible blocks (sign pattern is symmetric)
    std::vector<int> comp(static_cast<size_t>(m.n), -1);
    int ncomp = 0;
    for (int s = 0; s < m.n; ++s) {
        if (comp[static_cast<size_t>(s)] >= 0) continue;
        std::vector<int> stack{s};
        comp[static_cast<size_t>(s)] = ncomp;
        while (!stack.empty()) {
            const int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < m.n; ++j)
                if (j != i && (m.at(i, j) > 0 || m.at(j, i) > 0) && comp[static_cast<size_t>(j)] < 0) {
                    comp[static_cast<size_t>(j)] = ncomp;
                    stack.push_back(j);
                }
        }
        ++ncomp;
    }

    auto next_letter = [&](int prev, int cur) {
        // row of cur minus one occurrence of prev
        for (int j = 0; j < m.n; ++j) {
            int cnt = m.at(cur - 1, j);
            if (j + 1 == prev) --cnt;
            if (cnt > 0) return j + 1;
        }
        throw std::logic_error("path word extension failed");
    };

    PathColoringResult out;
    for (int c = 0; c < ncomp; ++c) {
        int w0 = -1;
        for (int i = 0; i < m.n && w0 < 0; ++i)
            if (comp[static_cast<size_t>(i)] == c) w0 = i + 1;
        int w1 = -1;
        for (int j = 0; j < m.n && w1 < 0; ++j)
            if (m.at(w0 - 1, j) > 0) w1 = j + 1;

        std::vector<int> word{w0};
        int prev = w0, cur = w1;
        while (true) {
            if (prev == w0 && cur == w1 && word.size() > 1) break;
            word.push_back(cur);
            const int nxt = next_letter(prev, cur);
            prev = cur;
            cur = nxt;
            if (word.size() > 4ull * static_cast<size_t>(m.n) * static_cast<size_t>(m.n) + 4)
                throw std::logic_error("path word failed to close");
        }
        word.pop_back();  // the loop appended w1 of the next period before detecting closure

        PathWord pw;
        pw.colors = detail::canonical_cyclic_word(word);
        pw.period = static_cast<int>(pw.colors.size());
        pw.multiplicities.assign(static_cast<size_t>(m.n), 0);
        for (int col : pw.colors) ++pw.multiplicities[static_cast<size_t>(col - 1)];
        out.words.push_back(std::move(pw));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Periodic parallelogram lift
// ---------------------------------------------------------------------------

struct LiftResult {
    Coloring coloring;       // on the smallest torus compatible with the periods
    ColoringMatrix matrix;   // extracted neighborhood matrix
};

namespace detail {

inline long long gcdll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// membership of an integer vector in the lattice spanned by v1, v2
inline bool in_lattice(const PeriodVectors& pv, long long dx, long long dy) {
    const long long det = pv.det();
    const long long z1 = pv.v2[1] * dx - pv.v2[0] * dy;
    const long long z2 = -pv.v1[1] * dx + pv.v1[0] * dy;
    return z1 % det == 0 && z2 % det == 0;
}

}  // namespace detail

// One fresh color per cell of the period lattice, tiled over the smallest
// torus on which the lattice descends. Every (v1,v2)-periodic perfect coloring
// is a merger of this one.
inline LiftResult periodic_lift(GridKind kind, const PeriodVectors& pv) {
    if (kind != GridKind::square && kind != GridKind::triangular && kind != GridKind::hexagonal)
        throw std::invalid_argument("periodic lift covers the 2D grids only");
    const long long det = pv.det();
    if (det == 0) throw std::invalid_argument("period vectors must be linearly independent and nonzero");
    if (kind == GridKind::hexagonal && !pv.all_even())
        throw std::invalid_argument("hexagonal period components must all be even");

    const long long adet = det < 0 ? -det : det;
    long long W = adet / detail::gcdll(adet, detail::gcdll(pv.v1[1], pv.v2[1]));
    long long H = adet / detail::gcdll(adet, detail::gcdll(pv.v1[0], pv.v2[0]));
    if (kind == GridKind::hexagonal) {
        if (W % 2) W *= 2;
        if (H % 2) H *= 2;
    }

    auto patch = build_patch(kind, {static_cast<int>(W), static_cast<int>(H)}, {true, true});
    std::vector<int> colors(static_cast<size_t>(patch->vertex_count), 0);
    std::vector<std::array<long long, 2>> reps;
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            int col = 0;
            for (size_t r = 0; r < reps.size() && col == 0; ++r)
                if (detail::in_lattice(pv, x - reps[r][0], y - reps[r][1])) col = static_cast<int>(r) + 1;
            if (col == 0) {
                reps.push_back({x, y});
                col = static_cast<int>(reps.size());
            }
            colors[static_cast<size_t>(y * W + x)] = col;
        }
    if (static_cast<long long>(reps.size()) != adet)
        throw std::logic_error("lift produced wrong color count");

    Coloring c = make_coloring(patch, static_cast<int>(reps.size()), std::move(colors));
    auto ext = extract_matrix(c);
    if (!ext.ok()) throw std::logic_error("periodic lift extraction inconsistent");
    return LiftResult{std::move(c), std::move(*ext.matrix)};
}

// ---------------------------------------------------------------------------
// Motif tiling
// ---------------------------------------------------------------------------

struct Motif {
    int width = 0;
    int height = 0;
    std::vector<int> cells;  // row-major colors

    int at(int x, int y) const { return cells[static_cast<size_t>(y) * width + x]; }
};

inline Coloring motif_tiling(GridKind kind, const Motif& motif, int torus_w, int torus_h) {
    if (motif.width <= 0 || motif.height <= 0 ||
        static_cast<int>(motif.cells.size()) != motif.width * motif.height)
        throw std::invalid_argument("malformed motif");
    if (torus_w % motif.width != 0 || torus_h % motif.height != 0)
        throw std::invalid_argument("torus extents must be multiples of the motif dimensions");
    int n = 0;
    for (int c : motif.cells) {
        if (c < 1) throw std::invalid_argument("motif colors must be >= 1");
        n = std::max(n, c);
    }
    auto patch = build_patch(kind, {torus_w, torus_h}, {true, true});
    std::vector<int> colors(static_cast<size_t>(patch->vertex_count));
    for (int y = 0; y < torus_h; ++y)
        for (int x = 0; x < torus_w; ++x)
            colors[static_cast<size_t>(y * torus_w + x)] = motif.at(x % motif.width, y % motif.height);
    return make_coloring(std::move(patch), n, std::move(colors));
}

// ---------------------------------------------------------------------------
// Bit-encoded aperiodic square-grid families
// ---------------------------------------------------------------------------

struct BitWord {
    std::vector<int> bits;  // 0/1, length >= 1

    int at(long long i) const {
        const long long L = static_cast<long long>(bits.size());
        return bits[static_cast<size_t>(((i % L) + L) % L)];
    }
};

inline BitWord bitword_from_string(const std::string& s) {
    BitWord w;
    for (char ch : s) {
        if (ch == '0') w.bits.push_back(0);
        else if (ch == '1') w.bits.push_back(1);
        else throw std::invalid_argument("bit word must consist of 0/1");
    }
    if (w.bits.empty()) throw std::invalid_argument("bit word must be nonempty");
    return w;
}

namespace detail {

inline bool is_two_two_matrix(const ColoringMatrix& m) {
    return m.n == 2 && m.k == 4 && m.rows == std::vector<std::vector<int>>{{2, 2}, {2, 2}};
}

inline bool is_three_color_family(const ColoringMatrix& m) {
    return m.n == 3 && m.k == 4 &&
           m.rows == std::vector<std::vector<int>>{{0, 2, 2}, {4, 0, 0}, {4, 0, 0}};
}

inline int posmod2(long long x) { return static_cast<int>(((x % 2) + 2) % 2); }

}  // namespace detail

// Square-grid colorings on an open window driven by a bit word.
//
// [[2,2],[2,2]]: the plane splits into parallel monochromatic staircase paths,
// one vertex per antidiagonal t = x+y; all paths share the turn profile. Bit 0
// keeps the stripe on its diagonal (step pair right,up), bit 1 shifts it (two
// right steps). Adjacent stripes alternate the two colors.
//
// [[0,2,2],[4,0,0],[4,0,0]]: color 1 fills the even sublattice; the odd
// sublattice, seen as its own square lattice, alternates colors 2/3 along one
// axis with a per-row phase given by the bit word.
inline Coloring bit_sequence_coloring(const ColoringMatrix& m, const BitWord& bits, int window_w,
                                      int window_h) {
    if (window_w < 4 || window_h < 4) throw std::invalid_argument("window too small");
    const long long L = static_cast<long long>(bits.bits.size());

    if (detail::is_two_two_matrix(m)) {
        if (window_w + window_h - 1 < 2 * L)
            throw std::invalid_argument("window too small for one period of the bit word");
        // stripe anchor s0(t): s0(0) = 0, steps sigma(2m) = +1,
        // sigma(2m+1) = +1 when bit m set, else -1
        const int tmax = window_w + window_h - 1;
        std::vector<long long> s0(static_cast<size_t>(tmax) + 1, 0);
        for (int t = 0; t < tmax; ++t) {
            const int sigma = (t % 2 == 0) ? 1 : (bits.at(t / 2) ? 1 : -1);
            s0[static_cast<size_t>(t) + 1] = s0[static_cast<size_t>(t)] + sigma;
        }
        auto patch = build_patch(GridKind::square, {window_w, window_h}, {false, false});
        std::vector<int> colors(static_cast<size_t>(patch->vertex_count));
        for (int y = 0; y < window_h; ++y)
            for (int x = 0; x < window_w; ++x) {
                const long long t = x + y;
                const long long stripe = (static_cast<long long>(x) - y - s0[static_cast<size_t>(t)]) / 2;
                colors[static_cast<size_t>(y * window_w + x)] = 1 + detail::posmod2(stripe);
            }
        return make_coloring(std::move(patch), 2, std::move(colors));
    }

    if (detail::is_three_color_family(m)) {
        if (window_w + window_h < 2 * L)
            throw std::invalid_argument("window too small for one period of the bit word");
        auto patch = build_patch(GridKind::square, {window_w, window_h}, {false, false});
        std::vector<int> colors(static_cast<size_t>(patch->vertex_count));
        for (int y = 0; y < window_h; ++y)
            for (int x = 0; x < window_w; ++x) {
                if ((x + y) % 2 == 0) {
                    colors[static_cast<size_t>(y * window_w + x)] = 1;
                } else {
                    const long long u = (static_cast<long long>(x) - 1 + y) / 2;
                    const long long v = (static_cast<long long>(x) - 1 - y) / 2;
                    colors[static_cast<size_t>(y * window_w + x)] = 2 + detail::posmod2(u + bits.at(v));
                }
            }
        return make_coloring(std::move(patch), 3, std::move(colors));
    }

    throw std::invalid_argument("unsupported matrix for bit-sequence colorings");
}

// Window surrogate for translation equivalence: true iff some shift with
// |dx|,|dy| <= max_shift makes the colorings agree on the full overlap.
inline bool window_translation_related(const Coloring& a, const Coloring& b, int max_shift) {
    if (a.patch->dims != b.patch->dims || a.patch->kind != b.patch->kind)
        throw std::invalid_argument("windows must match");
    const int W = a.patch->dims[0], H = a.patch->dims[1];
    for (int dx = -max_shift; dx <= max_shift; ++dx)
        for (int dy = -max_shift; dy <= max_shift; ++dy) {
            bool match = true;
            for (int y = 0; y < H && match; ++y) {
                const int yy = y + dy;
                if (yy < 0 || yy >= H) continue;
                for (int x = 0; x < W && match; ++x) {
                    const int xx = x + dx;
                    if (xx < 0 || xx >= W) continue;
                    if (a.color(y * W + x) != b.color(yy * W + xx)) match = false;
                }
            }
            if (match) return true;
        }
    return false;
}

// ---------------------------------------------------------------------------
// Exhaustive torus search
// ---------------------------------------------------------------------------

enum class SearchSymmetry { translations, translations_and_point };

struct TorusSearchResult {
    std::vector<Coloring> colorings;  // canonical class representatives, sorted
    long long assignments = 0;        // raw perfect assignments encountered
    bool truncated = false;
};

namespace detail {

inline std::vector<std::vector<int>> dedup_permutations(const Patch& patch, SearchSymmetry sym) {
    std::vector<std::vector<int>> perms;
    if (patch.kind == GridKind::path) {
        const int L = patch.dims[0];
        for (int s = 0; s < L; ++s) perms.push_back(translate(patch, {s}));
        return perms;
    }
    const int W = patch.dims[0], H = patch.dims[1];
    const int step = patch.kind == GridKind::hexagonal ? 2 : 1;  // hex shifts must be even
    for (int sx = 0; sx < W; sx += step)
        for (int sy = 0; sy < H; sy += step) perms.push_back(translate(patch, {sx, sy}));
    if (sym == SearchSymmetry::translations || patch.kind != GridKind::square) return perms;

    // square-grid point symmetries around the origin (torus automorphisms)
    std::vector<std::vector<int>> out;
    auto apply_point = [&](int code, int x, int y) {
        int nx = x, ny = y;
        switch (code) {
            case 0: break;
            case 1: nx = (W - x) % W; break;                  // x-flip
            case 2: ny = (H - y) % H; break;                  // y-flip
            case 3: nx = (W - x) % W; ny = (H - y) % H; break;  // rot180
            case 4: nx = y; ny = x; break;                    // transpose (W==H)
            case 5: nx = (W - y) % W; ny = x; break;          // rot90
            case 6: nx = y; ny = (H - x) % H; break;          // rot270
            case 7: nx = (W - y) % W; ny = (H - x) % H; break;  // anti-transpose
        }
        return std::pair<int, int>{nx, ny};
    };
    const int codes = (W == H) ? 8 : 4;
    for (int code = 0; code < codes; ++code) {
        std::vector<int> pperm(static_cast<size_t>(patch.vertex_count));
        for (int y = 0; y < H; ++y)
            for (int x = 0; x < W; ++x) {
                auto [nx, ny] = apply_point(code, x, y);
                pperm[static_cast<size_t>(y * W + x)] = ny * W + nx;
            }
        for (const auto& t : perms) {
            std::vector<int> comp(static_cast<size_t>(patch.vertex_count));
            for (int v = 0; v < patch.vertex_count; ++v) comp[static_cast<size_t>(v)] = t[static_cast<size_t>(pperm[static_cast<size_t>(v)])];
            out.push_back(std::move(comp));
        }
    }
    return out;
}

inline std::vector<int> canonical_assignment(const std::vector<int>& colors,
                                             const std::vector<std::vector<int>>& perms) {
    std::vector<int> best = colors;
    std::vector<int> img(colors.size());
    for (const auto& p : perms) {
        for (size_t v = 0; v < colors.size(); ++v) img[static_cast<size_t>(p[v])] = colors[v];
        if (img < best) best = img;
    }
    return best;
}

}  // namespace detail

// Depth-first search with forward checking over vertex indices, colors tried
// ascending; solutions deduplicated by canonical form over the chosen symmetry
// group. Truncates after `limit` classes.
inline TorusSearchResult torus_search(PatchPtr patch, const ColoringMatrix& m, int limit,
                                      SearchSymmetry sym = SearchSymmetry::translations) {
    if (!patch->fully_wrapped()) throw std::invalid_argument("torus search requires a fully wrapped patch");
    if (patch->k != m.k) throw std::invalid_argument("matrix degree does not match patch");
    for (const auto& row : m.rows) {
        long long s = 0;
        for (int e : row) s += e;
        // the leaf acceptance (cnt <= row with equal sums) needs exact row sums
        if (s != m.k) throw std::invalid_argument("matrix rows must sum to k");
    }

    const int nv = patch->vertex_count;
    const int n = m.n;
    const auto perms = detail::dedup_permutations(*patch, sym);

    std::vector<int> color(static_cast<size_t>(nv), 0);  // 0 = unassigned
    std::vector<std::vector<int>> cnt(static_cast<size_t>(nv), std::vector<int>(static_cast<size_t>(n), 0));

    TorusSearchResult res;
    std::set<std::vector<int>> classes;

    auto fits = [&](int v, int gamma) {
        // the partial neighbor multiset of v must stay below row gamma
        for (int c = 0; c < n; ++c)
            if (cnt[static_cast<size_t>(v)][static_cast<size_t>(c)] > m.at(gamma, c)) return false;
        return true;
    };

    auto dfs = [&](auto&& self, int v) -> bool {  // returns false to abort (limit hit)
        if (v == nv) {
            ++res.assignments;
            auto canon = detail::canonical_assignment(color, perms);
            if (!classes.count(canon)) {
                if (static_cast<int>(classes.size()) >= limit) {
                    res.truncated = true;
                    return false;
                }
                classes.insert(std::move(canon));
            }
            return true;
        }
        for (int gamma = 0; gamma < n; ++gamma) {
            if (!fits(v, gamma)) continue;
            bool ok = true;
            std::vector<int> touched;
            color[static_cast<size_t>(v)] = gamma + 1;
            for (int32_t u : patch->raw_slots(v)) {
                ++cnt[static_cast<size_t>(u)][static_cast<size_t>(gamma)];
                touched.push_back(u);
                if (!ok) continue;
                const int cu = color[static_cast<size_t>(u)];
                if (cu > 0) {
                    // assigned neighbor: its counters must stay feasible
                    if (cnt[static_cast<size_t>(u)][static_cast<size_t>(gamma)] > m.at(cu - 1, gamma)) ok = false;
                } else {
                    // unassigned neighbor: some color must still fit its counters
                    bool any = false;
                    for (int g2 = 0; g2 < n && !any; ++g2) {
                        bool f = true;
                        for (int c = 0; c < n && f; ++c)
                            if (cnt[static_cast<size_t>(u)][static_cast<size_t>(c)] > m.at(g2, c)) f = false;
                        any = f;
                    }
                    if (!any) ok = false;
                }
            }
            if (ok && !self(self, v + 1)) return false;
            for (int u : touched) --cnt[static_cast<size_t>(u)][static_cast<size_t>(gamma)];
            color[static_cast<size_t>(v)] = 0;
        }
        return true;
    };
    dfs(dfs, 0);

    for (const auto& cls : classes) res.colorings.push_back(Coloring{patch, n, cls});
    return res;
}

}  // namespace latticeperfect
