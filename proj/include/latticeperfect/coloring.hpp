#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "latticeperfect/grid.hpp"

namespace latticeperfect {

// n x n nonnegative integer neighborhood-structure matrix; row i lists how many
// neighbors of each color a color-i vertex sees. Admissible rows sum to k.
struct ColoringMatrix {
    int n = 0;
    int k = 0;
    std::vector<std::vector<int>> rows;

    int at(int i, int j) const { return rows[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    bool operator==(const ColoringMatrix& o) const = default;

    static ColoringMatrix from_rows(std::vector<std::vector<int>> r, int k) {
        ColoringMatrix m;
        m.n = static_cast<int>(r.size());
        m.k = k;
        m.rows = std::move(r);
        for (const auto& row : m.rows)
            if (static_cast<int>(row.size()) != m.n)
                throw std::invalid_argument("coloring matrix must be square");
        return m;
    }
};

struct MatrixReport {
    bool admissible = false;
    std::vector<int> bad_row_sums;                 // rows (1-based) with sum != k
    std::vector<std::pair<int, int>> sign_asymmetries;  // (i,j) 1-based, m_ij>0 but m_ji==0
};

// Row sums must equal k; the sign pattern must be symmetric (a color seen by
// another must see it back). Sign asymmetry rules out any perfect coloring.
inline MatrixReport validate_matrix(const ColoringMatrix& m) {
    MatrixReport rep;
    for (int i = 0; i < m.n; ++i) {
        long long s = 0;
        for (int j = 0; j < m.n; ++j) {
            if (m.at(i, j) < 0) rep.bad_row_sums.push_back(i + 1);
            s += m.at(i, j);
        }
        if (s != m.k) rep.bad_row_sums.push_back(i + 1);
    }
    std::sort(rep.bad_row_sums.begin(), rep.bad_row_sums.end());
    rep.bad_row_sums.erase(std::unique(rep.bad_row_sums.begin(), rep.bad_row_sums.end()),
                           rep.bad_row_sums.end());
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (i != j && m.at(i, j) > 0 && m.at(j, i) == 0)
                rep.sign_asymmetries.emplace_back(i + 1, j + 1);
    rep.admissible = rep.bad_row_sums.empty() && rep.sign_asymmetries.empty();
    return rep;
}

// Vertex colors in 1..n over a patch.
struct Coloring {
    PatchPtr patch;
    int n = 0;
    std::vector<int> colors;

    int color(int v) const { return colors[static_cast<size_t>(v)]; }
};

inline Coloring make_coloring(PatchPtr patch, int n, std::vector<int> colors) {
    if (static_cast<int>(colors.size()) != patch->vertex_count)
        throw std::invalid_argument("coloring size does not match patch");
    for (int c : colors)
        if (c < 1 || c > n) throw std::invalid_argument("color out of range 1..n");
    return Coloring{std::move(patch), n, std::move(colors)};
}

struct ValueField {
    PatchPtr patch;
    std::vector<double> values;
};

// Absolute tolerance identifying two field values as the same color.
inline constexpr double kValueEqualTol = 1e-8;

// Surjective relabeling of colors 1..n onto 1..l with l < n.
struct MergerMap {
    int n = 0;
    int l = 0;
    std::vector<int> map;  // map[i-1] in 1..l for source color i

    int operator()(int color) const { return map[static_cast<size_t>(color - 1)]; }
};

inline MergerMap make_merger(int n, std::vector<int> map) {
    if (static_cast<int>(map.size()) != n) throw std::invalid_argument("merger map must cover 1..n");
    int l = 0;
    for (int t : map) {
        if (t < 1) throw std::invalid_argument("merger targets must be >= 1");
        l = std::max(l, t);
    }
    if (l >= n) throw std::invalid_argument("merger must reduce the color count (l < n)");
    std::vector<char> hit(static_cast<size_t>(l), 0);
    for (int t : map) hit[static_cast<size_t>(t - 1)] = 1;
    for (char h : hit)
        if (!h) throw std::invalid_argument("merger map must be surjective onto 1..l");
    return MergerMap{n, l, std::move(map)};
}

namespace detail {

inline std::vector<int> neighbor_color_counts(const Coloring& c, int v) {
    std::vector<int> cnt(static_cast<size_t>(c.n), 0);
    for (int32_t u : c.patch->raw_slots(v))
        if (u >= 0) ++cnt[static_cast<size_t>(c.color(u) - 1)];
    return cnt;
}

}  // namespace detail

struct VerifyResult {
    bool ok = false;
    int witness = -1;                 // first interior vertex violating the row
    std::vector<int> found_counts;    // neighbor-color multiset at the witness
    std::vector<int> expected_counts; // the matrix row it should have matched
};

// Definition check: every interior vertex's neighbor-color multiset equals the
// matrix row of its own color.
inline VerifyResult verify_perfect(const Coloring& c, const ColoringMatrix& m) {
    if (c.n != m.n) throw std::invalid_argument("color count differs from matrix size");
    if (c.patch->k != m.k) throw std::invalid_argument("patch degree differs from matrix k");
    for (int v = 0; v < c.patch->vertex_count; ++v) {
        if (!c.patch->interior(v)) continue;
        auto cnt = detail::neighbor_color_counts(c, v);
        const auto& row = m.rows[static_cast<size_t>(c.color(v) - 1)];
        bool same = true;
        for (int j = 0; j < m.n; ++j)
            if (cnt[static_cast<size_t>(j)] != row[static_cast<size_t>(j)]) same = false;
        if (!same) return VerifyResult{false, v, cnt, row};
    }
    return VerifyResult{true, -1, {}, {}};
}

struct ExtractResult {
    std::optional<ColoringMatrix> matrix;
    // when inconsistent: color and the two lowest-index conflicting witnesses
    int conflict_color = 0;
    int witness_a = -1;
    int witness_b = -1;

    bool ok() const { return matrix.has_value(); }
};

// Reads the neighborhood matrix off a coloring; reports the color with two
// conflicting interior witnesses if rows disagree. Every used color must occur
// on at least one interior vertex.
inline ExtractResult extract_matrix(const Coloring& c) {
    std::vector<std::vector<int>> rows(static_cast<size_t>(c.n));
    std::vector<int> first_witness(static_cast<size_t>(c.n), -1);
    for (int v = 0; v < c.patch->vertex_count; ++v) {
        if (!c.patch->interior(v)) continue;
        const int col = c.color(v) - 1;
        auto cnt = detail::neighbor_color_counts(c, v);
        if (first_witness[static_cast<size_t>(col)] < 0) {
            first_witness[static_cast<size_t>(col)] = v;
            rows[static_cast<size_t>(col)] = std::move(cnt);
        } else if (rows[static_cast<size_t>(col)] != cnt) {
            return ExtractResult{std::nullopt, col + 1, first_witness[static_cast<size_t>(col)], v};
        }
    }
    for (int col = 0; col < c.n; ++col) {
        bool appears = false;
        for (int v = 0; v < c.patch->vertex_count && !appears; ++v)
            if (c.color(v) == col + 1) appears = true;
        if (appears && first_witness[static_cast<size_t>(col)] < 0)
            throw std::invalid_argument("color " + std::to_string(col + 1) +
                                        " has no interior representative");
        if (!appears) rows[static_cast<size_t>(col)].assign(static_cast<size_t>(c.n), 0);
    }
    ColoringMatrix m;
    m.n = c.n;
    m.k = c.patch->k;
    m.rows = std::move(rows);
    return ExtractResult{std::move(m), 0, -1, -1};
}

struct MergeResult {
    std::optional<ColoringMatrix> matrix;
    // incompatibility witness: two source colors with equal image but different
    // aggregated rows
    int source_a = 0;
    int source_b = 0;

    bool ok() const { return matrix.has_value(); }
};

// Aggregates matrix columns through a merger map; two sources mapped to the
// same target must agree on the aggregated row, otherwise no perfect coloring
// with the merged palette exists.
inline MergeResult merge_matrix(const ColoringMatrix& m2, const MergerMap& phi) {
    if (phi.n != m2.n) throw std::invalid_argument("merger map size differs from matrix");
    const int l = phi.l;
    std::vector<std::vector<int>> agg(static_cast<size_t>(m2.n),
                                      std::vector<int>(static_cast<size_t>(l), 0));
    for (int i = 0; i < m2.n; ++i)
        for (int j = 0; j < m2.n; ++j)
            agg[static_cast<size_t>(i)][static_cast<size_t>(phi(j + 1) - 1)] += m2.at(i, j);

    std::vector<int> rep(static_cast<size_t>(l), -1);
    for (int i = 0; i < m2.n; ++i) {
        const int t = phi(i + 1) - 1;
        if (rep[static_cast<size_t>(t)] < 0) {
            rep[static_cast<size_t>(t)] = i;
        } else if (agg[static_cast<size_t>(rep[static_cast<size_t>(t)])] != agg[static_cast<size_t>(i)]) {
            return MergeResult{std::nullopt, rep[static_cast<size_t>(t)] + 1, i + 1};
        }
    }
    ColoringMatrix m1;
    m1.n = l;
    m1.k = m2.k;
    m1.rows.resize(static_cast<size_t>(l));
    for (int t = 0; t < l; ++t) m1.rows[static_cast<size_t>(t)] = agg[static_cast<size_t>(rep[static_cast<size_t>(t)])];
    return MergeResult{std::move(m1), 0, 0};
}

inline Coloring merge_coloring(const Coloring& c, const MergerMap& phi) {
    if (phi.n != c.n) throw std::invalid_argument("merger map size differs from coloring");
    std::vector<int> colors(c.colors.size());
    for (size_t v = 0; v < c.colors.size(); ++v) colors[v] = phi(c.colors[v]);
    return Coloring{c.patch, phi.l, std::move(colors)};
}

// Coloring induced by the value classes of a field (colors ordered by first
// occurrence of the value, equality at kValueEqualTol).
inline Coloring coloring_from_field(const ValueField& f, double tol = kValueEqualTol) {
    std::vector<double> reps;
    std::vector<int> colors(f.values.size(), 0);
    for (size_t v = 0; v < f.values.size(); ++v) {
        int c = -1;
        for (size_t r = 0; r < reps.size(); ++r)
            if (std::abs(f.values[v] - reps[r]) <= tol) {
                c = static_cast<int>(r);
                break;
            }
        if (c < 0) {
            reps.push_back(f.values[v]);
            c = static_cast<int>(reps.size()) - 1;
        }
        colors[v] = c + 1;
    }
    return Coloring{f.patch, static_cast<int>(reps.size()), std::move(colors)};
}

}  // namespace latticeperfect
