#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "latticeperfect/coloring.hpp"
#include "latticeperfect/grid.hpp"

namespace latticeperfect {

namespace detail {

inline __int128 checked_mul(__int128 a, __int128 b) {
    static const __int128 lim = (static_cast<__int128>(1) << 126);
    if (a != 0 && ((b > 0 && (a > lim / b || a < -(lim / b))) ||
                   (b < 0 && (a > lim / (-b) || a < -(lim / (-b))))))
        throw std::overflow_error("exact determinant overflow");
    return a * b;
}

}  // namespace detail

// Fraction-free Bareiss elimination; exact for integer entries. Intermediate
// values stay within the 128-bit range for the desk-scale matrices used here.
inline long long exact_determinant(std::vector<std::vector<long long>> a) {
    const size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("determinant needs a square matrix");
    if (n == 0) return 1;

    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = a[i][j];

    int sign = 1;
    __int128 prev = 1;
    for (size_t kcol = 0; kcol + 1 < n; ++kcol) {
        if (m[kcol][kcol] == 0) {
            size_t piv = kcol + 1;
            while (piv < n && m[piv][kcol] == 0) ++piv;
            if (piv == n) return 0;  // zero column below diagonal: singular
            std::swap(m[kcol], m[piv]);
            sign = -sign;
        }
        for (size_t i = kcol + 1; i < n; ++i) {
            for (size_t j = kcol + 1; j < n; ++j) {
                const __int128 t =
                    detail::checked_mul(m[i][j], m[kcol][kcol]) - detail::checked_mul(m[i][kcol], m[kcol][j]);
                m[i][j] = t / prev;  // exact division in Bareiss
            }
            m[i][kcol] = 0;
        }
        prev = m[kcol][kcol];
    }
    const __int128 det = sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
    if (det > INT64_MAX || det < INT64_MIN) throw std::overflow_error("determinant exceeds 64 bits");
    return static_cast<long long>(det);
}

// Existence of an aperiodic m-perfect coloring, characterized by an exact
// integer determinant: det(m) for the square grid, det(m + 2I) for the
// triangular grid, det(m^2 - I) for the hexagonal grid.
inline bool aperiodicity_test(const ColoringMatrix& m, GridKind kind) {
    if (kind == GridKind::path || kind == GridKind::binary_tree)
        throw std::invalid_argument("aperiodicity test applies to the 2D grids only");
    if (m.k != degree_of(kind)) throw std::invalid_argument("matrix degree does not match grid kind");
    const auto rep = validate_matrix(m);
    if (!rep.bad_row_sums.empty()) throw std::invalid_argument("matrix rows must sum to k");

    const size_t n = static_cast<size_t>(m.n);
    std::vector<std::vector<long long>> t(n, std::vector<long long>(n, 0));
    switch (kind) {
        case GridKind::square:
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) t[i][j] = m.rows[i][j];
            break;
        case GridKind::triangular:
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) t[i][j] = m.rows[i][j] + (i == j ? 2 : 0);
            break;
        case GridKind::hexagonal:
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    long long s = 0;
                    for (size_t r = 0; r < n; ++r)
                        s += static_cast<long long>(m.rows[i][r]) * m.rows[r][j];
                    t[i][j] = s - (i == j ? 1 : 0);
                }
            break;
        default: break;
    }
    return exact_determinant(std::move(t)) == 0;
}

}  // namespace latticeperfect
