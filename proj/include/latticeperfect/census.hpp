#pragma once

#include <string>

#include "latticeperfect/grid.hpp"

namespace latticeperfect {

// Number of non-equivalent two-color perfect colorings with diagonal (m11,m22),
// as established for the square, triangular and hexagonal grids.
enum class CensusVerdict { nonexistent, unique, two_nonequivalent, uncountable, monochromatic_only };

inline std::string to_string(CensusVerdict v) {
    switch (v) {
        case CensusVerdict::nonexistent: return "nonexistent";
        case CensusVerdict::unique: return "unique";
        case CensusVerdict::two_nonequivalent: return "two_nonequivalent";
        case CensusVerdict::uncountable: return "uncountable";
        case CensusVerdict::monochromatic_only: return "monochromatic_only";
    }
    return "?";
}

namespace detail {

// table entries for m11 <= m22 (symmetric in the pair)
// N = nonexistent, U = unique, T = two non-equivalent, I = uncountable
inline char census_square(int a, int b) {  // 0 <= a <= b <= 3
    static constexpr char t[4][4] = {
        {'U', 'N', 'U', 'U'},
        {0, 'U', 'U', 'I'},
        {0, 0, 'I', 'T'},
        {0, 0, 0, 'U'},
    };
    return t[a][b];
}

inline char census_triangular(int a, int b) {  // 0 <= a <= b <= 5
    static constexpr char t[6][6] = {
        {'N', 'N', 'N', 'U', 'I', 'U'},
        {0, 'N', 'N', 'I', 'U', 'N'},
        {0, 0, 'I', 'T', 'T', 'N'},
        {0, 0, 0, 'U', 'N', 'N'},
        {0, 0, 0, 0, 'U', 'N'},
        {0, 0, 0, 0, 0, 'N'},
    };
    return t[a][b];
}

inline char census_hexagonal(int a, int b) {  // 0 <= a <= b <= 2
    static constexpr char t[3][3] = {
        {'U', 'N', 'I'},
        {0, 'I', 'U'},
        {0, 0, 'I'},
    };
    return t[a][b];
}

}  // namespace detail

inline CensusVerdict two_color_census(GridKind kind, int m11, int m22) {
    if (kind != GridKind::square && kind != GridKind::triangular && kind != GridKind::hexagonal)
        throw std::invalid_argument("census covers square, triangular and hexagonal grids only");
    const int k = degree_of(kind);
    if (m11 < 0 || m22 < 0 || m11 > k || m22 > k)
        throw std::invalid_argument("census parameters must lie in 0..k");
    if (m11 == k || m22 == k) return CensusVerdict::monochromatic_only;

    const int a = std::min(m11, m22), b = std::max(m11, m22);
    char e = 0;
    switch (kind) {
        case GridKind::square: e = detail::census_square(a, b); break;
        case GridKind::triangular: e = detail::census_triangular(a, b); break;
        case GridKind::hexagonal: e = detail::census_hexagonal(a, b); break;
        default: break;
    }
    switch (e) {
        case 'N': return CensusVerdict::nonexistent;
        case 'U': return CensusVerdict::unique;
        case 'T': return CensusVerdict::two_nonequivalent;
        case 'I': return CensusVerdict::uncountable;
    }
    throw std::logic_error("census table hole");
}

}  // namespace latticeperfect
