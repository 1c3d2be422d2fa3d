#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace latticeperfect {

using Matrix = std::vector<std::vector<double>>;

inline Matrix make_matrix(size_t n, double diag = 0.0) {
    Matrix m(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) m[i][i] = diag;
    return m;
}

// LU with partial pivoting; solves in place. Returns false on (numerical)
// singularity.
inline bool lu_solve(Matrix a, std::vector<double> b, std::vector<double>& x) {
    const size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("lu_solve: size mismatch");
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t i = col + 1; i < n; ++i)
            if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
        if (std::abs(a[piv][col]) < 1e-300) return false;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (size_t i = col + 1; i < n; ++i) {
            const double f = a[i][col] / a[col][col];
            if (f == 0.0) continue;
            for (size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
            b[i] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (size_t j = ii + 1; j < n; ++j) s -= a[ii][j] * x[j];
        x[ii] = s / a[ii][ii];
    }
    return true;
}

namespace detail {

inline double sign_like(double magnitude, double carrier) {
    return carrier >= 0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// in-place Householder reduction to upper Hessenberg form
inline void hessenberg(Matrix& h) {
    const size_t n = h.size();
    for (size_t col = 0; col + 2 < n; ++col) {
        double scale = 0.0;
        for (size_t i = col + 1; i < n; ++i) scale += std::abs(h[i][col]);
        if (scale == 0.0) continue;
        std::vector<double> v(n, 0.0);
        double sigma = 0.0;
        for (size_t i = col + 1; i < n; ++i) {
            v[i] = h[i][col] / scale;
            sigma += v[i] * v[i];
        }
        double alpha = -sign_like(std::sqrt(sigma), v[col + 1]);
        const double beta = sigma - alpha * v[col + 1];
        if (beta == 0.0) continue;
        v[col + 1] -= alpha;
        // H <- P H P with P = I - v v^T / beta
        for (size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (size_t i = col + 1; i < n; ++i) s += v[i] * h[i][j];
            s /= beta;
            for (size_t i = col + 1; i < n; ++i) h[i][j] -= s * v[i];
        }
        for (size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (size_t j = col + 1; j < n; ++j) s += h[i][j] * v[j];
            s /= beta;
            for (size_t j = col + 1; j < n; ++j) h[i][j] -= s * v[j];
        }
        h[col + 1][col] = alpha * scale;
        for (size_t i = col + 2; i < n; ++i) h[i][col] = 0.0;
    }
}

}  // namespace detail

// Eigenvalues of a dense real matrix via Hessenberg reduction followed by the
// shifted double-step QR iteration (eigenvalues only, no Schur vectors).
inline std::vector<std::complex<double>> eigenvalues(Matrix a) {
    const size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("eigenvalues: square matrix required");
    std::vector<std::complex<double>> out;
    if (n == 0) return out;
    if (n == 1) return {std::complex<double>(a[0][0], 0.0)};

    detail::hessenberg(a);
    Matrix& h = a;

    double norm = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = (i > 0 ? i - 1 : 0); j < n; ++j) norm += std::abs(h[i][j]);
    const double eps = 2.22e-16;

    int en = static_cast<int>(n) - 1;
    double t = 0.0;
    int itn = 60 * static_cast<int>(n);

    while (en >= 0) {
        int its = 0;
        int na = en - 1;
        while (true) {
            int l = en;
            for (; l > 0; --l) {
                double s = std::abs(h[l - 1][l - 1]) + std::abs(h[l][l]);
                if (s == 0.0) s = norm;
                if (std::abs(h[l][l - 1]) <= eps * s) break;
            }
            double x = h[en][en];
            if (l == en) {
                out.emplace_back(x + t, 0.0);
                --en;
                break;
            }
            double y = h[na][na];
            double w = h[en][na] * h[na][en];
            if (l == na) {
                double p = (y - x) / 2.0;
                double q = p * p + w;
                double zz = std::sqrt(std::abs(q));
                x += t;
                if (q >= 0.0) {
                    zz = p + detail::sign_like(zz, p);
                    out.emplace_back(x + zz, 0.0);
                    out.emplace_back(zz != 0.0 ? x - w / zz : x + zz, 0.0);
                } else {
                    out.emplace_back(x + p, zz);
                    out.emplace_back(x + p, -zz);
                }
                en -= 2;
                break;
            }
            if (itn == 0) throw std::runtime_error("QR eigenvalue iteration failed to converge");
            if (its == 10 || its == 20) {
                // exceptional shift
                t += x;
                for (int i = 0; i <= en; ++i) h[i][i] -= x;
                double s = std::abs(h[en][na]) + std::abs(h[na][na - 1]);
                x = y = 0.75 * s;
                w = -0.4375 * s * s;
            }
            ++its;
            --itn;

            // two consecutive small subdiagonals
            int m = en - 2;
            double p = 0.0, q = 0.0, r = 0.0;
            for (; m >= l; --m) {
                const double zz = h[m][m];
                const double rr = x - zz;
                const double ss = y - zz;
                p = (rr * ss - w) / h[m + 1][m] + h[m][m + 1];
                q = h[m + 1][m + 1] - zz - rr - ss;
                r = h[m + 2][m + 1];
                const double sc = std::abs(p) + std::abs(q) + std::abs(r);
                p /= sc;
                q /= sc;
                r /= sc;
                if (m == l) break;
                const double tst1 = std::abs(p) * (std::abs(h[m - 1][m - 1]) + std::abs(zz) + std::abs(h[m + 1][m + 1]));
                const double tst2 = tst1 + std::abs(h[m][m - 1]) * (std::abs(q) + std::abs(r));
                if (tst2 == tst1) break;
            }
            for (int i = m + 2; i <= en; ++i) {
                h[i][i - 2] = 0.0;
                if (i > m + 2) h[i][i - 3] = 0.0;
            }

            // double QR sweep over rows l..en
            for (int kk = m; kk <= na; ++kk) {
                const bool notlast = kk != na;
                if (kk != m) {
                    p = h[kk][kk - 1];
                    q = h[kk + 1][kk - 1];
                    r = notlast ? h[kk + 2][kk - 1] : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x == 0.0) continue;
                    p /= x;
                    q /= x;
                    r /= x;
                }
                double s = detail::sign_like(std::sqrt(p * p + q * q + r * r), p);
                if (kk != m)
                    h[kk][kk - 1] = -s * x;
                else if (l != m)
                    h[kk][kk - 1] = -h[kk][kk - 1];
                p += s;
                x = p / s;
                y = q / s;
                double zz = r / s;
                q /= p;
                r /= p;
                if (notlast) {
                    for (int j = kk; j < static_cast<int>(n); ++j) {
                        double pp = h[kk][j] + q * h[kk + 1][j] + r * h[kk + 2][j];
                        h[kk][j] -= pp * x;
                        h[kk + 1][j] -= pp * y;
                        h[kk + 2][j] -= pp * zz;
                    }
                    const int upper = std::min(en, kk + 3);
                    for (int i = 0; i <= upper; ++i) {
                        double pp = x * h[i][kk] + y * h[i][kk + 1] + zz * h[i][kk + 2];
                        h[i][kk] -= pp;
                        h[i][kk + 1] -= pp * q;
                        h[i][kk + 2] -= pp * r;
                    }
                } else {
                    for (int j = kk; j < static_cast<int>(n); ++j) {
                        double pp = h[kk][j] + q * h[kk + 1][j];
                        h[kk][j] -= pp * x;
                        h[kk + 1][j] -= pp * y;
                    }
                    const int upper = std::min(en, kk + 3);
                    for (int i = 0; i <= upper; ++i) {
                        double pp = x * h[i][kk] + y * h[i][kk + 1];
                        h[i][kk] -= pp;
                        h[i][kk + 1] -= pp * q;
                    }
                }
            }
        }
    }
    return out;
}

inline double spectral_abscissa(const std::vector<std::complex<double>>& eigs) {
    double m = -1e300;
    for (const auto& e : eigs) m = std::max(m, e.real());
    return m;
}

}  // namespace latticeperfect
