#pragma once

#include <algorithm>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "latticeperfect/coloring.hpp"
#include "latticeperfect/linalg.hpp"
#include "latticeperfect/nonlinearity.hpp"

namespace latticeperfect {

struct SolverConfig {
    double d = 0.01;
    double newton_tol = 1e-12;
    int max_iter = 100;
    double dedup_tol = 1e-8;
    int random_seeds = 256;
    unsigned long long rng_seed = 0;
    double stab_tol = 1e-9;
};

enum class StabilityVerdict { stable, unstable, marginal };

inline std::string to_string(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::stable: return "stable";
        case StabilityVerdict::unstable: return "unstable";
        case StabilityVerdict::marginal: return "marginal";
    }
    return "?";
}

struct SolutionRecord {
    std::vector<double> v;
    double residual_norm = 0.0;      // l-inf of the stationary residual
    double spectral_abscissa = 0.0;  // max real part of the Jacobian spectrum
    StabilityVerdict verdict = StabilityVerdict::marginal;
};

struct SolutionSet {
    SolverConfig config;
    std::vector<SolutionRecord> records;  // sorted lexicographically by v
    std::string completeness_note;
};

// r = d(Mv - kv) + F(v)
inline std::vector<double> residual(const ColoringMatrix& m, double d, const Nonlinearity& f,
                                    const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != m.n) throw std::invalid_argument("residual: dimension mismatch");
    std::vector<double> r(v.size());
    for (int i = 0; i < m.n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < m.n; ++j) acc += m.at(i, j) * v[static_cast<size_t>(j)];
        r[static_cast<size_t>(i)] = d * (acc - m.k * v[static_cast<size_t>(i)]) + f.f(v[static_cast<size_t>(i)]);
    }
    return r;
}

// J = d(M - kI) + diag(f'(v_i))
inline Matrix jacobian(const ColoringMatrix& m, double d, const Nonlinearity& f,
                       const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != m.n) throw std::invalid_argument("jacobian: dimension mismatch");
    Matrix j = make_matrix(static_cast<size_t>(m.n));
    for (int i = 0; i < m.n; ++i) {
        for (int jj = 0; jj < m.n; ++jj) j[static_cast<size_t>(i)][static_cast<size_t>(jj)] = d * m.at(i, jj);
        j[static_cast<size_t>(i)][static_cast<size_t>(i)] += -d * m.k + f.df(v[static_cast<size_t>(i)]);
    }
    return j;
}

inline double linf(const std::vector<double>& r) {
    double m = 0.0;
    for (double x : r) m = std::max(m, std::abs(x));
    return m;
}

inline double linf_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

namespace detail {

// damped Newton; returns true when the l-inf residual reaches tol
inline bool newton_polish(const ColoringMatrix& m, double d, const Nonlinearity& f,
                          std::vector<double>& v, double tol, int max_iter) {
    double rn = linf(residual(m, d, f, v));
    for (int it = 0; it < max_iter; ++it) {
        if (rn <= tol) return true;
        auto r = residual(m, d, f, v);
        std::vector<double> rhs(r.size());
        for (size_t i = 0; i < r.size(); ++i) rhs[i] = -r[i];
        std::vector<double> dv;
        if (!lu_solve(jacobian(m, d, f, v), rhs, dv)) return false;
        double alpha = 1.0;
        bool moved = false;
        for (int half = 0; half < 40; ++half) {
            std::vector<double> trial(v.size());
            for (size_t i = 0; i < v.size(); ++i) trial[i] = v[i] + alpha * dv[i];
            const double tn = linf(residual(m, d, f, trial));
            if (tn < rn) {
                v = std::move(trial);
                rn = tn;
                moved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!moved) return rn <= tol;
    }
    return rn <= tol;
}

inline int worker_count() {
    const char* env = std::getenv("LATTICEPERFECT_THREADS");
    if (!env) return 1;
    const int v = std::atoi(env);
    return v > 0 ? v : 1;
}

}  // namespace detail

inline SolutionRecord stability(const ColoringMatrix& m, double d, const Nonlinearity& f,
                                std::vector<double> v, double stab_tol = 1e-9) {
    SolutionRecord rec;
    rec.residual_norm = linf(residual(m, d, f, v));
    rec.spectral_abscissa = spectral_abscissa(eigenvalues(jacobian(m, d, f, v)));
    if (rec.spectral_abscissa < -stab_tol)
        rec.verdict = StabilityVerdict::stable;
    else if (rec.spectral_abscissa > stab_tol)
        rec.verdict = StabilityVerdict::unstable;
    else
        rec.verdict = StabilityVerdict::marginal;
    rec.v = std::move(v);
    return rec;
}

// Multistart Newton enumeration: structured seeds on the grid of f-root
// tuples plus random seeds in the bounding box, deduplicated and sorted.
inline SolutionSet solve_all(const ColoringMatrix& m, const Nonlinearity& f, const SolverConfig& cfg) {
    if (cfg.d <= 0.0) throw std::invalid_argument("diffusion parameter must be positive");
    const int n = m.n;
    const auto roots = f.real_roots();

    std::vector<std::vector<double>> seeds;
    bool structured = !roots.empty();
    if (structured) {
        double total = 1.0;
        for (int i = 0; i < n; ++i) total *= static_cast<double>(roots.size());
        if (total > 200000.0) structured = false;
    }
    if (structured) {
        const size_t p = roots.size();
        std::vector<size_t> idx(static_cast<size_t>(n), 0);
        while (true) {
            std::vector<double> s(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) s[static_cast<size_t>(i)] = roots[idx[static_cast<size_t>(i)]];
            seeds.push_back(std::move(s));
            int pos = 0;
            while (pos < n && ++idx[static_cast<size_t>(pos)] == p) idx[static_cast<size_t>(pos++)] = 0;
            if (pos == n) break;
        }
    }
    const size_t structured_count = seeds.size();

    double lo = -1.5, hi = 1.5;
    if (!roots.empty()) {
        lo = roots.front() - 0.5;
        hi = roots.back() + 0.5;
    }
    std::mt19937_64 rng(cfg.rng_seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    for (int s = 0; s < cfg.random_seeds; ++s) {
        std::vector<double> seed(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) seed[static_cast<size_t>(i)] = dist(rng);
        seeds.push_back(std::move(seed));
    }

    std::vector<char> converged(seeds.size(), 0);
    std::vector<std::vector<double>> results(seeds.size());
    auto run_range = [&](size_t a, size_t b) {
        for (size_t s = a; s < b; ++s) {
            std::vector<double> v = seeds[s];
            if (detail::newton_polish(m, cfg.d, f, v, cfg.newton_tol, cfg.max_iter)) {
                converged[s] = 1;
                results[s] = std::move(v);
            }
        }
    };
    const int workers = detail::worker_count();
    if (workers <= 1 || seeds.size() < 2 * static_cast<size_t>(workers)) {
        run_range(0, seeds.size());
    } else {
        std::vector<std::thread> pool;
        const size_t chunk = (seeds.size() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const size_t a = std::min(seeds.size(), static_cast<size_t>(w) * chunk);
            const size_t b = std::min(seeds.size(), a + chunk);
            if (a < b) pool.emplace_back(run_range, a, b);
        }
        for (auto& th : pool) th.join();
    }

    SolutionSet out;
    out.config = cfg;
    std::vector<std::vector<double>> unique;
    for (size_t s = 0; s < seeds.size(); ++s) {
        if (!converged[s]) continue;
        bool dup = false;
        for (const auto& u : unique)
            if (linf_dist(u, results[s]) <= cfg.dedup_tol) {
                dup = true;
                break;
            }
        if (!dup) unique.push_back(results[s]);
    }
    std::sort(unique.begin(), unique.end());
    for (auto& v : unique) out.records.push_back(stability(m, cfg.d, f, std::move(v), cfg.stab_tol));
    out.completeness_note =
        "multistart Newton enumeration: " + std::to_string(structured_count) + " structured + " +
        std::to_string(cfg.random_seeds) +
        " random seeds; heuristic away from the anti-continuum regime d -> 0";
    return out;
}

// u_i = v[Gamma(i)]; requires the coloring to verify against m.
inline ValueField lift_solution(const Coloring& coloring, const ColoringMatrix& m,
                                const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != m.n) throw std::invalid_argument("solution length differs from color count");
    const auto ver = verify_perfect(coloring, m);
    if (!ver.ok) throw std::invalid_argument("coloring does not verify against the matrix");
    ValueField out;
    out.patch = coloring.patch;
    out.values.resize(static_cast<size_t>(coloring.patch->vertex_count));
    for (int i = 0; i < coloring.patch->vertex_count; ++i)
        out.values[static_cast<size_t>(i)] = v[static_cast<size_t>(coloring.color(i) - 1)];
    return out;
}

// (v2)_i = v1[phi(i)]; transports a solution of the merged system to the fine
// one. The coarse residual is checked against the merged matrix first.
inline std::vector<double> lift_via_merger(const ColoringMatrix& fine, const MergerMap& phi,
                                           const std::vector<double>& v1, double d,
                                           const Nonlinearity& f, double tol = 1e-10) {
    auto merged = merge_matrix(fine, phi);
    if (!merged.ok()) throw std::invalid_argument("merger is incompatible with the matrix");
    if (static_cast<int>(v1.size()) != phi.l) throw std::invalid_argument("coarse solution length mismatch");
    if (linf(residual(*merged.matrix, d, f, v1)) > tol)
        throw std::invalid_argument("coarse vector does not solve the merged system");
    std::vector<double> v2(static_cast<size_t>(phi.n));
    for (int i = 0; i < phi.n; ++i) v2[static_cast<size_t>(i)] = v1[static_cast<size_t>(phi(i + 1) - 1)];
    return v2;
}

struct SweepPoint {
    double d = 0.0;
    int count = 0;
};

struct SweepBracket {
    double lo = 0.0;  // d with the lower-d count
    double hi = 0.0;  // d with the higher-d count
    int count_lo = 0;
    int count_hi = 0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::vector<SweepBracket> brackets;  // refined change loci when requested
};

// Solution counts across a d-grid; optional bisection narrows each count
// change to a bracket of width <= 1e-3.
inline SweepResult count_sweep(const ColoringMatrix& m, const Nonlinearity& f,
                               std::vector<double> d_values, SolverConfig cfg,
                               bool refine_brackets = false) {
    std::sort(d_values.begin(), d_values.end());
    SweepResult out;
    auto count_at = [&](double d) {
        cfg.d = d;
        return static_cast<int>(solve_all(m, f, cfg).records.size());
    };
    for (double d : d_values) out.points.push_back({d, count_at(d)});
    for (size_t i = 0; i + 1 < out.points.size(); ++i) {
        if (out.points[i].count == out.points[i + 1].count) continue;
        SweepBracket br{out.points[i].d, out.points[i + 1].d, out.points[i].count,
                        out.points[i + 1].count};
        if (refine_brackets) {
            while (br.hi - br.lo > 1e-3) {
                const double mid = 0.5 * (br.lo + br.hi);
                const int cmid = count_at(mid);
                if (cmid == br.count_lo)
                    br.lo = mid;
                else
                    br.hi = mid;
                if (cmid != br.count_lo) br.count_hi = cmid;
            }
        }
        out.brackets.push_back(br);
    }
    return out;
}

}  // namespace latticeperfect
