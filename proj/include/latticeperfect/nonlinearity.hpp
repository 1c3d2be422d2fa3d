#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "latticeperfect/linalg.hpp"

namespace latticeperfect {

// Scalar reaction term, stored as polynomial coefficients in ascending degree.
// nagumo(a) is the bistable cubic s(1-s)(s-a) with 0 < a < 1.
struct Nonlinearity {
    std::vector<double> coeffs;
    std::optional<double> nagumo_a;

    static Nonlinearity nagumo(double a) {
        if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("nagumo detuning requires 0 < a < 1");
        // s(1-s)(s-a) = -s^3 + (1+a)s^2 - a s
        Nonlinearity f;
        f.coeffs = {0.0, -a, 1.0 + a, -1.0};
        f.nagumo_a = a;
        return f;
    }

    static Nonlinearity polynomial(std::vector<double> c) {
        while (c.size() > 1 && c.back() == 0.0) c.pop_back();
        if (c.size() < 2) throw std::invalid_argument("polynomial reaction must have degree >= 1");
        Nonlinearity f;
        f.coeffs = std::move(c);
        return f;
    }

    double f(double s) const {
        double acc = 0.0;
        for (size_t i = coeffs.size(); i-- > 0;) acc = acc * s + coeffs[i];
        return acc;
    }

    double df(double s) const {
        double acc = 0.0;
        for (size_t i = coeffs.size(); i-- > 1;) acc = acc * s + coeffs[i] * static_cast<double>(i);
        return acc;
    }

    // Real roots, ascending, deduplicated. Nagumo roots are exact by
    // construction; general polynomials go through the companion matrix with a
    // Newton polish.
    std::vector<double> real_roots() const {
        if (nagumo_a) return {0.0, *nagumo_a, 1.0};
        std::vector<double> c = coeffs;
        while (c.size() > 1 && std::abs(c.back()) < 1e-300) c.pop_back();
        const size_t deg = c.size() - 1;
        if (deg == 0) return {};
        Matrix comp = make_matrix(deg);
        for (size_t i = 0; i + 1 < deg; ++i) comp[i + 1][i] = 1.0;
        for (size_t i = 0; i < deg; ++i) comp[i][deg - 1] = -c[i] / c[deg];
        auto eigs = eigenvalues(comp);

        double scale = 0.0;
        for (double x : c) scale = std::max(scale, std::abs(x));
        std::vector<double> roots;
        for (const auto& e : eigs) {
            if (std::abs(e.imag()) > 1e-8 * std::max(1.0, std::abs(e.real()))) continue;
            double r = e.real();
            for (int it = 0; it < 50; ++it) {
                const double fr = f(r), dfr = df(r);
                if (std::abs(dfr) < 1e-300) break;
                const double step = fr / dfr;
                r -= step;
                if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(r))) break;
            }
            if (std::abs(f(r)) > 1e-9 * std::max(1.0, scale)) continue;
            roots.push_back(r);
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end(),
                                [](double a, double b) { return std::abs(a - b) < 1e-10; }),
                    roots.end());
        return roots;
    }

    // crude but safe bound on |f'| over [lo, hi] for explicit step-size control
    double derivative_bound(double lo, double hi) const {
        if (lo > hi) std::swap(lo, hi);
        double m = 0.0;
        const int samples = 512;
        for (int i = 0; i <= samples; ++i) {
            const double s = lo + (hi - lo) * i / samples;
            m = std::max(m, std::abs(df(s)));
        }
        return 1.5 * m + 1e-12;
    }
};

}  // namespace latticeperfect
