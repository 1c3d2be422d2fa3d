#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "latticeperfect/coloring.hpp"
#include "latticeperfect/nonlinearity.hpp"
#include "latticeperfect/solver.hpp"

namespace latticeperfect {

// l-inf over interior vertices of | d sum_{j in N(i)} (u_j - u_i) + f(u_i) |
inline double stationary_residual(const ValueField& u, double d, const Nonlinearity& f) {
    const Patch& patch = *u.patch;
    double worst = 0.0;
    for (int v = 0; v < patch.vertex_count; ++v) {
        if (!patch.interior(v)) continue;
        double acc = 0.0;
        for (int32_t w : patch.raw_slots(v)) acc += u.values[static_cast<size_t>(w)] - u.values[static_cast<size_t>(v)];
        worst = std::max(worst, std::abs(d * acc + f.f(u.values[static_cast<size_t>(v)])));
    }
    return worst;
}

struct TrajectoryStats {
    ValueField final_field;
    double max_drift = 0.0;      // l-inf distance from the initial field
    double final_residual = 0.0;
    long long steps = 0;
    double dt_used = 0.0;
    bool diverged = false;
};

// Classical RK4 on the graph reaction-diffusion field; boundary vertices of
// open windows are held fixed. The step is shrunk to 1/(4 d k + L_f) when the
// requested dt exceeds that bound.
inline TrajectoryStats integrate(const ValueField& start, double d, const Nonlinearity& f, double T,
                                 double dt) {
    if (dt <= 0.0 || T <= 0.0) throw std::invalid_argument("integration needs positive T and dt");
    const Patch& patch = *start.patch;

    double lo = start.values.empty() ? 0.0 : start.values[0];
    double hi = lo;
    for (double x : start.values) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    const double lf = f.derivative_bound(lo - 0.5, hi + 0.5);
    const double dt_max = 1.0 / (4.0 * d * patch.k + lf);
    if (dt > dt_max) dt = dt_max;
    const long long steps = static_cast<long long>(std::ceil(T / dt));
    dt = T / static_cast<double>(steps);

    std::vector<double> u = start.values;
    std::vector<double> k1(u.size()), k2(u.size()), k3(u.size()), k4(u.size()), tmp(u.size());
    auto rhs = [&](const std::vector<double>& state, std::vector<double>& out) {
        for (int v = 0; v < patch.vertex_count; ++v) {
            if (!patch.interior(v)) {
                out[static_cast<size_t>(v)] = 0.0;  // frozen boundary
                continue;
            }
            double acc = 0.0;
            for (int32_t w : patch.raw_slots(v)) acc += state[static_cast<size_t>(w)] - state[static_cast<size_t>(v)];
            out[static_cast<size_t>(v)] = d * acc + f.f(state[static_cast<size_t>(v)]);
        }
    };

    TrajectoryStats stats;
    stats.dt_used = dt;
    for (long long s = 0; s < steps; ++s) {
        rhs(u, k1);
        for (size_t i = 0; i < u.size(); ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
        rhs(tmp, k2);
        for (size_t i = 0; i < u.size(); ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
        rhs(tmp, k3);
        for (size_t i = 0; i < u.size(); ++i) tmp[i] = u[i] + dt * k3[i];
        rhs(tmp, k4);
        for (size_t i = 0; i < u.size(); ++i)
            u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        stats.steps = s + 1;
        double amax = 0.0;
        for (double x : u) amax = std::max(amax, std::abs(x));
        if (amax > 1e6) {
            stats.diverged = true;
            break;
        }
    }
    stats.max_drift = linf_dist(u, start.values);
    stats.final_field = ValueField{start.patch, std::move(u)};
    stats.final_residual = stationary_residual(stats.final_field, d, f);
    return stats;
}

enum class ProbeVerdict { returned, escaped, inconclusive };

inline std::string to_string(ProbeVerdict v) {
    switch (v) {
        case ProbeVerdict::returned: return "returned";
        case ProbeVerdict::escaped: return "escaped";
        case ProbeVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ProbeResult {
    ProbeVerdict verdict = ProbeVerdict::inconclusive;
    double max_final_distance = 0.0;
    int trials = 0;
};

// Empirical stability probe: integrate from randomized perturbations of a
// stationary field. Returned = every trial lands within 10*eps with a reduced
// residual; escaped = some trial leaves the 0.1 ball.
inline ProbeResult perturb_relax(const ValueField& base, double d, const Nonlinearity& f, double eps,
                                 int trials, double T, unsigned long long rng_seed = 0,
                                 double dt = 0.25) {
    if (stationary_residual(base, d, f) > 1e-8)
        throw std::invalid_argument("perturb_relax requires a stationary field");
    const Patch& patch = *base.patch;

    ProbeResult out;
    out.trials = trials;
    bool all_returned = true;
    for (int trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(rng_seed * 0x9e3779b97f4a7c15ull + static_cast<unsigned long long>(trial) + 1);
        std::uniform_real_distribution<double> dist(-eps, eps);
        ValueField perturbed{base.patch, base.values};
        for (int v = 0; v < patch.vertex_count; ++v)
            if (patch.interior(v)) perturbed.values[static_cast<size_t>(v)] += dist(rng);
        const double r0 = stationary_residual(perturbed, d, f);
        auto stats = integrate(perturbed, d, f, T, dt);
        const double dist_final = linf_dist(stats.final_field.values, base.values);
        out.max_final_distance = std::max(out.max_final_distance, dist_final);
        if (stats.diverged || dist_final > 0.1) {
            out.verdict = ProbeVerdict::escaped;
            return out;
        }
        if (!(dist_final <= 10.0 * eps && stats.final_residual < r0)) all_returned = false;
    }
    out.verdict = all_returned ? ProbeVerdict::returned : ProbeVerdict::inconclusive;
    return out;
}

struct TreeCounterexample {
    PatchPtr patch;
    ValueField field;
    double a = 0.0, b = 0.0, c = 0.0;
    std::array<double, 3> f_values{};  // f(a), f(b), f(c)
    Nonlinearity f = Nonlinearity::polynomial({0.0, 1.0});
};

namespace detail {

enum class TreeVal { A, B, C };

// spine value classes: a at +-n(n+9)/2, b right next to those, c in between
inline TreeVal spine_class(long long s) {
    const long long p = s < 0 ? -s : s;
    for (long long n = 0;; ++n) {
        const long long anchor = n * (n + 9) / 2;
        if (anchor > p + 1) return TreeVal::C;
        if (p == anchor) return TreeVal::A;
        if (p == anchor + 1 || p + 1 == anchor) return TreeVal::B;
    }
}

}  // namespace detail

// Three-valued stationary solution on the binary tree whose value coloring is
// not perfect with finitely many colors: islands of the third value along the
// spine grow without bound. The unique quadratic through (a,f(a)), (b,f(b)),
// (c,f(c)) makes the field stationary for d = 1.
inline TreeCounterexample tree_counterexample(double a, double b, int depth, int hang_depth = 3) {
    const double c = 2.0 * b - a;
    const double scale = 1.0 + std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (std::abs(a - b) < 1e-6 * scale || std::abs(a - c) < 1e-6 * scale || std::abs(b - c) < 1e-6 * scale)
        throw std::invalid_argument("triplet values must be pairwise distinct");
    if (depth < 1) throw std::invalid_argument("depth must be positive");

    TreeCounterexample out;
    out.a = a;
    out.b = b;
    out.c = c;
    const double fa = 2.0 * a - 2.0 * b;
    const double fb = 3.0 * b - a - 2.0 * c;
    const double fc = 2.0 * c - 2.0 * b;
    out.f_values = {fa, fb, fc};

    // quadratic Lagrange interpolation through the three point-value pairs
    {
        const double l0 = fa / ((a - b) * (a - c));
        const double l1 = fb / ((b - a) * (b - c));
        const double l2 = fc / ((c - a) * (c - b));
        const double c2 = l0 + l1 + l2;
        const double c1 = -(l0 * (b + c) + l1 * (a + c) + l2 * (a + b));
        const double c0 = l0 * b * c + l1 * a * c + l2 * a * b;
        out.f = Nonlinearity::polynomial({c0, c1, c2});
    }

    auto patch = build_patch(GridKind::binary_tree, {depth, hang_depth}, {});
    const int S = depth;
    auto val_of = [&](detail::TreeVal t) { return t == detail::TreeVal::A ? a : (t == detail::TreeVal::B ? b : c); };
    // neighbor-value sums forced by stationarity: S(a)=a+2b, S(b)=a+2c, S(c)=2b+c
    auto rowsum_of = [&](detail::TreeVal t) {
        return t == detail::TreeVal::A ? a + 2.0 * b : (t == detail::TreeVal::B ? a + 2.0 * c : 2.0 * b + c);
    };
    auto class_of_value = [&](double x) {
        if (std::abs(x - a) < 1e-9 * (1.0 + std::abs(a))) return detail::TreeVal::A;
        if (std::abs(x - b) < 1e-9 * (1.0 + std::abs(b))) return detail::TreeVal::B;
        if (std::abs(x - c) < 1e-9 * (1.0 + std::abs(c))) return detail::TreeVal::C;
        throw std::logic_error("tree extension left the value set");
    };

    std::vector<detail::TreeVal> cls(static_cast<size_t>(patch->vertex_count), detail::TreeVal::C);
    std::vector<char> known(static_cast<size_t>(patch->vertex_count), 0);
    for (int v = 0; v <= 2 * S; ++v) {
        cls[static_cast<size_t>(v)] = detail::spine_class(patch->spine_coord[static_cast<size_t>(v)]);
        known[static_cast<size_t>(v)] = 1;
    }
    // spine children: row sum minus the two (possibly virtual) spine neighbors
    for (int v = 0; v <= 2 * S; ++v) {
        const long long s = patch->spine_coord[static_cast<size_t>(v)];
        const double left = val_of(detail::spine_class(s - 1));
        const double right = val_of(detail::spine_class(s + 1));
        const int child = patch->raw_slots(v)[2];
        if (child < 0) continue;
        cls[static_cast<size_t>(child)] = class_of_value(rowsum_of(cls[static_cast<size_t>(v)]) - left - right);
        known[static_cast<size_t>(child)] = 1;
    }
    // deeper levels: children pair decided by (own class, parent class);
    // the two ambiguous cases (a|a) and (c|c) take the {b,b} branch
    auto child_pair = [&](detail::TreeVal own, detail::TreeVal par) -> std::array<detail::TreeVal, 2> {
        using TV = detail::TreeVal;
        switch (own) {
            case TV::A:
                if (par == TV::A) return {TV::B, TV::B};
                if (par == TV::B) return {TV::A, TV::B};
                return {TV::A, TV::A};
            case TV::B:
                if (par == TV::A) return {TV::C, TV::C};
                if (par == TV::B) return {TV::B, TV::C};
                return {TV::A, TV::C};
            case TV::C:
                if (par == TV::A) return {TV::C, TV::C};
                if (par == TV::B) return {TV::B, TV::C};
                return {TV::B, TV::B};
        }
        return {TV::C, TV::C};
    };
    for (int v = 2 * S + 1; v < patch->vertex_count; ++v) {
        if (!known[static_cast<size_t>(v)]) throw std::logic_error("tree fill order broken");
        const auto slots = patch->raw_slots(v);
        if (slots[1] < 0) continue;  // leaf
        const int par = patch->parent[static_cast<size_t>(v)];
        const auto pair = child_pair(cls[static_cast<size_t>(v)], cls[static_cast<size_t>(par)]);
        cls[static_cast<size_t>(slots[1])] = pair[0];
        cls[static_cast<size_t>(slots[2])] = pair[1];
        known[static_cast<size_t>(slots[1])] = 1;
        known[static_cast<size_t>(slots[2])] = 1;
    }

    ValueField field;
    field.patch = patch;
    field.values.resize(static_cast<size_t>(patch->vertex_count));
    for (int v = 0; v < patch->vertex_count; ++v) field.values[static_cast<size_t>(v)] = val_of(cls[static_cast<size_t>(v)]);
    out.patch = patch;
    out.field = std::move(field);
    return out;
}

}  // namespace latticeperfect
