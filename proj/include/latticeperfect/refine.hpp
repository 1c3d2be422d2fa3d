#pragma once

#include <map>
#include <optional>
#include <vector>

#include "latticeperfect/coloring.hpp"

namespace latticeperfect {

struct RefinementResult {
    std::vector<int> class_of;         // 1-based class index per vertex
    int interior_class_count = 0;      // classes made of interior vertices
    int total_class_count = 0;         // including frozen boundary classes
    bool stabilized = false;
    std::optional<ColoringMatrix> induced;  // present when the interior is closed

    // class coloring usable with verify_perfect / extract_matrix
    Coloring as_coloring(PatchPtr patch) const {
        return Coloring{std::move(patch), total_class_count, class_of};
    }
};

// Coarsest equitable refinement of the color classes: interior classes split
// by the multiset of neighbor classes until stable. Boundary vertices sit in
// frozen per-color classes that can split interior classes but never change
// themselves.
inline RefinementResult refine_partition(const Coloring& start) {
    const Patch& patch = *start.patch;
    const int nv = patch.vertex_count;

    std::vector<int> cls(static_cast<size_t>(nv));
    std::vector<char> frozen_class;  // indexed by class id
    {
        std::map<std::pair<int, int>, int> first;  // (frozen?, color) -> id
        for (int v = 0; v < nv; ++v) {
            const std::pair<int, int> key{patch.interior(v) ? 0 : 1, start.color(v)};
            auto it = first.find(key);
            if (it == first.end()) {
                const int id = static_cast<int>(first.size());
                first.emplace(key, id);
                frozen_class.push_back(key.first ? 1 : 0);
                cls[static_cast<size_t>(v)] = id;
            } else {
                cls[static_cast<size_t>(v)] = it->second;
            }
        }
    }

    int round = 0;
    for (; round <= nv + 1; ++round) {
        // signature of an interior vertex: (current class, sorted neighbor classes)
        std::map<std::pair<int, std::vector<int>>, int> sig_id;
        std::map<int, int> frozen_id;  // old frozen class -> new id (assigned after)
        std::vector<int> next(static_cast<size_t>(nv), -1);
        std::vector<char> next_frozen;

        for (int v = 0; v < nv; ++v) {
            if (!patch.interior(v)) continue;
            std::vector<int> nb;
            for (int32_t u : patch.raw_slots(v))
                if (u >= 0) nb.push_back(cls[static_cast<size_t>(u)]);
            std::sort(nb.begin(), nb.end());
            const std::pair<int, std::vector<int>> key{cls[static_cast<size_t>(v)], std::move(nb)};
            auto it = sig_id.find(key);
            if (it == sig_id.end()) {
                const int id = static_cast<int>(sig_id.size());
                sig_id.emplace(key, id);
                next_frozen.push_back(0);
                next[static_cast<size_t>(v)] = id;
            } else {
                next[static_cast<size_t>(v)] = it->second;
            }
        }
        const int interior_classes = static_cast<int>(sig_id.size());
        for (int v = 0; v < nv; ++v) {
            if (patch.interior(v)) continue;
            auto it = frozen_id.find(cls[static_cast<size_t>(v)]);
            if (it == frozen_id.end()) {
                const int id = interior_classes + static_cast<int>(frozen_id.size());
                frozen_id.emplace(cls[static_cast<size_t>(v)], id);
                next_frozen.push_back(1);
                next[static_cast<size_t>(v)] = id;
            } else {
                next[static_cast<size_t>(v)] = it->second;
            }
        }

        const bool done = static_cast<int>(next_frozen.size()) == static_cast<int>(frozen_class.size());
        cls = std::move(next);
        frozen_class = std::move(next_frozen);
        if (done) break;
    }

    RefinementResult res;
    res.stabilized = true;
    res.total_class_count = static_cast<int>(frozen_class.size());
    for (char f : frozen_class) res.interior_class_count += (f == 0);
    res.class_of.resize(static_cast<size_t>(nv));
    for (int v = 0; v < nv; ++v) res.class_of[static_cast<size_t>(v)] = cls[static_cast<size_t>(v)] + 1;

    bool closed = true;
    for (int v = 0; v < nv && closed; ++v) {
        if (!patch.interior(v)) continue;
        for (int32_t u : patch.raw_slots(v))
            if (u < 0 || !patch.interior(u)) closed = false;
    }
    if (closed && res.interior_class_count > 0) {
        const int p = res.interior_class_count;
        std::vector<std::vector<int>> rows(static_cast<size_t>(p));
        for (int v = 0; v < nv; ++v) {
            if (!patch.interior(v)) continue;
            const int i = cls[static_cast<size_t>(v)];
            if (!rows[static_cast<size_t>(i)].empty()) continue;
            std::vector<int> cnt(static_cast<size_t>(p), 0);
            for (int32_t u : patch.raw_slots(v)) ++cnt[static_cast<size_t>(cls[static_cast<size_t>(u)])];
            rows[static_cast<size_t>(i)] = std::move(cnt);
        }
        ColoringMatrix m;
        m.n = p;
        m.k = patch.k;
        m.rows = std::move(rows);
        res.induced = std::move(m);
    }
    return res;
}

inline RefinementResult refine_partition(const ValueField& field, double tol = kValueEqualTol) {
    return refine_partition(coloring_from_field(field, tol));
}

}  // namespace latticeperfect
