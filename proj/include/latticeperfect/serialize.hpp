#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latticeperfect/coloring.hpp"
#include "latticeperfect/grid.hpp"
#include "latticeperfect/solver.hpp"

namespace latticeperfect {

inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// file helpers and manifest
// ---------------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << bytes;
}

inline std::string fnv1a64_hex(const std::string& bytes) {
    unsigned long long h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

// Echo of the command invocation embedded in (or referenced by) every output.
struct RunManifest {
    std::string command;
    std::vector<std::string> args;
    unsigned long long seed = 0;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, digest

    void add_input(const std::string& path) { inputs.emplace_back(path, fnv1a64_hex(read_file(path))); }

    json to_json() const {
        json j;
        j["command"] = command;
        j["args"] = args;
        j["version"] = kToolVersion;
        j["seed"] = seed;
        json in = json::array();
        for (const auto& [p, d] : inputs) in.push_back({{"path", p}, {"fnv1a64", d}});
        j["inputs"] = in;
        return j;
    }
};

// ---------------------------------------------------------------------------
// matrices
// ---------------------------------------------------------------------------

inline json matrix_to_json(const ColoringMatrix& m) {
    return json{{"n", m.n}, {"k", m.k}, {"rows", m.rows}};
}

inline ColoringMatrix matrix_from_json(const json& j) {
    ColoringMatrix m;
    m.n = j.at("n").get<int>();
    m.k = j.at("k").get<int>();
    m.rows = j.at("rows").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(m.rows.size()) != m.n)
        throw std::invalid_argument("matrix rows do not match n");
    for (const auto& r : m.rows)
        if (static_cast<int>(r.size()) != m.n) throw std::invalid_argument("matrix is not square");
    return m;
}

// ---------------------------------------------------------------------------
// patches, colorings, fields
// ---------------------------------------------------------------------------

inline json grid_to_json(const Patch& p) {
    return json{{"kind", to_string(p.kind)}, {"dims", p.dims}, {"wrap", p.wrap}};
}

inline PatchPtr patch_from_json(const json& j) {
    return build_patch(grid_kind_from_string(j.at("kind").get<std::string>()),
                       j.at("dims").get<std::vector<int>>(), j.at("wrap").get<std::vector<bool>>());
}

inline json coloring_to_json(const Coloring& c) {
    return json{{"grid", grid_to_json(*c.patch)}, {"n", c.n}, {"colors", c.colors}};
}

inline Coloring coloring_from_json(const json& j) {
    auto patch = patch_from_json(j.at("grid"));
    auto colors = j.at("colors").get<std::vector<int>>();
    int n = 0;
    if (j.contains("n")) n = j.at("n").get<int>();
    for (int c : colors) n = std::max(n, c);
    return make_coloring(std::move(patch), n, std::move(colors));
}

inline json field_to_json(const ValueField& f) {
    return json{{"grid", grid_to_json(*f.patch)}, {"values", f.values}};
}

inline ValueField field_from_json(const json& j) {
    ValueField f;
    f.patch = patch_from_json(j.at("grid"));
    f.values = j.at("values").get<std::vector<double>>();
    if (static_cast<int>(f.values.size()) != f.patch->vertex_count)
        throw std::invalid_argument("field size does not match patch");
    return f;
}

inline MergerMap merger_from_json(const json& j) {
    std::vector<int> map;
    if (j.is_array())
        map = j.get<std::vector<int>>();
    else
        map = j.at("map").get<std::vector<int>>();
    const int n = static_cast<int>(map.size());
    return make_merger(n, std::move(map));
}

inline json merger_to_json(const MergerMap& phi) { return json{{"map", phi.map}}; }

// ---------------------------------------------------------------------------
// solver artifacts
// ---------------------------------------------------------------------------

inline json config_to_json(const SolverConfig& c) {
    return json{{"d", c.d},
                {"newton_tol", c.newton_tol},
                {"max_iter", c.max_iter},
                {"dedup_tol", c.dedup_tol},
                {"random_seeds", c.random_seeds},
                {"rng_seed", c.rng_seed},
                {"stab_tol", c.stab_tol}};
}

inline SolverConfig config_from_json(const json& j) {
    SolverConfig c;
    c.d = j.at("d").get<double>();
    c.newton_tol = j.at("newton_tol").get<double>();
    c.max_iter = j.at("max_iter").get<int>();
    c.dedup_tol = j.at("dedup_tol").get<double>();
    c.random_seeds = j.at("random_seeds").get<int>();
    c.rng_seed = j.at("rng_seed").get<unsigned long long>();
    c.stab_tol = j.at("stab_tol").get<double>();
    return c;
}

inline json solution_set_to_json(const SolutionSet& s) {
    json recs = json::array();
    for (const auto& r : s.records)
        recs.push_back({{"v", r.v},
                        {"residual", r.residual_norm},
                        {"abscissa", r.spectral_abscissa},
                        {"verdict", to_string(r.verdict)}});
    return json{{"config", config_to_json(s.config)},
                {"records", recs},
                {"completeness_note", s.completeness_note}};
}

inline SolutionSet solution_set_from_json(const json& j) {
    SolutionSet s;
    s.config = config_from_json(j.at("config"));
    s.completeness_note = j.at("completeness_note").get<std::string>();
    for (const auto& r : j.at("records")) {
        SolutionRecord rec;
        rec.v = r.at("v").get<std::vector<double>>();
        rec.residual_norm = r.at("residual").get<double>();
        rec.spectral_abscissa = r.at("abscissa").get<double>();
        const auto verdict = r.at("verdict").get<std::string>();
        rec.verdict = verdict == "stable" ? StabilityVerdict::stable
                      : verdict == "unstable" ? StabilityVerdict::unstable
                                              : StabilityVerdict::marginal;
        s.records.push_back(std::move(rec));
    }
    return s;
}

// stable serialization: 2-space indent, keys sorted by nlohmann's object order
inline std::string dump_output(json j, const RunManifest& manifest) {
    j["manifest"] = manifest.to_json();
    return j.dump(2) + "\n";
}

}  // namespace latticeperfect
