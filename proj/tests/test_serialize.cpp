#include <doctest.h>

#include <set>

#include "latticeperfect/generators.hpp"
#include "latticeperfect/render.hpp"
#include "latticeperfect/serialize.hpp"

using namespace latticeperfect;

TEST_CASE("matrix round trip is bit exact") {
    auto m = ColoringMatrix::from_rows({{0, 2, 2, 0}, {2, 0, 0, 2}, {2, 0, 0, 2}, {0, 2, 2, 0}}, 4);
    auto j = matrix_to_json(m);
    CHECK(matrix_from_json(j) == m);
    CHECK(json::parse(j.dump()) == j);
}

TEST_CASE("coloring round trip") {
    auto c = motif_tiling(GridKind::square, Motif{2, 2, {1, 2, 3, 4}}, 4, 4);
    auto j = coloring_to_json(c);
    auto back = coloring_from_json(j);
    CHECK(back.colors == c.colors);
    CHECK(back.patch->dims == c.patch->dims);
    CHECK(back.patch->kind == c.patch->kind);
    CHECK(coloring_to_json(back) == j);
}

TEST_CASE("field round trip keeps doubles exactly") {
    auto p = build_patch(GridKind::path, {4}, {true});
    ValueField f{p, {0.1, 1.0 / 3.0, -2.7182818284590452, 1e-17}};
    auto back = field_from_json(json::parse(field_to_json(f).dump()));
    CHECK(back.values == f.values);
}

TEST_CASE("solution set round trip") {
    SolverConfig cfg;
    cfg.d = 0.005;
    auto m = ColoringMatrix::from_rows({{0, 2}, {2, 0}}, 2);
    auto s = solve_all(m, Nonlinearity::nagumo(0.5), cfg);
    auto back = solution_set_from_json(json::parse(solution_set_to_json(s).dump()));
    REQUIRE(back.records.size() == s.records.size());
    for (size_t i = 0; i < s.records.size(); ++i) {
        CHECK(back.records[i].v == s.records[i].v);
        CHECK(back.records[i].residual_norm == s.records[i].residual_norm);
        CHECK(back.records[i].spectral_abscissa == s.records[i].spectral_abscissa);
        CHECK(back.records[i].verdict == s.records[i].verdict);
    }
}

TEST_CASE("merger parsing accepts bare arrays") {
    auto phi = merger_from_json(json::parse("[1,2,2,1]"));
    CHECK(phi.n == 4);
    CHECK(phi.l == 2);
    auto phi2 = merger_from_json(json::parse("{\"map\":[1,2,2,1]}"));
    CHECK(phi2.map == phi.map);
}

TEST_CASE("manifest embeds digests and version") {
    RunManifest man;
    man.command = "solve";
    man.args = {"--d", "0.005"};
    man.seed = 0;
    auto j = json::parse(dump_output(json{{"x", 1}}, man));
    CHECK(j.at("manifest").at("version") == kToolVersion);
    CHECK(j.at("manifest").at("command") == "solve");
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
}

TEST_CASE("ppm renderer emits P6 with palette colors") {
    auto p = build_patch(GridKind::square, {8, 8}, {true, true});
    std::vector<int> cols(64);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) cols[static_cast<size_t>(y * 8 + x)] = 1 + (x + y) % 2;
    auto c = make_coloring(p, 2, cols);
    auto ppm = render_coloring_ppm(c);
    CHECK(ppm.substr(0, 11) == "P6\n8 8\n255\n");
    REQUIRE(ppm.size() == 11 + 64 * 3);
    // (0,0) is color 1 = white, (1,0) color 2 = black
    CHECK(static_cast<unsigned char>(ppm[11]) == 255);
    CHECK(static_cast<unsigned char>(ppm[14]) == 0);

    ValueField f{p, std::vector<double>(64, 0.0)};
    f.values[1] = 1.0;
    auto gray = render_field_ppm(f);
    CHECK(gray.substr(0, 3) == "P6\n");

    auto svg = render_coloring_svg(c);
    CHECK(svg.find("<svg") == 0);

    auto tree = build_patch(GridKind::binary_tree, {2, 1}, {});
    CHECK_THROWS_AS(render_coloring_ppm(Coloring{tree, 1, std::vector<int>(static_cast<size_t>(tree->vertex_count), 1)}),
                    std::invalid_argument);
    auto txt = render_tree_text(*tree, std::vector<int>(static_cast<size_t>(tree->vertex_count), 7));
    CHECK(txt.find("spine -2: 7") == 0);
}

TEST_CASE("three-tone rendering uses three distinct palette colors") {
    auto four = motif_tiling(GridKind::square, Motif{2, 2, {1, 2, 3, 4}}, 4, 4);
    auto g1 = merge_coloring(four, make_merger(4, {1, 2, 3, 1}));
    auto ppm = render_coloring_ppm(g1);
    std::set<std::string> tones;
    for (size_t i = 11; i + 2 < ppm.size(); i += 3) tones.insert(ppm.substr(i, 3));
    CHECK(tones.size() == 3);
}
