// latticeperfect: construct, verify and analyze perfect colorings of regular
// lattices and the perfect stationary solutions they induce.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latticeperfect/census.hpp"
#include "latticeperfect/dynamics.hpp"
#include "latticeperfect/exact_det.hpp"
#include "latticeperfect/generators.hpp"
#include "latticeperfect/refine.hpp"
#include "latticeperfect/render.hpp"
#include "latticeperfect/serialize.hpp"

namespace lpf = latticeperfect;
using lpf::json;

namespace {

std::vector<std::string> g_argv;

lpf::RunManifest manifest_for(const std::string& command, unsigned long long seed,
                              const std::vector<std::string>& input_paths) {
    lpf::RunManifest man;
    man.command = command;
    man.args = g_argv;
    man.seed = seed;
    for (const auto& p : input_paths) man.add_input(p);
    return man;
}

lpf::ColoringMatrix load_matrix(const std::string& path) {
    return lpf::matrix_from_json(json::parse(lpf::read_file(path)));
}

lpf::Coloring load_coloring(const std::string& path) {
    return lpf::coloring_from_json(json::parse(lpf::read_file(path)));
}

lpf::ValueField load_field(const std::string& path) {
    auto j = json::parse(lpf::read_file(path));
    // accept both bare fields and wrappers like the tree-example output
    if (!j.contains("grid") && j.contains("field")) j = j.at("field");
    return lpf::field_from_json(j);
}

lpf::Nonlinearity make_reaction(double nagumo_a, const std::vector<double>& poly) {
    if (!poly.empty()) return lpf::Nonlinearity::polynomial(poly);
    return lpf::Nonlinearity::nagumo(nagumo_a);
}

std::vector<int> parse_int_pair(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("expected a,b: " + s);
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) g_argv.emplace_back(argv[i]);

    CLI::App app{"perfect colorings of regular lattices and their stationary solutions"};
    app.require_subcommand(1);

    // ---- validate-matrix ----------------------------------------------------
    {
        auto* cmd = app.add_subcommand("validate-matrix", "check row sums and sign symmetry");
        auto matrix_path = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--matrix", *matrix_path, "matrix JSON file")->required();
        cmd->add_option("--out", *out_path, "report JSON file");
        cmd->callback([=]() {
            auto m = load_matrix(*matrix_path);
            auto rep = lpf::validate_matrix(m);
            json j{{"admissible", rep.admissible},
                   {"bad_row_sums", rep.bad_row_sums},
                   {"sign_asymmetries", rep.sign_asymmetries}};
            std::cout << (rep.admissible ? "admissible" : "inadmissible") << "\n";
            if (!out_path->empty())
                lpf::write_file(*out_path, lpf::dump_output(j, manifest_for("validate-matrix", 0, {*matrix_path})));
        });
    }

    // ---- verify-coloring ----------------------------------------------------
    {
        auto* cmd = app.add_subcommand("verify-coloring", "check a coloring against a matrix");
        auto coloring_path = std::make_shared<std::string>();
        auto matrix_path = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--coloring", *coloring_path)->required();
        cmd->add_option("--matrix", *matrix_path)->required();
        cmd->add_option("--out", *out_path);
        cmd->callback([=]() {
            auto c = load_coloring(*coloring_path);
            auto m = load_matrix(*matrix_path);
            auto v = lpf::verify_perfect(c, m);
            json j{{"perfect", v.ok}};
            if (!v.ok) {
                j["witness"] = v.witness;
                j["found"] = v.found_counts;
                j["expected"] = v.expected_counts;
            }
            std::cout << (v.ok ? "perfect" : "not perfect") << "\n";
            if (!out_path->empty())
                lpf::write_file(*out_path,
                                lpf::dump_output(j, manifest_for("verify-coloring", 0, {*coloring_path, *matrix_path})));
        });
    }

    // ---- extract-matrix -----------------------------------------------------
    {
        auto* cmd = app.add_subcommand("extract-matrix", "read the neighborhood matrix off a coloring");
        auto coloring_path = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--coloring", *coloring_path)->required();
        cmd->add_option("--out", *out_path)->required();
        cmd->callback([=]() {
            auto c = load_coloring(*coloring_path);
            auto ext = lpf::extract_matrix(c);
            json j;
            if (ext.ok()) {
                j = lpf::matrix_to_json(*ext.matrix);
                j["consistent"] = true;
                std::cout << "consistent\n";
            } else {
                j["consistent"] = false;
                j["conflict_color"] = ext.conflict_color;
                j["witnesses"] = {ext.witness_a, ext.witness_b};
                std::cout << "inconsistent\n";
            }
            lpf::write_file(*out_path, lpf::dump_output(j, manifest_for("extract-matrix", 0, {*coloring_path})));
        });
    }

    // ---- refine ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("refine", "coarsest equitable refinement of a coloring or field");
        auto coloring_path = std::make_shared<std::string>();
        auto field_path = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--coloring", *coloring_path);
        cmd->add_option("--field", *field_path);
        cmd->add_option("--out", *out_path)->required();
        cmd->callback([=]() {
            if (coloring_path->empty() == field_path->empty())
                throw std::invalid_argument("refine needs exactly one of --coloring / --field");
            lpf::RefinementResult res;
            std::string input;
            if (!coloring_path->empty()) {
                input = *coloring_path;
                res = lpf::refine_partition(load_coloring(input));
            } else {
                input = *field_path;
                res = lpf::refine_partition(load_field(input));
            }
            json j{{"class_of", res.class_of},
                   {"interior_classes", res.interior_class_count},
                   {"total_classes", res.total_class_count},
                   {"stabilized", res.stabilized}};
            if (res.induced) j["induced_matrix"] = lpf::matrix_to_json(*res.induced);
            std::cout << "classes " << res.interior_class_count << "\n";
            lpf::write_file(*out_path, lpf::dump_output(j, manifest_for("refine", 0, {input})));
        });
    }

    // ---- merge ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("merge", "aggregate a matrix (and optionally a coloring) through a merger map");
        auto matrix_path = std::make_shared<std::string>();
        auto map_path = std::make_shared<std::string>();
        auto coloring_path = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        auto coloring_out = std::make_shared<std::string>();
        cmd->add_option("--matrix", *matrix_path)->required();
        cmd->add_option("--map", *map_path, "merger map JSON (array)")->required();
        cmd->add_option("--coloring", *coloring_path);
        cmd->add_option("--out", *out_path)->required();
        cmd->add_option("--coloring-out", *coloring_out);
        cmd->callback([=]() {
            auto m = load_matrix(*matrix_path);
            auto phi = lpf::merger_from_json(json::parse(lpf::read_file(*map_path)));
            auto merged = lpf::merge_matrix(m, phi);
            json j;
            std::vector<std::string> inputs{*matrix_path, *map_path};
            if (merged.ok()) {
                j = lpf::matrix_to_json(*merged.matrix);
                j["compatible"] = true;
                std::cout << "compatible\n";
            } else {
                j["compatible"] = false;
                j["conflict_sources"] = {merged.source_a, merged.source_b};
                std::cout << "incompatible\n";
            }
            if (!coloring_path->empty() && !coloring_out->empty()) {
                auto c = load_coloring(*coloring_path);
                inputs.push_back(*coloring_path);
                lpf::write_file(*coloring_out,
                                lpf::dump_output(lpf::coloring_to_json(lpf::merge_coloring(c, phi)),
                                                 manifest_for("merge", 0, inputs)));
            }
            lpf::write_file(*out_path, lpf::dump_output(j, manifest_for("merge", 0, inputs)));
        });
    }

    // ---- aperiodicity ----------------------------------------------------
    {
        auto* cmd = app.add_subcommand("aperiodicity", "exact determinant test for aperiodic perfect colorings");
        auto matrix_path = std::make_shared<std::string>();
        auto grid = std::make_shared<std::string>();
        cmd->add_option("--matrix", *matrix_path)->required();
        cmd->add_option("--grid", *grid, "square|triangular|hexagonal")->required();
        cmd->callback([=]() {
            auto m = load_matrix(*matrix_path);
            const bool ap = lpf::aperiodicity_test(m, lpf::grid_kind_from_string(*grid));
            std::cout << (ap ? "true" : "false") << "\n";
        });
    }

    // ---- census ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("census", "two-color census verdict for (m11, m22)");
        auto grid = std::make_shared<std::string>();
        auto m11 = std::make_shared<int>(0);
        auto m22 = std::make_shared<int>(0);
        cmd->add_option("--grid", *grid)->required();
        cmd->add_option("--m11", *m11)->required();
        cmd->add_option("--m22", *m22)->required();
        cmd->callback([=]() {
            std::cout << lpf::to_string(lpf::two_color_census(lpf::grid_kind_from_string(*grid), *m11, *m22))
                      << "\n";
        });
    }

    // ---- make-path-coloring ----------------------------------------------
    {
        auto* cmd = app.add_subcommand("make-path-coloring", "periodic word(s) of a k=2 perfect coloring");
        auto matrix_path = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--matrix", *matrix_path)->required();
        cmd->add_option("--out", *out_path);
        cmd->callback([=]() {
            auto res = lpf::path_coloring(load_matrix(*matrix_path));
            json words = json::array();
            for (const auto& w : res.words) {
                words.push_back({{"colors", w.colors}, {"period", w.period}, {"multiplicities", w.multiplicities}});
                for (size_t i = 0; i < w.colors.size(); ++i)
                    std::cout << (i ? " " : "") << w.colors[i];
                std::cout << "\n";
            }
            if (!out_path->empty())
                lpf::write_file(*out_path, lpf::dump_output(json{{"words", words}},
                                                            manifest_for("make-path-coloring", 0, {*matrix_path})));
        });
    }

    // ---- lift-periodic ----------------------------------------------------
    {
        auto* cmd = app.add_subcommand("lift-periodic", "fresh-color lift of a period lattice");
        auto grid = std::make_shared<std::string>();
        auto v1 = std::make_shared<std::string>();
        auto v2 = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        auto matrix_out = std::make_shared<std::string>();
        cmd->add_option("--grid", *grid)->required();
        cmd->add_option("--v1", *v1, "a,b")->required();
        cmd->add_option("--v2", *v2, "a,b")->required();
        cmd->add_option("--out", *out_path)->required();
        cmd->add_option("--matrix-out", *matrix_out);
        cmd->callback([=]() {
            const auto p1 = parse_int_pair(*v1);
            const auto p2 = parse_int_pair(*v2);
            lpf::PeriodVectors pv{{p1[0], p1[1]}, {p2[0], p2[1]}};
            auto lift = lpf::periodic_lift(lpf::grid_kind_from_string(*grid), pv);
            std::cout << "colors " << lift.coloring.n << " torus " << lift.coloring.patch->dims[0] << "x"
                      << lift.coloring.patch->dims[1] << "\n";
            lpf::write_file(*out_path,
                            lpf::dump_output(lpf::coloring_to_json(lift.coloring), manifest_for("lift-periodic", 0, {})));
            if (!matrix_out->empty())
                lpf::write_file(*matrix_out,
                                lpf::dump_output(lpf::matrix_to_json(lift.matrix), manifest_for("lift-periodic", 0, {})));
        });
    }

    // ---- tile-motif ----------------------------------------------------
    {
        auto* cmd = app.add_subcommand("tile-motif", "tile a torus with a motif");
        auto grid = std::make_shared<std::string>();
        auto motif_path = std::make_shared<std::string>();
        auto width = std::make_shared<int>(0);
        auto height = std::make_shared<int>(0);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--grid", *grid)->required();
        cmd->add_option("--motif", *motif_path, "JSON {width, height, cells}")->required();
        cmd->add_option("--width", *width)->required();
        cmd->add_option("--height", *height)->required();
        cmd->add_option("--out", *out_path)->required();
        cmd->callback([=]() {
            auto j = json::parse(lpf::read_file(*motif_path));
            lpf::Motif motif{j.at("width").get<int>(), j.at("height").get<int>(),
                             j.at("cells").get<std::vector<int>>()};
            auto c = lpf::motif_tiling(lpf::grid_kind_from_string(*grid), motif, *width, *height);
            lpf::write_file(*out_path,
                            lpf::dump_output(lpf::coloring_to_json(c), manifest_for("tile-motif", 0, {*motif_path})));
            std::cout << "colors " << c.n << "\n";
        });
    }

    // ---- bitword-coloring --------------------------------------------------
    {
        auto* cmd = app.add_subcommand("bitword-coloring", "bit-encoded aperiodic family on an open window");
        auto matrix_path = std::make_shared<std::string>();
        auto bits = std::make_shared<std::string>();
        auto width = std::make_shared<int>(0);
        auto height = std::make_shared<int>(0);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--matrix", *matrix_path)->required();
        cmd->add_option("--bits", *bits, "word of 0/1")->required();
        cmd->add_option("--width", *width)->required();
        cmd->add_option("--height", *height)->required();
        cmd->add_option("--out", *out_path)->required();
        cmd->callback([=]() {
            auto c = lpf::bit_sequence_coloring(load_matrix(*matrix_path), lpf::bitword_from_string(*bits),
                                                *width, *height);
            lpf::write_file(*out_path,
                            lpf::dump_output(lpf::coloring_to_json(c), manifest_for("bitword-coloring", 0, {*matrix_path})));
            std::cout << "ok\n";
        });
    }

    // ---- search-torus ----------------------------------------------------
    {
        auto* cmd = app.add_subcommand("search-torus", "exhaustive backtracking search up to translation");
        auto grid = std::make_shared<std::string>();
        auto width = std::make_shared<int>(0);
        auto height = std::make_shared<int>(0);
        auto length = std::make_shared<int>(0);
        auto matrix_path = std::make_shared<std::string>();
        auto limit = std::make_shared<int>(1000);
        auto point_sym = std::make_shared<bool>(false);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--grid", *grid)->required();
        cmd->add_option("--width", *width);
        cmd->add_option("--height", *height);
        cmd->add_option("--length", *length, "ring length for path grids");
        cmd->add_option("--matrix", *matrix_path)->required();
        cmd->add_option("--limit", *limit);
        cmd->add_flag("--normalize-point-symmetries", *point_sym,
                      "quotient by the square-grid point symmetries as well");
        cmd->add_option("--out", *out_path)->required();
        cmd->callback([=]() {
            auto kind = lpf::grid_kind_from_string(*grid);
            lpf::PatchPtr patch;
            if (kind == lpf::GridKind::path) {
                patch = lpf::build_patch(kind, {*length}, {true});
            } else {
                patch = lpf::build_patch(kind, {*width, *height}, {true, true});
            }
            auto m = load_matrix(*matrix_path);
            auto res = lpf::torus_search(patch, m, *limit,
                                         *point_sym ? lpf::SearchSymmetry::translations_and_point
                                                    : lpf::SearchSymmetry::translations);
            json cols = json::array();
            for (const auto& c : res.colorings) cols.push_back(lpf::coloring_to_json(c));
            json j{{"classes", res.colorings.size()},
                   {"assignments", res.assignments},
                   {"truncated", res.truncated},
                   {"colorings", cols}};
            std::cout << "classes " << res.colorings.size() << " assignments " << res.assignments
                      << (res.truncated ? " (truncated)" : "") << "\n";
            lpf::write_file(*out_path, lpf::dump_output(j, manifest_for("search-torus", 0, {*matrix_path})));
        });
    }

    // ---- solve ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("solve", "enumerate roots of the finite stationary system");
        auto matrix_path = std::make_shared<std::string>();
        auto k_check = std::make_shared<int>(-1);
        auto d = std::make_shared<double>(0.01);
        auto nagumo_a = std::make_shared<double>(0.5);
        auto poly = std::make_shared<std::vector<double>>();
        auto seeds = std::make_shared<int>(256);
        auto seed = std::make_shared<unsigned long long>(0);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--matrix", *matrix_path)->required();
        cmd->add_option("--k", *k_check, "expected degree (checked against the matrix)");
        cmd->add_option("--d", *d)->required();
        cmd->add_option("--nagumo-a", *nagumo_a);
        cmd->add_option("--poly", *poly, "polynomial coefficients, ascending degree")->expected(-1);
        cmd->add_option("--seeds", *seeds, "random seed count");
        cmd->add_option("--seed", *seed, "rng seed");
        cmd->add_option("--out", *out_path)->required();
        cmd->callback([=]() {
            auto m = load_matrix(*matrix_path);
            if (*k_check >= 0 && *k_check != m.k) throw std::invalid_argument("--k does not match the matrix");
            lpf::SolverConfig cfg;
            cfg.d = *d;
            cfg.random_seeds = *seeds;
            cfg.rng_seed = *seed;
            auto sols = lpf::solve_all(m, make_reaction(*nagumo_a, *poly), cfg);
            std::cout << "solutions " << sols.records.size() << "\n";
            auto j = lpf::solution_set_to_json(sols);
            j["matrix"] = lpf::matrix_to_json(m);
            lpf::write_file(*out_path, lpf::dump_output(j, manifest_for("solve", *seed, {*matrix_path})));
        });
    }

    // ---- sweep ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("sweep", "solution counts across a d-grid");
        auto matrix_path = std::make_shared<std::string>();
        auto nagumo_a = std::make_shared<double>(0.5);
        auto poly = std::make_shared<std::vector<double>>();
        auto d_values = std::make_shared<std::vector<double>>();
        auto refine_flag = std::make_shared<bool>(false);
        auto seed = std::make_shared<unsigned long long>(0);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--matrix", *matrix_path)->required();
        cmd->add_option("--nagumo-a", *nagumo_a);
        cmd->add_option("--poly", *poly)->expected(-1);
        cmd->add_option("--d-values", *d_values)->required()->expected(-1);
        cmd->add_flag("--refine-brackets", *refine_flag, "bisect count changes to width 1e-3");
        cmd->add_option("--seed", *seed);
        cmd->add_option("--out", *out_path)->required();
        cmd->callback([=]() {
            auto m = load_matrix(*matrix_path);
            lpf::SolverConfig cfg;
            cfg.rng_seed = *seed;
            auto sweep = lpf::count_sweep(m, make_reaction(*nagumo_a, *poly), *d_values, cfg, *refine_flag);
            json pts = json::array();
            for (const auto& p : sweep.points) {
                pts.push_back({{"d", p.d}, {"count", p.count}});
                std::cout << "d " << p.d << " count " << p.count << "\n";
            }
            json brs = json::array();
            for (const auto& b : sweep.brackets)
                brs.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count_lo", b.count_lo}, {"count_hi", b.count_hi}});
            lpf::write_file(*out_path, lpf::dump_output(json{{"points", pts}, {"brackets", brs}},
                                                        manifest_for("sweep", *seed, {*matrix_path})));
        });
    }

    // ---- lift-solution ----------------------------------------------------
    {
        auto* cmd = app.add_subcommand("lift-solution", "turn a finite-system root into a lattice field");
        auto coloring_path = std::make_shared<std::string>();
        auto matrix_path = std::make_shared<std::string>();
        auto solutions_path = std::make_shared<std::string>();
        auto index = std::make_shared<int>(0);
        auto values = std::make_shared<std::vector<double>>();
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--coloring", *coloring_path)->required();
        cmd->add_option("--matrix", *matrix_path)->required();
        cmd->add_option("--solutions", *solutions_path, "solution-set JSON");
        cmd->add_option("--index", *index, "record index into --solutions");
        cmd->add_option("--values", *values, "explicit per-color values")->expected(-1);
        cmd->add_option("--out", *out_path)->required();
        cmd->callback([=]() {
            auto c = load_coloring(*coloring_path);
            auto m = load_matrix(*matrix_path);
            std::vector<double> v = *values;
            std::vector<std::string> inputs{*coloring_path, *matrix_path};
            if (v.empty()) {
                if (solutions_path->empty())
                    throw std::invalid_argument("lift-solution needs --values or --solutions");
                auto sols = lpf::solution_set_from_json(json::parse(lpf::read_file(*solutions_path)));
                inputs.push_back(*solutions_path);
                if (*index < 0 || *index >= static_cast<int>(sols.records.size()))
                    throw std::invalid_argument("record index out of range");
                v = sols.records[static_cast<size_t>(*index)].v;
            }
            auto field = lpf::lift_solution(c, m, v);
            lpf::write_file(*out_path,
                            lpf::dump_output(lpf::field_to_json(field), manifest_for("lift-solution", 0, inputs)));
            std::cout << "ok\n";
        });
    }

    // ---- simulate ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("simulate", "integrate the graph reaction-diffusion flow");
        auto field_path = std::make_shared<std::string>();
        auto d = std::make_shared<double>(0.01);
        auto nagumo_a = std::make_shared<double>(0.5);
        auto poly = std::make_shared<std::vector<double>>();
        auto T = std::make_shared<double>(50.0);
        auto dt = std::make_shared<double>(0.25);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--field", *field_path)->required();
        cmd->add_option("--d", *d)->required();
        cmd->add_option("--nagumo-a", *nagumo_a);
        cmd->add_option("--poly", *poly)->expected(-1);
        cmd->add_option("--T", *T);
        cmd->add_option("--dt", *dt);
        cmd->add_option("--out", *out_path)->required();
        cmd->callback([=]() {
            auto field = load_field(*field_path);
            auto stats = lpf::integrate(field, *d, make_reaction(*nagumo_a, *poly), *T, *dt);
            json j{{"final", lpf::field_to_json(stats.final_field)},
                   {"max_drift", stats.max_drift},
                   {"final_residual", stats.final_residual},
                   {"steps", stats.steps},
                   {"dt_used", stats.dt_used},
                   {"diverged", stats.diverged}};
            std::cout << "drift " << stats.max_drift << " residual " << stats.final_residual
                      << (stats.diverged ? " diverged" : "") << "\n";
            lpf::write_file(*out_path, lpf::dump_output(j, manifest_for("simulate", 0, {*field_path})));
        });
    }

    // ---- probe-stability ---------------------------------------------------
    {
        auto* cmd = app.add_subcommand("probe-stability", "randomized perturb-and-relax verdict");
        auto field_path = std::make_shared<std::string>();
        auto d = std::make_shared<double>(0.01);
        auto nagumo_a = std::make_shared<double>(0.5);
        auto poly = std::make_shared<std::vector<double>>();
        auto eps = std::make_shared<double>(1e-3);
        auto trials = std::make_shared<int>(5);
        auto T = std::make_shared<double>(200.0);
        auto seed = std::make_shared<unsigned long long>(0);
        cmd->add_option("--field", *field_path)->required();
        cmd->add_option("--d", *d)->required();
        cmd->add_option("--nagumo-a", *nagumo_a);
        cmd->add_option("--poly", *poly)->expected(-1);
        cmd->add_option("--eps", *eps);
        cmd->add_option("--trials", *trials);
        cmd->add_option("--T", *T);
        cmd->add_option("--seed", *seed);
        cmd->callback([=]() {
            auto field = load_field(*field_path);
            auto res = lpf::perturb_relax(field, *d, make_reaction(*nagumo_a, *poly), *eps, *trials, *T, *seed);
            std::cout << lpf::to_string(res.verdict) << "\n";
        });
    }

    // ---- tree-example ----------------------------------------------------
    {
        auto* cmd = app.add_subcommand("tree-example", "three-valued non-perfect stationary solution on the binary tree");
        auto a = std::make_shared<double>(0.0);
        auto b = std::make_shared<double>(1.0);
        auto depth = std::make_shared<int>(12);
        auto hang = std::make_shared<int>(3);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--a", *a)->required();
        cmd->add_option("--b", *b)->required();
        cmd->add_option("--depth", *depth, "spine half-length");
        cmd->add_option("--hang", *hang, "hanging subtree depth");
        cmd->add_option("--out", *out_path)->required();
        cmd->callback([=]() {
            auto ex = lpf::tree_counterexample(*a, *b, *depth, *hang);
            json j{{"field", lpf::field_to_json(ex.field)},
                   {"a", ex.a},
                   {"b", ex.b},
                   {"c", ex.c},
                   {"f_values", ex.f_values},
                   {"f_coefficients", ex.f.coeffs},
                   {"interior_residual", lpf::stationary_residual(ex.field, 1.0, ex.f)}};
            std::cout << "c " << ex.c << " residual " << j["interior_residual"].get<double>() << "\n";
            lpf::write_file(*out_path, lpf::dump_output(j, manifest_for("tree-example", 0, {})));
        });
    }

    // ---- render ---------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("render", "PPM (and optional SVG) images of colorings and fields");
        auto coloring_path = std::make_shared<std::string>();
        auto field_path = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        auto svg_path = std::make_shared<std::string>();
        auto scale = std::make_shared<int>(1);
        cmd->add_option("--coloring", *coloring_path);
        cmd->add_option("--field", *field_path);
        cmd->add_option("--out", *out_path, "PPM output (tree patches: text)")->required();
        cmd->add_option("--svg", *svg_path);
        cmd->add_option("--scale", *scale);
        cmd->callback([=]() {
            if (coloring_path->empty() == field_path->empty())
                throw std::invalid_argument("render needs exactly one of --coloring / --field");
            std::string input;
            std::string bytes;
            std::string svg;
            if (!coloring_path->empty()) {
                input = *coloring_path;
                auto c = load_coloring(input);
                if (c.patch->kind == lpf::GridKind::binary_tree) {
                    bytes = lpf::render_tree_text(*c.patch, c.colors);
                } else {
                    bytes = lpf::render_coloring_ppm(c, *scale);
                    if (!svg_path->empty()) svg = lpf::render_coloring_svg(c);
                }
            } else {
                input = *field_path;
                auto f = load_field(input);
                if (f.patch->kind == lpf::GridKind::binary_tree) {
                    std::vector<int> labels(f.values.size());
                    auto cls = lpf::coloring_from_field(f);
                    labels = cls.colors;
                    bytes = lpf::render_tree_text(*f.patch, labels);
                } else {
                    bytes = lpf::render_field_ppm(f, *scale);
                }
            }
            lpf::write_file(*out_path, bytes);
            auto man = manifest_for("render", 0, {input});
            lpf::write_file(*out_path + ".manifest.json", lpf::dump_output(json::object(), man));
            if (!svg.empty()) lpf::write_file(*svg_path, svg);
            std::cout << "ok\n";
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        json err{{"error", {{"type", "domain"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
