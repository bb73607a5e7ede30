#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kchern/kchern.hpp"

namespace {

using kchern::io::json;

constexpr int kOk = 0;
constexpr int kParse = 2;
constexpr int kValidation = 3;
constexpr int kProperty = 4;

struct Globals {
    int degree_cap = kchern::Algebra::kDefaultDegreeCap;
    int k_max = 2;
    std::uint64_t seed = 7;
    std::string out;
};

kchern::Algebra load_algebra(const std::string& file, const std::string& fixture, int cap) {
    if (!fixture.empty() && !file.empty()) throw kchern::ParseError("give an algebra file or --fixture, not both");
    if (!fixture.empty()) return kchern::fixtures::by_name(fixture).algebra.with_degree_cap(cap);
    if (file.empty()) throw kchern::ParseError("an algebra file or --fixture is required");
    return kchern::io::algebra_from_json(kchern::io::read_json_file(file), cap);
}

int emit(const Globals& g, const json& j, const std::string& summary = "") {
    if (g.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        kchern::io::write_json_file(g.out, j);
        if (!summary.empty()) std::cout << summary << "\n";
    }
    return kOk;
}

/// Every degree in [lo, hi] with the given step, zero components included.
kchern::GradedClass dense(const kchern::Algebra& alg, kchern::GradedClass g, int lo, int hi, int step) {
    for (int n = lo; n <= hi; n += step)
        if (!g.count(n)) g[n] = kchern::Vec(kchern::abelianization(alg, n).dim());
    return g;
}

int cmd_algebra_check(const Globals& g, const std::string& file) {
    kchern::io::AlgebraTable t = kchern::io::algebra_table_from_json(kchern::io::read_json_file(file));
    kchern::AlgebraCheck c = kchern::Algebra::inspect(t.mul);
    json j = {{"file", file}, {"dim", t.mul.size()}, {"unital", c.unit_ok}, {"associative", c.assoc_ok},
              {"status", c.ok() ? "pass" : "fail"}};
    if (c.unit_failure) j["unit_failure"] = *c.unit_failure;
    if (c.assoc_failure) j["associativity_failure"] = *c.assoc_failure;
    if (!c.hint.empty()) j["hint"] = c.hint;
    if (!c.ok()) j["message"] = c.message();
    emit(g, j, c.ok() ? "pass" : "fail: " + c.message());
    return c.ok() ? kOk : kValidation;
}

int cmd_homology(const Globals& g, const kchern::Algebra& alg, std::optional<int> degree, int max_degree) {
    int lo = degree ? *degree : 0;
    int hi = degree ? *degree : (max_degree >= 0 ? max_degree : alg.degree_cap() - 1);
    json dims = json::array(), groups = json::array();
    for (int n = lo; n <= hi; ++n) {
        kchern::Homology h = kchern::de_rham_homology(alg, n);
        json reps = json::array();
        for (const auto& f : h.representatives) reps.push_back({{"form", kchern::io::to_json(f)}, {"text", f.str()}});
        dims.push_back(h.dim);
        groups.push_back({{"degree", n}, {"dim", h.dim}, {"representatives", reps}});
    }
    return emit(g, {{"degrees", kchern::suites::range_degrees(lo, hi)}, {"dims", dims}, {"homology", groups}});
}

int cmd_chern(const Globals& g, const kchern::Algebra& alg, const std::string& conn_file, const std::string& against) {
    kchern::Connection c = kchern::io::connection_from_json(alg, kchern::io::read_json_file(conn_file));
    kchern::GradedClass ch = dense(alg, kchern::as_graded(kchern::chern(c, g.k_max)), 0, 2 * g.k_max, 2);
    json j = {{"k_max", g.k_max}, {"chern", kchern::io::graded_to_json(alg, ch)}};
    if (!against.empty()) {
        kchern::Connection d = kchern::io::connection_from_json(alg, kchern::io::read_json_file(against));
        kchern::GradedClass diff = kchern::graded_sub(kchern::as_graded(kchern::chern(c, g.k_max)),
                                                      kchern::as_graded(kchern::chern(d, g.k_max)));
        kchern::GradedExactness ex = kchern::is_exact_graded(alg, dense(alg, diff, 0, 2 * g.k_max, 2));
        j["against"] = {{"difference", kchern::io::graded_to_json(alg, diff)},
                        {"exact", ex.exact},
                        {"exactness", kchern::io::exactness_to_json(alg, ex)}};
    }
    return emit(g, j);
}

int cmd_kcs(const Globals& g, const kchern::Algebra& alg, const std::string& path_file, const std::string& from,
            const std::string& to, bool reverse) {
    std::optional<kchern::PolyPath> path;
    if (!path_file.empty()) {
        if (!from.empty() || !to.empty()) throw kchern::ParseError("give either --path or --from/--to, not both");
        path = kchern::io::path_from_json(alg, kchern::io::read_json_file(path_file));
    } else {
        if (from.empty() || to.empty()) throw kchern::ParseError("kcs needs --path or both --from and --to");
        kchern::Connection c0 = kchern::io::connection_from_json(alg, kchern::io::read_json_file(from));
        kchern::Connection c1 = kchern::io::connection_from_json(alg, kchern::io::read_json_file(to));
        if (!(c0.idempotent() == c1.idempotent()))
            throw kchern::ValidationError("endpoint connections live on different idempotents");
        path = kchern::straight_line(c0, c1);
    }
    if (reverse) path = kchern::reverse_path(*path);

    const int top = 2 * g.k_max - 1;
    kchern::GradedClass k = dense(alg, kchern::kcs_class(kchern::kcs(*path, g.k_max)), 1, top, 2);
    kchern::GradedExactness ex = kchern::is_exact_graded(alg, k);

    // d KCS - (ch(D1) - ch(D0)) in positive even degrees.
    kchern::GradedClass delta = kchern::graded_sub(kchern::as_graded(kchern::chern(path->at(kchern::Rational(1)), g.k_max)),
                                                   kchern::as_graded(kchern::chern(path->at(kchern::Rational(0)), g.k_max)));
    delta.erase(0);
    kchern::GradedClass residual = kchern::graded_sub(kchern::dbar(alg, k), delta);
    bool zero = kchern::graded_is_zero(residual);

    json j = {{"k_max", g.k_max},
              {"reversed", reverse},
              {"kcs", kchern::io::graded_to_json(alg, k)},
              {"exactness", kchern::io::exactness_to_json(alg, ex)},
              {"transgression_residual", {{"zero", zero}, {"residual", kchern::io::graded_to_json(alg, residual)}}}};
    emit(g, j);
    return zero ? kOk : kProperty;
}

int cmd_verify(const Globals& g, const std::string& suite, const std::vector<std::string>& fixture_names,
               const std::vector<std::string>& algebra_files) {
    kchern::SuiteConfig cfg;
    cfg.seed = g.seed;
    cfg.k_max = g.k_max;
    std::vector<kchern::fixtures::Fixture> fxs;
    for (const auto& name : fixture_names) {
        auto fx = kchern::fixtures::by_name(name);
        fx.algebra = fx.algebra.with_degree_cap(g.degree_cap);
        fxs.push_back(fx);
    }
    for (const auto& file : algebra_files)
        fxs.push_back({std::filesystem::path(file).stem().string(), file,
                       kchern::io::algebra_from_json(kchern::io::read_json_file(file), g.degree_cap)});
    if (fxs.empty())
        for (auto fx : kchern::fixtures::all()) {
            fx.algebra = fx.algebra.with_degree_cap(g.degree_cap);
            fxs.push_back(fx);
        }

    kchern::Report rep = kchern::run_suite(suite, cfg, fxs);
    std::size_t failed = 0;
    for (const auto& r : rep.results)
        if (!r.passed) ++failed;
    emit(g, kchern::io::to_json(rep),
         suite + ": " + std::to_string(rep.results.size() - failed) + "/" + std::to_string(rep.results.size()) + " checks passed");
    return rep.passed() ? kOk : kProperty;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Chern character and Chern-Simons transgression forms over finite-dimensional algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--degree-cap", g.degree_cap, "Maximum form degree")->check(CLI::Range(1, kchern::Word::kMaxDegree));
    app.add_option("--kmax", g.k_max, "Highest Chern index")->check(CLI::Range(0, 7));
    app.add_option("--seed", g.seed, "Random seed for verification suites");
    app.add_option("--out", g.out, "Write JSON to this file instead of stdout");

    std::string alg_file, fixture;
    auto add_algebra = [&](CLI::App* sub) {
        sub->add_option("algebra", alg_file, "Algebra JSON file");
        sub->add_option("--fixture", fixture, "Use a builtin algebra instead of a file")
            ->check(CLI::IsMember(kchern::fixtures::names()));
    };

    auto* check = app.add_subcommand("algebra-check", "Check unitality and associativity of a multiplication table");
    check->add_option("algebra", alg_file, "Algebra JSON file")->required();

    auto* homology = app.add_subcommand("homology", "Noncommutative de Rham homology");
    add_algebra(homology);
    std::optional<int> degree;
    int max_degree = -1;
    homology->add_option("--degree", degree, "Single degree");
    homology->add_option("--max-degree", max_degree, "Degrees 0..N (default: degree cap - 1)");

    auto* chern = app.add_subcommand("chern", "Chern character classes of a connection");
    std::vector<std::string> chern_files;
    std::string against;
    chern->add_option("files", chern_files, "[ALGEBRA] CONNECTION (the algebra file is omitted with --fixture)")
        ->required()
        ->expected(1, 2);
    chern->add_option("--fixture", fixture, "Use a builtin algebra instead of a file")
        ->check(CLI::IsMember(kchern::fixtures::names()));
    chern->add_option("--against", against, "Second connection; report whether the Chern difference is exact");

    auto* kcs = app.add_subcommand("kcs", "Chern-Simons transgression classes along a path");
    add_algebra(kcs);
    std::string path_file, from, to;
    bool reverse = false;
    kcs->add_option("--path", path_file, "Polynomial path JSON file");
    kcs->add_option("--from", from, "Start connection (straight line)");
    kcs->add_option("--to", to, "End connection (straight line)");
    kcs->add_flag("--reverse", reverse, "Traverse the path backwards");

    auto* verify = app.add_subcommand("verify", "Run a randomized identity suite");
    std::string suite = "all";
    std::vector<std::string> fixture_names, algebra_files;
    verify->add_option("--suite", suite, "dga | chern | transgression | hexagon | all")
        ->check(CLI::IsMember(kchern::suite_names()));
    verify->add_option("--fixture", fixture_names, "Builtin fixtures (default: all)")
        ->check(CLI::IsMember(kchern::fixtures::names()));
    verify->add_option("--algebra", algebra_files, "Additional algebra JSON files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (*check) return cmd_algebra_check(g, alg_file);
        if (*homology) return cmd_homology(g, load_algebra(alg_file, fixture, g.degree_cap), degree, max_degree);
        if (*chern) {
            if (chern_files.size() != (fixture.empty() ? 2U : 1U))
                throw kchern::ParseError(fixture.empty() ? "chern needs an algebra file and a connection file"
                                                         : "with --fixture, chern takes only a connection file");
            if (fixture.empty()) alg_file = chern_files.front();
            return cmd_chern(g, load_algebra(alg_file, fixture, g.degree_cap), chern_files.back(), against);
        }
        if (*kcs) return cmd_kcs(g, load_algebra(alg_file, fixture, g.degree_cap), path_file, from, to, reverse);
        if (*verify) return cmd_verify(g, suite, fixture_names, algebra_files);
    } catch (const kchern::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const kchern::Error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kOk;
}
