#include "support.hpp"

#include "sep/run.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

using namespace septest;

TEST_CASE("manifest parsing")
{
    SECTION("a full set of declarations")
    {
        const char* text =
            "# comment line\n"
            "ring A = QQ[x, y] / (x*y)\n"
            "ring B = QQ[u]\n"
            "map f : A -> B { x -> u^2 - 1, y -> u^3 - u }\n"
            "twist T = double(U = A, invert = [x, 1 - x], tau = { y -> (x*y)*inv(1 - x) })\n"
            "point P = (U, ideal(x - 1))\n"
            "assert integral T\n"
            "query separator T\n";
        Manifest m = parse_manifest(text);
        REQUIRE(m.statements.size() == 7);
        const auto& r = std::get<RingDecl>(m.statements[0]);
        CHECK(r.gens == vars({"x", "y"}));
        CHECK(r.relations == std::vector<std::string>{"x*y"});
        const auto& f = std::get<MapDecl>(m.statements[2]);
        CHECK(f.images.size() == 2);
        CHECK(f.images[1].second == "u^3 - u");
        const auto& q = std::get<QueryDecl>(m.statements[6]);
        CHECK(q.kind == "check-separator"); // alias canonicalized
    }
    SECTION("empty file is an empty manifest")
    {
        CHECK(parse_manifest("").statements.empty());
        CHECK(parse_manifest("\n  # only a comment\n").statements.empty());
    }
    SECTION("diagnostics carry line and column")
    {
        CHECK_THROWS_WITH(parse_manifest("ring A = QQ[x]/(x\n"),
                          Catch::Matchers::ContainsSubstring("line 1") &&
                              Catch::Matchers::ContainsSubstring("unclosed"));
        CHECK_THROWS_WITH(parse_manifest("\nfrobnicate A\n"),
                          Catch::Matchers::ContainsSubstring("line 2"));
        CHECK_THROWS_AS(parse_manifest("query separator\n"), Error);
        CHECK_THROWS_AS(parse_manifest("point P = (W, ideal(x))\n"), Error);
    }
    SECTION("round-trip on every corpus style statement")
    {
        const char* text = "ring A = QQ[x, y] / (x*y)\n"
                           "ring K = QQ[]\n"
                           "map f : A -> A { x -> x, y -> y }\n"
                           "twist T = double(U = A, invert = [x], tau = {  })\n"
                           "scheme S = glue(U = A, V = A, along = A, rhoU = f, rhoV = f)\n"
                           "point P = (V, ideal(x - 1, y))\n"
                           "assert connected A\n"
                           "query identified S P P\n";
        Manifest m = parse_manifest(text);
        CHECK(parse_manifest(print_manifest(m)) == m);
    }
}

TEST_CASE("manifest execution")
{
    SECTION("undeclared names are reported")
    {
        auto out = run_manifest(parse_manifest("query flat f\n"), RunOptions{});
        CHECK(out.exit_code == 2);
        CHECK(out.text.find("undeclared map") != std::string::npos);
    }
    SECTION("declaration order is enforced by lookup")
    {
        auto out = run_manifest(
            parse_manifest("query check-separator T\ntwist T = double(U = A)\n"),
            RunOptions{});
        CHECK(out.exit_code == 2);
    }
    SECTION("ill-typed images are rejected")
    {
        const char* text = "ring A = QQ[x] / (x^2)\n"
                           "ring B = QQ[t]\n"
                           "map f : A -> B { x -> t }\n";
        auto out = run_manifest(parse_manifest(text), RunOptions{});
        CHECK(out.exit_code == 2);
        CHECK(out.text.find("not well defined") != std::string::npos);
    }
    SECTION("a minimal separator run end to end, bytes stable across runs")
    {
        const char* text = "ring A = QQ[x]\n"
                           "twist T = double(U = A, invert = [x], tau = { })\n"
                           "query check-separator T\n";
        RunOptions opt;
        opt.format = "json";
        auto a = run_manifest(parse_manifest(text), opt);
        auto b = run_manifest(parse_manifest(text), opt);
        CHECK(a.exit_code == 0);
        CHECK(a.json == b.json);
        CHECK(a.json.find("SeparatorExists") != std::string::npos);
    }
    SECTION("strict expectations flip the exit code")
    {
        const char* text = "ring A = QQ[x]\n"
                           "twist T = double(U = A, invert = [x], tau = { })\n"
                           "query check-separated T\n";
        RunOptions opt;
        opt.strict_expect = std::string("{\"verdicts\": [\"NotSeparated\"]}");
        CHECK(run_manifest(parse_manifest(text), opt).exit_code == 0);
        opt.strict_expect = std::string("{\"verdicts\": [\"Separated\"]}");
        CHECK(run_manifest(parse_manifest(text), opt).exit_code == 1);
    }
    SECTION("glue declarations validate the restriction maps")
    {
        const char* good = "ring A = QQ[x]\n"
                           "ring C = QQ[x, w] / (x*w - 1)\n"
                           "map r : A -> C { x -> x }\n"
                           "scheme S = glue(U = A, V = A, along = C, rhoU = r, rhoV = r)\n"
                           "query check-separator S\n";
        auto out = run_manifest(parse_manifest(good), RunOptions{});
        CHECK(out.exit_code == 0);
        CHECK(out.text.find("SeparatorExists") != std::string::npos);

        const char* bad = "ring A = QQ[x]\n"
                          "ring C = QQ[x, w] / (x*w - 1)\n"
                          "map r : A -> C { x -> x^2 }\n"
                          "scheme S = glue(U = A, V = A, along = C, rhoU = r, rhoV = r)\n";
        CHECK(run_manifest(parse_manifest(bad), RunOptions{}).exit_code == 2);
    }
    SECTION("budget override produces typed Undecided instead of an answer")
    {
        const char* text = "ring A = QQ[X, Z]\n"
                           "twist T = double(U = A, invert = [X, 1 - X], "
                           "tau = { Z -> (X*Z)*inv(1 - X) })\n"
                           "query check-separator T\n";
        RunOptions opt;
        opt.budget_steps = 20;
        auto out = run_manifest(parse_manifest(text), opt);
        // budget exhaustion surfaces as an error or an Undecided verdict,
        // never a wrong answer
        bool undecided = out.text.find("Undecided") != std::string::npos;
        bool errored = out.exit_code == 2;
        CHECK((undecided || errored));
        CHECK(out.text.find("NoSeparator") == std::string::npos);
    }
}

TEST_CASE("corpus manifests round-trip through the printer")
{
    for (const char* name :
         {"trivial_glue", "doubled_line", "crossing_lines", "ex71", "ex72"}) {
        std::ifstream in(std::string(CORPUS_DIR) + "/" + name + ".sep");
        REQUIRE(in.good());
        std::stringstream ss;
        ss << in.rdbuf();
        Manifest m = parse_manifest(ss.str());
        CHECK(parse_manifest(print_manifest(m)) == m);
    }
}

TEST_CASE("JSON reports keep the documented shape")
{
    const char* text = "ring A = QQ[X, Z]\n"
                       "twist T = double(U = A, invert = [X, 1 - X], "
                       "tau = { Z -> (X*Z)*inv(1 - X) })\n"
                       "query check-separator T\n";
    RunOptions opt;
    opt.format = "json";
    auto out = run_manifest(parse_manifest(text), opt);
    auto j = nlohmann::json::parse(out.json);
    CHECK(j.at("status") == "ok");
    for (const char* k : {"budget", "format", "oracle", "seed", "strict_expect"})
        CHECK(j.at("options").contains(k));
    REQUIRE(j.at("queries").size() == 1);
    const auto& q = j.at("queries").at(0);
    for (const char* k : {"args", "index", "kind", "payload", "verdict"})
        CHECK(q.contains(k));
    CHECK(q.at("verdict") == "NoSeparator");
    const auto& p = q.at("payload");
    for (const char* k :
         {"closure_ring", "dominance", "failures", "finite_type", "flat_over_U",
          "flat_over_V"})
        CHECK(p.contains(k));
    CHECK(p.at("closure_ring").at("generators") ==
          std::vector<std::string>({"X", "Z0", "Z1"}));
    for (const auto& f : p.at("failures")) {
        CHECK(f.contains("side"));
        CHECK(f.at("flat").contains("status"));
        CHECK(f.contains("witness_in_closure"));
    }
}

TEST_CASE("the parser fails cleanly on mangled input")
{
    std::mt19937 rng(424242);
    const std::string glyphs = "ringmapqueyABC xyz0189=+-*/^(){}[],.#<>:&";
    std::uniform_int_distribution<std::size_t> pick(0, glyphs.size() - 1);
    std::uniform_int_distribution<int> len(1, 70);
    for (int trial = 0; trial < 300; ++trial) {
        std::string line;
        int n = len(rng);
        for (int i = 0; i < n; ++i) line.push_back(glyphs[pick(rng)]);
        try {
            Manifest m = parse_manifest(line + "\n");
            // rare accidental valid parses must round-trip
            CHECK(parse_manifest(print_manifest(m)) == m);
        } catch (const Error&) {
            // a diagnostic, never a crash
        }
    }
    SUCCEED("no crashes on 300 mangled lines");
}
