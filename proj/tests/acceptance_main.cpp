// Acceptance suite: runs every acceptance criterion end to end against the
// shipped corpus and prints one pass/fail line per criterion. Usage:
//   sep_acceptance <corpus dir> <sep binary>

#include "sep/run.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace sep;

namespace {

struct Checker {
    int failed = 0;
    int current = 0;
    bool current_ok = true;
    std::string first_note;

    void begin(int n) { current = n, current_ok = true, first_note.clear(); }
    void require(bool ok, const std::string& note)
    {
        if (!ok && current_ok) {
            current_ok = false;
            first_note = note;
        }
    }
    void end(const std::string& description)
    {
        std::cout << (current_ok ? "PASS" : "FAIL") << ": criterion " << current << ": "
                  << description;
        if (!current_ok) std::cout << " [" << first_note << "]";
        std::cout << std::endl;
        if (!current_ok) ++failed;
    }
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

run_detail::Env load_env(const std::string& path, const Budget& budget)
{
    Manifest m = parse_manifest(read_file(path));
    run_detail::Env env;
    for (const auto& st : m.statements) run_detail::declare(env, st, budget);
    return env;
}

struct Exec {
    int exit_code;
    std::string output;
};

Exec run_cli(const std::string& cmd)
{
    std::string full = cmd + " 2>/dev/null";
    FILE* p = popen(full.c_str(), "r");
    if (!p) throw Error("popen failed");
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, std::move(out)};
}

Poly pp(const std::string& t, const std::vector<std::string>& ns) { return parse_poly(t, ns); }

bool ideal_of_ring_equal(const FpAlgebra& R, const std::vector<Poly>& a,
                         const std::vector<Poly>& b)
{
    return equal(R.relations().with_extra_gens(a), R.relations().with_extra_gens(b));
}

// F_p points of the rank-3 circular cover, by its three-branch
// parametrization; every tuple is verified against the relations.
PointSample sample_cover_points(const FpAlgebra& B, std::uint32_t p)
{
    PointSample s;
    s.prime = p;
    auto half = Fp(2, p).inverse().value();
    auto at = [&](std::uint64_t a) { return static_cast<std::uint32_t>(a % p); };
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t u = (std::uint64_t(x) * x + p - 1) % p;
        std::uint64_t v = (std::uint64_t(x) * x % p * x + p - x % p) % p;
        std::uint64_t plus = (1 + std::uint64_t(x)) % p * half % p;
        std::uint64_t minus = (1 + std::uint64_t(p) - x % p) % p * half % p;
        for (auto [y, z] : {std::pair<std::uint64_t, std::uint64_t>{plus, 0},
                            {minus, plus},
                            {0, minus}}) {
            std::vector<std::uint32_t> pt = {at(u), at(v), at(y), at(z)};
            for (const auto& r : B.relations().gens())
                if (detail::FpPoly::reduce(r, p).eval(pt, p) != 0)
                    throw Error("parametrized sample violates a relation");
            s.points.push_back(std::move(pt));
        }
    }
    return s;
}

TwoOpenScheme shifted_planes()
{
    auto A = FpAlgebra::polynomial_ring({"x", "z"});
    TwistSpec spec;
    spec.U = A;
    spec.invert = {pp("x", A.names())};
    spec.tau = {{1, pp("z + 1", {"x", "z", "inv1"})}};
    return build_twisted(spec);
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 3) {
        std::cerr << "usage: sep_acceptance <corpus dir> <sep binary>\n";
        return 2;
    }
    std::string corpus = argv[1];
    std::string bin = argv[2];
    Budget budget = global_budget();
    Checker ck;

    try {
        // ------------------------------------------------------------------
        ck.begin(1);
        {
            auto env = load_env(corpus + "/ex71.sep", budget);
            const auto& T = env.scheme("T");
            auto D = diagonal_closure(T, budget);
            auto cn = D.C.names();
            ck.require(cn == std::vector<std::string>{"X", "Z0", "Z1"},
                       "closure ring generators");
            ck.require(equal(D.C.relations(),
                             Ideal(cn, {pp("(1 - X)*Z0 - X*Z1", cn)})),
                       "closure ideal is not ((1-X)Z0 - X*Z1)");
            auto rep = separator_check(T, budget);
            ck.require(rep.verdict == SeparatorReport::Verdict::NoSeparator,
                       "verdict is not NoSeparator");
            ck.require(rep.failures.size() == 2, "expected two sided witnesses");
            if (rep.failures.size() == 2) {
                const auto& C = rep.closure->C;
                ck.require(rep.failures[0].side == 'U' && rep.failures[1].side == 'V',
                           "witness sides");
                ck.require(bool(rep.failures[0].witness_in_C) &&
                               ideal_of_ring_equal(C, rep.failures[0].witness_in_C->gens(),
                                                   {pp("X", cn), pp("(1 - X)*Z0", cn)}),
                           "U witness is not (X, (1-X)Z0)");
                ck.require(bool(rep.failures[1].witness_in_C) &&
                               ideal_of_ring_equal(C, rep.failures[1].witness_in_C->gens(),
                                                   {pp("1 - X", cn), pp("X*Z1", cn)}),
                           "V witness is not (1-X, X*Z1)");
                for (const auto& f : rep.failures)
                    ck.require(!C.relations().with_extra_gens(f.witness_in_C->gens()).is_unit(),
                               "witness ideal is the unit ideal");
            }
        }
        ck.end("twisted-plane reproduction: closure ideal ((1-X)Z0 - X*Z1), NoSeparator "
               "with both hypersurface witnesses, exact match");

        // ------------------------------------------------------------------
        ck.begin(2);
        {
            std::mt19937 rng(20240811);
            std::uniform_int_distribution<int> coeff(-3, 3);
            auto random_poly = [&](const std::vector<std::string>& ns, int maxdeg) {
                std::size_t n = ns.size();
                std::vector<Monomial> monos;
                Monomial m(n);
                std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i,
                                                                          std::uint32_t left) {
                    if (i == n) {
                        monos.push_back(m);
                        return;
                    }
                    for (std::uint32_t e = 0; e <= left; ++e) {
                        m.set_exp(i, e);
                        rec(i + 1, left - e);
                    }
                    m.set_exp(i, 0);
                };
                rec(0, maxdeg);
                Poly f(n);
                for (const auto& mo : monos) {
                    int c = coeff(rng);
                    if (c != 0 && coeff(rng) > 0)
                        f = f + Poly::term(n, mo, Rational(c));
                }
                return f;
            };

            std::vector<FpAlgebra> bases = {FpAlgebra::polynomial_ring({"x"}),
                                            FpAlgebra::polynomial_ring({"x", "y"})};
            // deterministic module-finite seeds: unit-scalar first elements
            std::vector<std::tuple<std::size_t, Poly, Poly>> cases = {
                {0, pp("2", {"x"}), pp("x", {"x"})},
                {1, pp("3", {"x", "y"}), pp("x*y - 1", {"x", "y"})},
            };
            int tested = 0, module_finite_checked = 0;
            while (tested < 50 || !cases.empty()) {
                std::size_t which;
                Poly s, t;
                if (!cases.empty()) {
                    std::tie(which, s, t) = cases.back();
                    cases.pop_back();
                } else {
                    which = tested % 2;
                    const auto& A = bases[which];
                    s = random_poly(A.names(), 2);
                    t = random_poly(A.names(), 2);
                }
                const auto& A = bases[which];
                if (s.is_zero() || t.is_zero()) continue;
                if (!is_regular_sequence(A, s, t, budget)) continue;
                ++tested;
                bool unit = A.relations().with_extra_gens({s, t}).is_unit(budget);
                auto v = flat_hypersurface(A, s, t, budget);
                ck.require(v.status == (unit ? FlatStatus::Flat : FlatStatus::NotFlat),
                           "hypersurface verdict disagrees with the unit-ideal test for (" +
                               A.elem_str(s) + ", " + A.elem_str(t) + ")");

                // realize A[T]/(sT - t) and cross-check module-finite sub-cases
                std::vector<std::string> ens = A.names();
                ens.push_back("T");
                std::vector<std::size_t> up(A.ngens());
                for (std::size_t i = 0; i < A.ngens(); ++i) up[i] = i;
                std::vector<Poly> rels;
                for (const auto& r : A.relations().gens())
                    rels.push_back(r.remap(ens.size(), up));
                rels.push_back(s.remap(ens.size(), up) * Poly::variable(ens.size(),
                                                                        ens.size() - 1) -
                               t.remap(ens.size(), up));
                FpAlgebra E(ens, Ideal(ens, rels));
                std::vector<Poly> imgs;
                for (std::size_t i = 0; i < A.ngens(); ++i)
                    imgs.push_back(Poly::variable(ens.size(), i));
                RingMap ext(A, E, imgs, budget);
                if (auto w = module_finite_witness(ext, budget)) {
                    ++module_finite_checked;
                    auto M = module_presentation(
                        ext, choose_module_generators(ext, *w, 5, budget), 5, budget);
                    auto sample = enumerate_points(A, 101);
                    auto prof = fiber_profile(M, sample);
                    if (v.status == FlatStatus::Flat)
                        ck.require(prof.constant(), "flat case with a fiber-length jump");
                    else
                        ck.require(!prof.constant() || prof.points < 2,
                                   "non-flat case with constant fiber length");
                }
            }
            ck.require(tested >= 50, "fewer than 50 regular-sequence cases");
            ck.require(module_finite_checked >= 2, "no module-finite sub-cases exercised");
        }
        ck.end("hypersurface criterion property suite: >= 50 randomized regular sequences, "
               "flat iff unit ideal, F_101 fiber oracle on module-finite sub-cases");

        // ------------------------------------------------------------------
        ck.begin(3);
        {
            auto env = load_env(corpus + "/crossing_lines.sep", budget);
            const auto& T = env.scheme("T");
            auto D = diagonal_closure(T, budget);
            auto cn = D.C.names();
            ck.require(equal(D.C.relations(), Ideal(cn, {pp("Y", cn)})),
                       "closure ring is not A/(Y) = QQ[X]");
            // explicit finite-module path over the chart
            auto w = module_finite_witness(D.fromU, budget);
            ck.require(bool(w), "chart map is not visibly module-finite");
            if (w) {
                auto M = module_presentation(
                    D.fromU, choose_module_generators(D.fromU, *w, 5, budget), 5, budget);
                auto v = flat_finite(M, T.chartU().connected_certified(budget), budget);
                ck.require(v.status == FlatStatus::NotFlat, "flat_finite is not NotFlat");
                ck.require(bool(v.witness) &&
                               equal(*v.witness, Ideal(T.chartU().names(),
                                                       {pp("Y", T.chartU().names())})),
                           "witness is not the Fitting ideal (Y)");
            }
            auto rep = separator_check(T, budget);
            ck.require(rep.verdict == SeparatorReport::Verdict::NoSeparator,
                       "verdict is not NoSeparator");
        }
        ck.end("crossing-lines doubled: closure is A/(Y) = QQ[X], flat_finite NotFlat over "
               "the chart, NoSeparator");

        // ------------------------------------------------------------------
        ck.begin(4);
        {
            auto env = load_env(corpus + "/doubled_line.sep", budget);
            const auto& T = env.scheme("T");
            auto rep = separator_check(T, budget);
            ck.require(rep.verdict == SeparatorReport::Verdict::SeparatorExists,
                       "verdict is not SeparatorExists");
            if (rep.separator) {
                const auto& E = *rep.separator;
                ck.require(E.overlap().names() == std::vector<std::string>{"x"} &&
                               E.overlap().relations().is_zero(),
                           "gluing ring is not QQ[x]");
                for (const RingMap* mp : {&E.rhoU(), &E.rhoV()})
                    ck.require(is_injective(*mp, budget) && is_surjective(*mp, budget),
                               "a chart map is not an isomorphism");
                ck.require(is_separated(E, budget), "separator is not separated");
            }
            auto ns = T.chartU().names();
            ck.require(identified_in_separator(T, {'U', {pp("x", ns)}},
                                               {'V', {pp("x", ns)}},
                                               budget) == IdentifyResult::Identified,
                       "origins not identified");
            ck.require(identified_in_separator(T, {'U', {pp("x - 1", ns)}},
                                               {'V', {pp("x - 2", ns)}},
                                               budget) == IdentifyResult::Distinct,
                       "translates not distinct");
        }
        ck.end("doubled line: separator exists, gluing ring QQ[x], chart maps certified "
               "isomorphisms, separated, origins identified and translates distinct");

        // ------------------------------------------------------------------
        ck.begin(5);
        {
            auto env = load_env(corpus + "/ex72.sep", budget);
            const auto& phi = env.map("phi");
            const auto& A3 = phi.target();
            auto an = A3.names();
            for (const char* e : {"e1", "e2", "1 - e1 - e2", "t*e1", "t*e2",
                                  "t*(1 - e1 - e2)"}) {
                ck.require(in_image(phi, pp(e, an), budget),
                           std::string("exact membership failed for ") + e);
                ck.require(truncated_membership(A3, pp(e, an), phi.images(), 4, 101,
                                                budget) == Membership::Yes,
                           std::string("truncated membership failed for ") + e);
            }
            ck.require(is_surjective(phi, budget),
                       "phi is not surjective onto the three-line ring");
            auto vnrm = flat_of_map(env.map("nrm"), budget);
            ck.require(vnrm.status == FlatStatus::NotFlat,
                       "normalization is not NotFlat");
            auto vet = is_etale(env.map("inc"), budget);
            ck.require(vet.status == EtaleStatus::Etale, "cover is not etale");
            // conclusion: the image of the restriction-product map is the
            // three-line ring, which is not flat over the chart ring B
            auto vpsi = flat_of_map(env.map("psi"), budget);
            ck.require(vpsi.status == FlatStatus::NotFlat,
                       "Im(phi) = Abar^3 is flat over B?");
        }
        ck.end("etale counterexample: idempotents and branch coordinates certified in "
               "Im(phi) = Abar^3 (exact and mod 101), normalization NotFlat, cover Etale, "
               "conclusion NoSeparator");

        // ------------------------------------------------------------------
        ck.begin(6);
        {
            // basis determinism and normal-form idempotence
            std::vector<std::string> ns3 = {"x", "y", "z"};
            std::vector<Poly> gens = {pp("x^2*y - z^2", ns3), pp("x*z - y", ns3),
                                      pp("y^3 - x", ns3)};
            for (auto ord : {MonomialOrder::grevlex(), MonomialOrder::lex()}) {
                Ideal a(ns3, gens), b(ns3, gens);
                ck.require(a.groebner(ord, budget) == b.groebner(ord, budget),
                           "basis recomputation differs");
            }
            Ideal I(ns3, gens);
            Poly f = pp("x^4*y^2 - 3*z^3 + x - 1/2", ns3);
            ck.require(I.normal_form(f) == I.normal_form(I.normal_form(f)),
                       "normal form not idempotent");

            // separator_check symmetry under chart swap
            for (const char* file : {"/ex71.sep", "/doubled_line.sep",
                                     "/crossing_lines.sep"}) {
                auto env = load_env(corpus + file, budget);
                const auto& T = env.scheme("T");
                auto a = separator_check(T, budget);
                auto b = separator_check(T.swapped(), budget);
                ck.require(a.verdict == b.verdict,
                           std::string("swap changes the verdict for ") + file);
                ck.require(a.failures.size() == b.failures.size(),
                           std::string("swap changes the witness count for ") + file);
            }

            // construction soundness on every scheme with a separator
            {
                auto env = load_env(corpus + "/doubled_line.sep", budget);
                std::vector<TwoOpenScheme> existing = {env.scheme("T"), shifted_planes()};
                for (const auto& T : existing) {
                    auto rep = separator_check(T, budget);
                    ck.require(rep.verdict == SeparatorReport::Verdict::SeparatorExists,
                               "expected a separator");
                    if (!rep.separator) continue;
                    ck.require(is_separated(*rep.separator, budget),
                               "constructed separator not separated");
                    ck.require(is_epimorphism(rep.separator->rhoU(), budget) &&
                                   is_epimorphism(rep.separator->rhoV(), budget),
                               "chart map is not an epimorphism");
                    ck.require(rep.flatU->status == FlatStatus::Flat &&
                                   rep.flatV->status == FlatStatus::Flat,
                               "chart map is not flat");
                    ck.require(is_injective(rep.closure->intoC0, budget),
                               "closure does not embed into the overlap ring");
                    // the restrictions factor through the closure
                    for (std::size_t i = 0; i < T.chartU().ngens(); ++i)
                        ck.require(
                            T.overlap().elems_equal(
                                rep.closure->intoC0.apply(
                                    rep.closure->fromU.images()[i], budget),
                                T.rhoU().images()[i], budget),
                            "rhoU does not factor through the closure");
                }
            }

            // Fitting chain monotonicity on corpus modules
            {
                auto env = load_env(corpus + "/ex72.sep", budget);
                for (const char* mp : {"nrm", "inc"}) {
                    const auto& m = env.map(mp);
                    auto w = module_finite_witness(m, budget);
                    ck.require(bool(w), "missing witness");
                    if (!w) continue;
                    auto M = module_presentation(
                        m, choose_module_generators(m, *w, 5, budget), 5, budget);
                    auto fits = fitting_ideals(M, budget);
                    for (std::size_t k = 0; k + 1 < fits.size(); ++k)
                        ck.require(fits[k + 1].contains(fits[k], budget),
                                   "Fitting chain not increasing");
                }
            }

            // oracle agreement on all corpus module-finite maps
            {
                auto env72 = load_env(corpus + "/ex72.sep", budget);
                auto envx = load_env(corpus + "/crossing_lines.sep", budget);
                auto envd = load_env(corpus + "/doubled_line.sep", budget);
                auto Dx = diagonal_closure(envx.scheme("T"), budget);
                auto Dd = diagonal_closure(envd.scheme("T"), budget);

                struct Case {
                    RingMap map;
                    bool expect_flat;
                    bool sampled_cover;
                };
                std::vector<Case> cases = {{env72.map("nrm"), false, false},
                                           {env72.map("inc"), true, false},
                                           {env72.map("psi"), false, true},
                                           {Dx.fromU, false, false},
                                           {Dd.fromU, true, false}};
                for (auto& c : cases) {
                    auto w = module_finite_witness(c.map, budget);
                    ck.require(bool(w), "corpus map lost its witness");
                    if (!w) continue;
                    auto M = module_presentation(
                        c.map, choose_module_generators(c.map, *w, 5, budget), 5, budget);
                    for (std::uint32_t p : {101u, 103u}) {
                        PointSample sample =
                            c.sampled_cover ? sample_cover_points(c.map.source(), p)
                                            : enumerate_points(c.map.source(), p);
                        auto prof = fiber_profile(M, sample);
                        if (c.expect_flat)
                            ck.require(prof.constant(), "flat map with a length jump");
                        else
                            ck.require(!prof.constant(),
                                       "non-flat map without a length jump");
                    }
                }
            }
        }
        ck.end("invariant suites: basis determinism and idempotence, chart-swap symmetry, "
               "construction soundness certificates, Fitting chain monotonicity, oracle "
               "agreement on all corpus module-finite maps over F_101 and F_103");

        // ------------------------------------------------------------------
        ck.begin(7);
        {
            for (const char* name : {"trivial_glue", "doubled_line", "crossing_lines",
                                     "ex71", "ex72"}) {
                std::string f = corpus + "/" + name + ".sep";
                auto a = run_cli(bin + " check " + f + " --format json");
                auto b = run_cli(bin + " check " + f + " --format json");
                ck.require(a.exit_code == 0,
                           std::string("clean run exit code nonzero for ") + name);
                ck.require(a.output == b.output && !a.output.empty(),
                           std::string("JSON not byte-identical for ") + name);
                auto c = run_cli(bin + " check " + f + " --strict-expect " + corpus + "/" +
                                 name + ".expect.json");
                ck.require(c.exit_code == 0,
                           std::string("expected verdicts mismatch for ") + name);
            }
            // intentional expectation mismatch exits 1
            {
                std::string tmp = corpus + "/../build/acceptance_bad_expect.json";
                std::ofstream(tmp) << "{\"verdicts\": [\"Separated\", \"SeparatorExists\", "
                                      "\"SeparatorExists\"]}";
                auto r = run_cli(bin + " check " + corpus + "/trivial_glue.sep "
                                                            "--strict-expect " + tmp);
                ck.require(r.exit_code == 1, "mismatch did not exit 1");
            }
            // syntax errors exit 2
            {
                std::string tmp = corpus + "/../build/acceptance_bad_syntax.sep";
                std::ofstream(tmp) << "ring A = QQ[x]/(x\n";
                auto r = run_cli(bin + " check " + tmp);
                ck.require(r.exit_code == 2, "syntax error did not exit 2");
            }
        }
        ck.end("CLI determinism: byte-identical JSON across two runs of the full corpus; "
               "exit codes 0/1/2 per contract");
    } catch (const std::exception& e) {
        std::cout << "FAIL: acceptance suite aborted: " << e.what() << std::endl;
        return 1;
    }

    if (ck.failed) {
        std::cout << ck.failed << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
}
