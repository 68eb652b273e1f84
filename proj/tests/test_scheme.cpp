#include "support.hpp"

#include "sep/scheme.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace septest;

namespace {

// Two planes glued along X != 0, 1 - X != 0, one inclusion twisted by
// Z -> X*Z/(1-X). Regular of dimension 2, admits no separator.
TwoOpenScheme twisted_plane()
{
    auto A = FpAlgebra::polynomial_ring(vars({"X", "Z"}));
    TwistSpec spec;
    spec.U = A;
    spec.invert = {P("X", A.names()), P("1 - X", A.names())};
    // tau(Z) = X * Z * inv(1 - X), expressed in Gamma(U0) after both
    // localizations: inv(X) = inv1, inv(1 - X) = inv2.
    auto c0names = vars({"X", "Z", "inv1", "inv2"});
    spec.tau = {{1, P("X*Z*inv2", c0names)}};
    return build_twisted(spec);
}

TwoOpenScheme doubled_line()
{
    auto A = FpAlgebra::polynomial_ring(vars({"x"}));
    TwistSpec spec;
    spec.U = A;
    spec.invert = {P("x", A.names())};
    return build_twisted(spec);
}

TwoOpenScheme crossing_lines_doubled()
{
    auto ns = vars({"X", "Y"});
    FpAlgebra A(ns, Ideal(ns, {P("X*Y", ns)}));
    A.assert_connected(); // two lines through the origin: connected, not integral
    TwistSpec spec;
    spec.U = A;
    spec.invert = {P("X", ns)};
    return build_twisted(spec);
}

TwoOpenScheme trivial_glue()
{
    auto A = FpAlgebra::polynomial_ring(vars({"x"}));
    TwistSpec spec;
    spec.U = A;
    return build_twisted(spec);
}

} // namespace

TEST_CASE("twisted recollement construction")
{
    SECTION("the twisted plane records the twist on the U side")
    {
        auto T = twisted_plane();
        CHECK(T.chartU().names() == vars({"X", "Z"}));
        CHECK(T.overlap().names() == vars({"X", "Z", "inv1", "inv2"}));
        auto c0 = T.overlap();
        // rhoU(Z) = X*Z*inv2, rhoV(Z) = Z
        CHECK(c0.elems_equal(T.rhoU().images()[1], P("X*Z*inv2", c0.names())));
        CHECK(c0.elems_equal(T.rhoV().images()[1], P("Z", c0.names())));
        CHECK(T.integral_asserted());
    }
    SECTION("a twist that is not an automorphism is rejected")
    {
        auto A = FpAlgebra::polynomial_ring(vars({"x", "z"}));
        TwistSpec spec;
        spec.U = A;
        spec.invert = {P("x", A.names())};
        auto c0names = vars({"x", "z", "inv1"});
        spec.tau = {{1, P("z^2", c0names)}};
        CHECK_THROWS_AS(build_twisted(spec), Error);
    }
    SECTION("degenerate gluing along the whole chart")
    {
        auto T = trivial_glue();
        CHECK(T.overlap().names() == vars({"x"}));
        CHECK(is_separated(T));
    }
}

TEST_CASE("user-declared gluings are validated structurally")
{
    auto A = FpAlgebra::polynomial_ring(vars({"x"}));
    auto ns = vars({"x", "w"});
    FpAlgebra C0(ns, Ideal(ns, {P("x*w - 1", ns)}));

    SECTION("a canonical localization pair is accepted")
    {
        auto T = glue_scheme(A, A, C0, {P("x", ns)}, {P("x", ns)});
        CHECK(T.rhoU().shape() == MapShape::LocChain);
        CHECK_FALSE(is_separated(T));
    }
    SECTION("non-localization restriction maps are rejected")
    {
        CHECK_THROWS_AS(glue_scheme(A, A, C0, {P("x^2", ns)}, {P("x", ns)}), Error);
        FpAlgebra notloc = FpAlgebra::polynomial_ring(ns);
        CHECK_THROWS_AS(
            glue_scheme(A, A, notloc, {P("x", ns)}, {P("x", ns)}), Error);
    }
}

TEST_CASE("diagonal closure")
{
    SECTION("twisted plane: the closure ring is cut out by (1-X)Z0 - X*Z1")
    {
        auto D = diagonal_closure(twisted_plane());
        CHECK(D.C.names() == vars({"X", "Z0", "Z1"}));
        auto ns = D.C.names();
        CHECK(equal(D.C.relations(), Ideal(ns, {P("(1 - X)*Z0 - X*Z1", ns)})));
        CHECK(is_injective(D.intoC0));
    }
    SECTION("doubled line: the closure ring is the affine line")
    {
        auto D = diagonal_closure(doubled_line());
        CHECK(D.C.names() == vars({"x"}));
        CHECK(D.C.relations().is_zero());
    }
    SECTION("crossing lines: the V-side chart map presents A/(Y)")
    {
        auto D = diagonal_closure(crossing_lines_doubled());
        auto ns = D.C.names();
        REQUIRE(ns == vars({"X", "Y"}));
        CHECK(equal(D.C.relations(), Ideal(ns, {P("Y", ns)})));
        CHECK(is_surjective(D.fromV)); // a quotient presentation of the chart
    }
}

TEST_CASE("separatedness via surjectivity of the restriction map")
{
    CHECK(is_separated(trivial_glue()));
    CHECK_FALSE(is_separated(doubled_line()));
    CHECK_FALSE(is_separated(twisted_plane()));
}

TEST_CASE("schematic dominance of the diagonal")
{
    CHECK(diagonal_dominant(twisted_plane()) == TriState::Yes); // structural domains
    CHECK(diagonal_dominant(doubled_line()) == TriState::Yes);
    CHECK(diagonal_dominant(crossing_lines_doubled()) == TriState::Undecided);
}

TEST_CASE("separator existence and construction")
{
    SECTION("twisted plane: no separator, witnessed on both chart sides")
    {
        auto rep = separator_check(twisted_plane());
        REQUIRE(rep.verdict == SeparatorReport::Verdict::NoSeparator);
        REQUIRE(rep.failures.size() == 2);
        const auto& C = rep.closure->C;
        auto cn = C.names();
        REQUIRE(rep.failures[0].side == 'U');
        REQUIRE(rep.failures[0].witness_in_C);
        CHECK(equal(C.relations().with_extra_gens(rep.failures[0].witness_in_C->gens()),
                    C.relations().with_extra_gens({P("X", cn), P("(1 - X)*Z0", cn)})));
        REQUIRE(rep.failures[1].side == 'V');
        REQUIRE(rep.failures[1].witness_in_C);
        CHECK(equal(C.relations().with_extra_gens(rep.failures[1].witness_in_C->gens()),
                    C.relations().with_extra_gens({P("1 - X", cn), P("X*Z1", cn)})));
        // both witnesses are genuinely non-unit in C
        for (const auto& f : rep.failures)
            CHECK_FALSE(C.relations().with_extra_gens(f.witness_in_C->gens()).is_unit());
    }
    SECTION("doubled line: separator exists with the affine line as gluing ring")
    {
        auto rep = separator_check(doubled_line());
        REQUIRE(rep.verdict == SeparatorReport::Verdict::SeparatorExists);
        REQUIRE(rep.separator);
        const auto& E = *rep.separator;
        CHECK(E.overlap().names() == vars({"x"}));
        CHECK(E.overlap().relations().is_zero());
        // both chart maps are isomorphisms
        for (const RingMap* m : {&E.rhoU(), &E.rhoV()}) {
            CHECK(is_injective(*m));
            CHECK(is_surjective(*m));
        }
        CHECK(is_separated(E));
    }
    SECTION("crossing lines: no separator despite uncertified dominance")
    {
        auto rep = separator_check(crossing_lines_doubled());
        REQUIRE(rep.verdict == SeparatorReport::Verdict::NoSeparator);
        CHECK(rep.dominance == TriState::Undecided);
        REQUIRE(!rep.failures.empty());
        for (const auto& f : rep.failures) {
            CHECK(f.verdict.method == FlatMethod::Fitting);
            REQUIRE(f.verdict.witness);
        }
    }
    SECTION("already separated schemes are returned untouched")
    {
        auto rep = separator_check(trivial_glue());
        CHECK(rep.verdict == SeparatorReport::Verdict::AlreadySeparated);
        CHECK_FALSE(rep.closure.has_value());
    }
    SECTION("verdicts are symmetric under chart swap")
    {
        for (auto make : {&twisted_plane, &doubled_line, &crossing_lines_doubled}) {
            auto T = make();
            auto a = separator_check(T);
            auto b = separator_check(T.swapped());
            CHECK(a.verdict == b.verdict);
            if (a.verdict == SeparatorReport::Verdict::NoSeparator) {
                REQUIRE(a.failures.size() == b.failures.size());
                for (std::size_t i = 0; i < a.failures.size(); ++i) {
                    char mirrored = a.failures[i].side == 'U' ? 'V' : 'U';
                    bool found = false;
                    for (const auto& g : b.failures)
                        found = found || g.side == mirrored;
                    CHECK(found);
                }
            }
        }
    }
}

TEST_CASE("apparented points")
{
    auto T = doubled_line();
    auto ns = T.chartU().names();
    PointRef originU{'U', {P("x", ns)}};
    PointRef originV{'V', {P("x", ns)}};
    PointRef oneU{'U', {P("x - 1", ns)}};
    PointRef twoV{'V', {P("x - 2", ns)}};

    SECTION("the two origins are apparented, distinct translates are not")
    {
        CHECK(apparented(T, originU, originV));
        CHECK_FALSE(apparented(T, oneU, twoV));
    }
    SECTION("reflexivity on the common open")
    {
        PointRef pU{'U', {P("x - 2", ns)}};
        CHECK(apparented(T, pU, twoV));
    }
    SECTION("twisted plane: points exchanged by the twist are apparented")
    {
        auto W = twisted_plane();
        auto wn = W.chartU().names();
        PointRef xU{'U', {P("X - 1/2", wn), P("Z", wn)}};
        PointRef yV{'V', {P("X - 1/2", wn), P("Z", wn)}};
        CHECK(apparented(W, xU, yV));
        PointRef zV{'V', {P("X - 1/2", wn), P("Z - 1", wn)}};
        CHECK_FALSE(apparented(W, xU, zV));
    }
    SECTION("non-maximal or non-rational ideals are rejected")
    {
        PointRef bad{'U', {P("x^2 - 2", ns)}}; // irrational point
        CHECK_THROWS_AS(apparented(T, bad, originV), Error);
        PointRef unit{'U', {P("1", ns)}};
        CHECK_THROWS_AS(apparented(T, unit, originV), Error);
    }
}

TEST_CASE("identification in the separator")
{
    auto T = doubled_line();
    auto ns = T.chartU().names();
    CHECK(identified_in_separator(T, {'U', {P("x", ns)}}, {'V', {P("x", ns)}}) ==
          IdentifyResult::Identified);
    CHECK(identified_in_separator(T, {'U', {P("x - 1", ns)}}, {'V', {P("x - 2", ns)}}) ==
          IdentifyResult::Distinct);

    auto W = twisted_plane();
    auto wn = W.chartU().names();
    CHECK(identified_in_separator(W, {'U', {P("X - 1/2", wn), P("Z", wn)}},
                                  {'V', {P("X - 1/2", wn), P("Z", wn)}}) ==
          IdentifyResult::NoSeparator);
}

TEST_CASE("dominance via explicit integrality assertion")
{
    // the nodal cubic is a domain but outside the structural rules; the
    // doubled scheme needs the user assertion to certify dominance
    auto ns = vars({"u", "v"});
    FpAlgebra A(ns, Ideal(ns, {P("u^3 + u^2 - v^2", ns)}));
    TwistSpec spec;
    spec.U = A;
    spec.invert = {P("u", ns)};
    auto T = build_twisted(spec);
    CHECK(diagonal_dominant(T) == TriState::Undecided);
    T.assert_integral();
    CHECK(diagonal_dominant(T) == TriState::Yes);
}

TEST_CASE("flat chart maps without certified dominance stay undecided")
{
    // crossing lines doubled along the complement of x + y - 1: the closure
    // ring is the chart itself (flat on both sides), but integrality cannot
    // be certified, so the positive direction is withheld honestly.
    auto ns = vars({"x", "y"});
    FpAlgebra A(ns, Ideal(ns, {P("x*y", ns)}));
    A.assert_connected();
    TwistSpec spec;
    spec.U = A;
    spec.invert = {P("x + y - 1", ns)};
    auto T = build_twisted(spec);
    auto rep = separator_check(T);
    CHECK(rep.verdict == SeparatorReport::Verdict::Undecided);
    CHECK(rep.flatU->status == FlatStatus::Flat);
    CHECK(rep.flatV->status == FlatStatus::Flat);
    CHECK(rep.reason.find("dominance") != std::string::npos);
}

TEST_CASE("inverting a nilpotent empties the overlap")
{
    auto ns = vars({"x"});
    FpAlgebra A(ns, Ideal(ns, {P("x^2", ns)}));
    TwistSpec spec;
    spec.U = A;
    spec.invert = {P("x", ns)};
    auto T = build_twisted(spec);
    CHECK(T.overlap().is_zero_ring());
    // the charts are disjoint, hence already separated
    CHECK(is_separated(T));
    CHECK(separator_check(T).verdict == SeparatorReport::Verdict::AlreadySeparated);
}

TEST_CASE("a twist permuting the inverted elements")
{
    // line doubled along x(1-x) != 0 with the coordinate flip x -> 1 - x;
    // the inverses of the inverted elements are transported through the flip
    auto A = FpAlgebra::polynomial_ring(vars({"x"}));
    TwistSpec spec;
    spec.U = A;
    spec.invert = {P("x", A.names()), P("1 - x", A.names())};
    spec.tau = {{0, P("1 - x", vars({"x", "inv1", "inv2"}))}};
    auto T = build_twisted(spec);

    auto rep = separator_check(T);
    REQUIRE(rep.verdict == SeparatorReport::Verdict::SeparatorExists);
    // the flip identifies the U-origin with the V-point at 1
    auto ns = A.names();
    CHECK(apparented(T, {'U', {P("x", ns)}}, {'V', {P("x - 1", ns)}}));
    CHECK_FALSE(apparented(T, {'U', {P("x", ns)}}, {'V', {P("x - 2", ns)}}));
}

TEST_CASE("closure chart maps of the doubled line are epimorphisms")
{
    auto D = diagonal_closure(doubled_line());
    CHECK(is_epimorphism(D.fromU));
    CHECK(is_epimorphism(D.fromV));
}

TEST_CASE("the twist direction pairs points as the gluing does")
{
    // On the twisted plane at X = 1/3 the overlap point with Z = z restricts
    // to Z = z/2 on the twisted chart and Z = z on the other, so the U-point
    // with Z = 1 pairs with the V-point with Z = 2 and with nothing else.
    auto W = twisted_plane();
    auto ns = W.chartU().names();
    PointRef u1{'U', {P("X - 1/3", ns), P("Z - 1", ns)}};
    PointRef v2{'V', {P("X - 1/3", ns), P("Z - 2", ns)}};
    PointRef v1{'V', {P("X - 1/3", ns), P("Z - 1", ns)}};
    CHECK(apparented(W, u1, v2));
    CHECK_FALSE(apparented(W, u1, v1));
}

TEST_CASE("the projective line is separated")
{
    // two distinct affine lines glued along the punctured line, second chart
    // arriving through the inverse coordinate: w is the U-side coordinate
    // inverse, x is the V-side one
    auto A = FpAlgebra::polynomial_ring(vars({"x"}));
    auto B = FpAlgebra::polynomial_ring(vars({"y"}));
    auto ns = vars({"x", "w"});
    FpAlgebra C0(ns, Ideal(ns, {P("x*w - 1", ns)}));
    auto T = glue_scheme(A, B, C0, {P("x", ns)}, {P("w", ns)});
    CHECK(is_separated(T));
    CHECK(separator_check(T).verdict == SeparatorReport::Verdict::AlreadySeparated);
}
