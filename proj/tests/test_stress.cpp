#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace septest;

// Classic benchmark systems, well beyond anything the corpus needs. The
// reduced basis is unique per order, so the pinned sizes are regression
// anchors, not tolerances.

namespace {

void check_reduced(const Ideal& I, const MonomialOrder& ord)
{
    const auto& basis = I.groebner(ord);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK(basis[i].leading_term(ord).second == 1);
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (i != j)
                CHECK_FALSE(basis[j].leading_term(ord).first.divides(
                    basis[i].leading_term(ord).first));
    }
    for (const auto& g : I.gens()) CHECK(I.normal_form(g, ord).is_zero());
}

} // namespace

TEST_CASE("cyclic-4")
{
    auto ns = vars({"a", "b", "c", "d"});
    Ideal I(ns, {P("a + b + c + d", ns), P("a*b + b*c + c*d + d*a", ns),
                 P("a*b*c + b*c*d + c*d*a + d*a*b", ns), P("a*b*c*d - 1", ns)});
    CHECK(I.groebner(MonomialOrder::grevlex()).size() == 7);
    CHECK(I.groebner(MonomialOrder::lex()).size() == 6);
    check_reduced(I, MonomialOrder::grevlex());
    check_reduced(I, MonomialOrder::lex());
}

TEST_CASE("katsura-4")
{
    auto ns = vars({"x0", "x1", "x2", "x3"});
    Ideal I(ns, {P("x0 + 2*x1 + 2*x2 + 2*x3 - 1", ns),
                 P("x0^2 + 2*x1^2 + 2*x2^2 + 2*x3^2 - x0", ns),
                 P("2*x0*x1 + 2*x1*x2 + 2*x2*x3 - x1", ns),
                 P("x1^2 + 2*x0*x2 + 2*x1*x3 - x2", ns)});
    CHECK(I.groebner(MonomialOrder::grevlex()).size() == 7);
    check_reduced(I, MonomialOrder::grevlex());
}

TEST_CASE("cyclic-5")
{
    auto ns = vars({"a", "b", "c", "d", "e"});
    Ideal I(ns, {P("a + b + c + d + e", ns), P("a*b + b*c + c*d + d*e + e*a", ns),
                 P("a*b*c + b*c*d + c*d*e + d*e*a + e*a*b", ns),
                 P("a*b*c*d + b*c*d*e + c*d*e*a + d*e*a*b + e*a*b*c", ns),
                 P("a*b*c*d*e - 1", ns)});
    CHECK(I.groebner(MonomialOrder::grevlex()).size() == 20);
    check_reduced(I, MonomialOrder::grevlex());
}
