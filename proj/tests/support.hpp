#pragma once

// Shared test helpers. The brute-force oracles here are independent of the
// Groebner path they cross-check: plain linear algebra over Q on
// degree-truncated monomial bases.

#include "sep/expr.hpp"
#include "sep/ideal.hpp"
#include "sep/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace septest {

using namespace sep;

inline std::vector<std::string> vars(std::initializer_list<const char*> ns)
{
    return {ns.begin(), ns.end()};
}

inline Poly P(const std::string& text, const std::vector<std::string>& names)
{
    return parse_poly(text, names);
}

inline void enumerate_monomials(std::size_t nvars, std::uint32_t max_deg,
                                std::vector<Monomial>& out)
{
    Monomial m(nvars);
    // degree-graded enumeration, deterministic order
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i,
                                                              std::uint32_t left) {
        if (i == nvars) {
            out.push_back(m);
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            m.set_exp(i, e);
            rec(i + 1, left - e);
        }
        m.set_exp(i, 0);
    };
    rec(0, max_deg);
}

// Is f an algebraic combination sum(h_i g_i) with deg h_i <= bound? Sound
// positive/negative within the bound; used to cross-check normal_form == 0.
inline bool ideal_member_truncated(const Poly& f, const std::vector<Poly>& gens,
                                   std::uint32_t bound)
{
    std::size_t n = f.nvars();
    std::vector<Monomial> cof;
    enumerate_monomials(n, bound, cof);

    // columns: (gen, cofactor monomial); rows: monomials of the products
    std::vector<Poly> cols;
    for (const auto& g : gens)
        for (const auto& mu : cof) cols.push_back(Poly::term(n, mu, Rational(1)) * g);

    std::map<std::vector<std::uint32_t>, std::size_t> row_of;
    auto row_index = [&](const Monomial& m) {
        auto [it, fresh] = row_of.emplace(m.exps(), row_of.size());
        (void)fresh;
        return it->second;
    };
    for (const auto& c : cols)
        for (const auto& [m, k] : c.terms()) row_index(m);
    for (const auto& [m, k] : f.terms()) row_index(m);

    std::vector<std::vector<Rational>> A(row_of.size(),
                                         std::vector<Rational>(cols.size(), Rational(0)));
    std::vector<Rational> b(row_of.size(), Rational(0));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [m, k] : cols[j].terms()) A[row_index(m)][j] = k;
    for (const auto& [m, k] : f.terms()) b[row_index(m)] = k;
    return solve_rational(std::move(A), std::move(b)).has_value();
}

} // namespace septest
