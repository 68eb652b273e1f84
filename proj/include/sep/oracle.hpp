#pragma once

// Brute-force finite-field cross-checks, independent of the Groebner path:
// exhaustive point enumeration, fiber lengths of module-finite maps by
// specializing a certified presentation, and degree-truncated subalgebra
// membership by linear algebra mod p.

#include "sep/linalg.hpp"
#include "sep/module.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sep {

// Raised when an input cannot be reduced mod p (p divides a denominator);
// callers skip and log such inputs rather than failing the run.
struct OracleSkip : Error {
    explicit OracleSkip(const std::string& what) : Error(what) {}
};

namespace detail {

struct FpPoly {
    std::vector<std::pair<Monomial, std::uint32_t>> terms;

    static FpPoly reduce(const Poly& f, std::uint32_t p)
    {
        FpPoly r;
        for (const auto& [m, c] : f.terms()) {
            std::uint32_t v;
            if (!rational_mod_p(c, p, v))
                throw OracleSkip("coefficient denominator vanishes mod " + std::to_string(p));
            if (v != 0) r.terms.emplace_back(m, v);
        }
        return r;
    }

    std::uint32_t eval(const std::vector<std::uint32_t>& point, std::uint32_t p) const
    {
        std::uint64_t acc = 0;
        for (const auto& [m, c] : terms) {
            std::uint64_t t = c;
            for (std::size_t i = 0; i < m.nvars(); ++i)
                for (std::uint32_t e = 0; e < m.exp(i); ++e) t = t * point[i] % p;
            acc = (acc + t) % p;
        }
        return static_cast<std::uint32_t>(acc);
    }
};

} // namespace detail

struct PointSample {
    std::uint32_t prime = 0;
    std::vector<std::vector<std::uint32_t>> points;
};

// Exhaustive F_p-rational points of Spec A. Budget: at most 4 generators,
// p <= 257, and p^n below a fixed scan cap.
inline PointSample enumerate_points(const FpAlgebra& A, std::uint32_t p)
{
    std::size_t n = A.ngens();
    if (n > 4 || p > 257) throw BudgetError("point enumeration budget exceeded");
    double scan = 1;
    for (std::size_t i = 0; i < n; ++i) scan *= p;
    if (scan > double(1 << 24)) throw BudgetError("point enumeration budget exceeded");

    std::vector<detail::FpPoly> rels;
    for (const auto& r : A.relations().gens()) rels.push_back(detail::FpPoly::reduce(r, p));

    PointSample s;
    s.prime = p;
    std::vector<std::uint32_t> point(n, 0);
    for (;;) {
        bool ok = true;
        for (const auto& r : rels)
            if (r.eval(point, p) != 0) {
                ok = false;
                break;
            }
        if (ok) s.points.push_back(point);
        std::size_t i = 0;
        while (i < n && ++point[i] == p) point[i++] = 0;
        if (i == n) break;
        if (n == 0) break;
    }
    return s;
}

// F_p-dimension of (target ⊗ residue field) at a source point, by rank of
// the specialized presentation matrix.
inline std::uint32_t fiber_length(const PresentedModule& M,
                                  const std::vector<std::uint32_t>& point, std::uint32_t p)
{
    std::vector<std::vector<std::uint32_t>> mat;
    for (const auto& row : M.rows) {
        std::vector<std::uint32_t> r;
        for (const auto& e : row) r.push_back(detail::FpPoly::reduce(e, p).eval(point, p));
        mat.push_back(std::move(r));
    }
    std::size_t rk = mat.empty() ? 0 : rank_mod_p(std::move(mat), p);
    return static_cast<std::uint32_t>(M.ngens - rk);
}

// Convenience form on a module-finite map: builds the certified presentation.
inline std::uint32_t fiber_length(const RingMap& phi,
                                  const std::vector<std::uint32_t>& point, std::uint32_t p,
                                  const Budget& budget = global_budget())
{
    auto w = module_finite_witness(phi, budget);
    if (!w) throw Error("fiber length requires a module-finiteness witness");
    auto M = module_presentation(phi, choose_module_generators(phi, *w, 5, budget), 5, budget);
    return fiber_length(M, point, p);
}

struct FiberProfile {
    std::uint32_t min_length = 0;
    std::uint32_t max_length = 0;
    std::size_t points = 0;
    bool constant() const { return min_length == max_length; }
};

inline FiberProfile fiber_profile(const PresentedModule& M, const PointSample& sample)
{
    FiberProfile f;
    for (const auto& pt : sample.points) {
        std::uint32_t len = fiber_length(M, pt, sample.prime);
        if (f.points == 0) {
            f.min_length = f.max_length = len;
        } else {
            f.min_length = std::min(f.min_length, len);
            f.max_length = std::max(f.max_length, len);
        }
        ++f.points;
    }
    return f;
}

enum class Membership { Yes, NoWithinBound };

// Is f an F_p-combination of products (degree <= bound) of the subalgebra
// generators inside the ambient algebra? Normal forms are computed exactly
// and reduced mod p, so "Yes" is a finite-field certificate.
inline Membership truncated_membership(const FpAlgebra& ambient, const Poly& f,
                                       const std::vector<Poly>& subalgebra_gens,
                                       std::uint32_t bound, std::uint32_t p,
                                       const Budget& budget = global_budget())
{
    std::size_t m = subalgebra_gens.size();
    std::vector<Poly> products;
    std::vector<std::uint32_t> exps(m, 0);
    std::function<void(std::size_t, std::uint32_t, Poly)> rec =
        [&](std::size_t i, std::uint32_t left, Poly acc) {
            if (i == m) {
                products.push_back(ambient.normal_form(acc, budget));
                return;
            }
            Poly cur = acc;
            for (std::uint32_t e = 0; e <= left; ++e) {
                rec(i + 1, left - e, cur);
                if (e < left) cur = ambient.normal_form(cur * subalgebra_gens[i], budget);
            }
        };
    rec(0, bound, Poly::constant(ambient.ngens(), Rational(1)));

    std::map<std::vector<std::uint32_t>, std::size_t> row_of;
    auto row = [&](const Monomial& mo) {
        auto [it, fresh] = row_of.emplace(mo.exps(), row_of.size());
        (void)fresh;
        return it->second;
    };
    Poly fn = ambient.normal_form(f, budget);
    for (const auto& pr : products)
        for (const auto& [mo, c] : pr.terms()) row(mo);
    for (const auto& [mo, c] : fn.terms()) row(mo);

    std::vector<std::vector<std::uint32_t>> A(row_of.size(),
                                              std::vector<std::uint32_t>(products.size(), 0));
    std::vector<std::uint32_t> b(row_of.size(), 0);
    for (std::size_t j = 0; j < products.size(); ++j)
        for (const auto& [mo, c] : products[j].terms()) {
            std::uint32_t v;
            if (!rational_mod_p(c, p, v))
                throw OracleSkip("denominator vanishes mod " + std::to_string(p));
            A[row(mo)][j] = v;
        }
    for (const auto& [mo, c] : fn.terms()) {
        std::uint32_t v;
        if (!rational_mod_p(c, p, v))
            throw OracleSkip("denominator vanishes mod " + std::to_string(p));
        b[row(mo)] = v;
    }
    return solvable_mod_p(std::move(A), std::move(b), p) ? Membership::Yes
                                                         : Membership::NoWithinBound;
}

} // namespace sep
