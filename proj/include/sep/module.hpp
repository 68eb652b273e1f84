#pragma once

// Module-finiteness witnesses and module presentations of a target algebra
// over the source of a ring map.
//
// A witness is a pure-power leading term per target generator in the graph
// ideal's elimination basis (a monic integral relation). Presentations are
// computed on a caller-visible generating set: spanning is certified by
// degree-bounded linear algebra over Q (mod-p only as a pruning heuristic),
// and the relation rows are complete because they come from a syzygy
// computation followed by module elimination of the target variables.

#include "sep/linalg.hpp"
#include "sep/modgb.hpp"
#include "sep/ringmap.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sep {

struct IntegralWitness {
    // degrees[i]: a monic relation of this degree holds for target generator i
    std::vector<std::uint32_t> degrees;
};

inline std::optional<IntegralWitness>
module_finite_witness(const RingMap& phi, const Budget& budget = global_budget())
{
    auto g = detail::graph_ring(phi);
    const auto& basis = g.ideal.groebner(MonomialOrder::block_mask(g.tgt_mask), budget);
    std::size_t nt = phi.target().ngens();
    IntegralWitness w;
    w.degrees.assign(nt, 0);
    auto ord = MonomialOrder::block_mask(g.tgt_mask);
    for (const auto& b : basis) {
        const Monomial& lt = b.leading_term(ord).first;
        std::size_t nz = 0, which = 0;
        for (std::size_t i = 0; i < lt.nvars(); ++i)
            if (lt.exp(i) != 0) {
                ++nz;
                which = i;
            }
        if (nz != 1 || !g.tgt_mask[which]) continue;
        for (std::size_t t = 0; t < nt; ++t)
            if (g.tgt[t] == which) {
                std::uint32_t d = lt.exp(which);
                if (w.degrees[t] == 0 || d < w.degrees[t]) w.degrees[t] = d;
            }
    }
    for (std::uint32_t d : w.degrees)
        if (d == 0) return std::nullopt;
    return w;
}

struct PresentedModule {
    FpAlgebra base;
    std::size_t ngens = 0;
    std::vector<std::vector<Poly>> rows; // entries in the base presentation ring
};

namespace detail {

// Sparse column assembly for the degree-bounded membership solves: each
// element of the target algebra becomes a coefficient vector over its normal
// form monomials.
struct SpanProblem {
    std::map<std::vector<std::uint32_t>, std::size_t> row_of;
    std::vector<std::vector<Rational>> columns;

    std::size_t row(const Monomial& m)
    {
        auto [it, fresh] = row_of.emplace(m.exps(), row_of.size());
        (void)fresh;
        return it->second;
    }
    void add_column(const Poly& nf)
    {
        std::vector<std::pair<std::size_t, Rational>> entries;
        for (const auto& [m, c] : nf.terms()) entries.emplace_back(row(m), c);
        std::vector<Rational> col;
        for (const auto& [r, c] : entries) {
            if (col.size() <= r) col.resize(r + 1, Rational(0));
            col[r] = c;
        }
        columns.push_back(std::move(col));
    }
};

inline std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint32_t bound)
{
    std::vector<Monomial> out;
    Monomial m(nvars);
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
    rec(0, bound);
    return out;
}

// The spanning conditions for module generators g over the image of phi:
// 1 must be an A-combination of the g's, and so must every product
// (target generator) * g_j. Returns the per-condition certificates.
inline std::vector<Poly> spanning_targets(const RingMap& phi, const std::vector<Poly>& gens)
{
    const auto& T = phi.target();
    std::vector<Poly> targets;
    targets.push_back(Poly::constant(T.ngens(), Rational(1)));
    for (std::size_t i = 0; i < T.ngens(); ++i)
        for (const auto& g : gens) targets.push_back(T.normal_form(T.gen(i) * g));
    return targets;
}

inline bool spanning_holds(const RingMap& phi, const std::vector<Poly>& gens,
                           std::uint32_t bound, bool exact,
                           const Budget& budget = global_budget())
{
    if (gens.empty()) return false;
    const auto& T = phi.target();
    auto monos = monomials_up_to(phi.source().ngens(), bound);

    SpanProblem sp;
    for (const auto& mu : monos) {
        Poly coeff = T.normal_form(
            Poly::term(phi.source().ngens(), mu, Rational(1))
                .substitute(phi.images(), T.ngens()),
            budget);
        for (const auto& g : gens) sp.add_column(T.normal_form(coeff * g, budget));
    }
    auto targets = spanning_targets(phi, gens);
    std::vector<std::vector<Rational>> rhs_cols;
    for (const auto& t : targets) {
        std::vector<Rational> col;
        for (const auto& [m, c] : t.terms()) {
            std::size_t r = sp.row(m);
            if (col.size() <= r) col.resize(r + 1, Rational(0));
            col[r] = c;
        }
        rhs_cols.push_back(std::move(col));
    }

    std::size_t nrows = sp.row_of.size();
    std::size_t ncols = sp.columns.size();
    if (exact) {
        std::vector<std::vector<Rational>> A(nrows, std::vector<Rational>(ncols, Rational(0)));
        for (std::size_t j = 0; j < ncols; ++j)
            for (std::size_t r = 0; r < sp.columns[j].size(); ++r) A[r][j] = sp.columns[j][r];
        std::vector<std::vector<Rational>> B(nrows,
                                             std::vector<Rational>(targets.size(), Rational(0)));
        for (std::size_t k = 0; k < rhs_cols.size(); ++k)
            for (std::size_t r = 0; r < rhs_cols[k].size(); ++r) B[r][k] = rhs_cols[k][r];
        for (bool ok : consistent_many(std::move(A), std::move(B)))
            if (!ok) return false;
        return true;
    }
    const std::uint32_t p = 10007; // pruning heuristic only
    std::vector<std::vector<std::uint32_t>> A(nrows, std::vector<std::uint32_t>(ncols, 0));
    for (std::size_t j = 0; j < ncols; ++j)
        for (std::size_t r = 0; r < sp.columns[j].size(); ++r) {
            std::uint32_t v;
            if (!rational_mod_p(sp.columns[j][r], p, v)) return false;
            A[r][j] = v;
        }
    std::vector<std::vector<std::uint32_t>> B(nrows,
                                              std::vector<std::uint32_t>(targets.size(), 0));
    for (std::size_t k = 0; k < rhs_cols.size(); ++k)
        for (std::size_t r = 0; r < rhs_cols[k].size(); ++r) {
            std::uint32_t v;
            if (!rational_mod_p(rhs_cols[k][r], p, v)) return false;
            B[r][k] = v;
        }
    for (bool ok : consistent_many_mod_p(std::move(A), std::move(B), p))
        if (!ok) return false;
    return true;
}

} // namespace detail

// Monomials under the witness staircase always generate the target as a
// source module; greedy pruning (mod-p heuristic) shrinks the set, and the
// final set is certified exactly over Q.
inline std::vector<Poly> choose_module_generators(const RingMap& phi,
                                                  const IntegralWitness& witness,
                                                  std::uint32_t span_bound = 5,
                                                  const Budget& budget = global_budget())
{
    const auto& T = phi.target();
    std::size_t nt = T.ngens();
    std::vector<Poly> staircase;
    std::function<void(std::size_t, Monomial)> rec = [&](std::size_t i, Monomial m) {
        if (i == nt) {
            staircase.push_back(T.normal_form(Poly::term(nt, m, Rational(1)), budget));
            return;
        }
        for (std::uint32_t e = 0; e < witness.degrees[i]; ++e) {
            Monomial mm = m;
            mm.set_exp(i, e);
            rec(i + 1, mm);
        }
    };
    rec(0, Monomial(nt));
    std::sort(staircase.begin(), staircase.end(), [](const Poly& a, const Poly& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        return a < b;
    });
    staircase.erase(std::unique(staircase.begin(), staircase.end()), staircase.end());

    std::vector<Poly> gens = staircase;
    for (std::size_t i = gens.size(); i-- > 1;) {
        std::vector<Poly> trial = gens;
        trial.erase(trial.begin() + i);
        if (detail::spanning_holds(phi, trial, span_bound, /*exact=*/false, budget))
            gens = std::move(trial);
    }
    for (std::uint32_t b = span_bound; b <= span_bound + 3; ++b)
        if (detail::spanning_holds(phi, gens, b, /*exact=*/true, budget)) return gens;
    // pruning heuristic overreached; fall back to the full staircase
    for (std::uint32_t b = span_bound; b <= span_bound + 3; ++b)
        if (detail::spanning_holds(phi, staircase, b, /*exact=*/true, budget)) return staircase;
    throw Error("generators fail to span within bounds");
}

// Presentation of the target as a source module on the given generators.
// Rows are complete: syzygies of [gens | graph ideal] in the combined ring,
// projected and intersected with the source-variable subring.
inline PresentedModule module_presentation(const RingMap& phi, const std::vector<Poly>& gens,
                                           std::uint32_t span_bound = 5,
                                           const Budget& budget = global_budget())
{
    bool certified = false;
    for (std::uint32_t b = span_bound; b <= span_bound + 3 && !certified; ++b)
        certified = detail::spanning_holds(phi, gens, b, /*exact=*/true, budget);
    if (!certified) throw Error("generators fail to span within bounds");

    auto g = detail::graph_ring(phi);
    std::size_t n = g.names.size();
    std::size_t m = gens.size();

    std::vector<Poly> combined;
    for (const auto& e : gens) combined.push_back(e.remap(n, g.tgt));
    for (const auto& r : g.ideal.gens()) combined.push_back(r);

    auto syz = syzygies(combined, budget);
    std::vector<VecPoly> projected;
    for (const auto& row : syz) projected.emplace_back(row.begin(), row.begin() + m);

    auto rows_combined = module_eliminate(projected, g.tgt_mask, budget);

    std::size_t ns = phi.source().ngens();
    std::vector<std::size_t> back(n, 0);
    for (std::size_t i = 0; i < ns; ++i) back[g.src[i]] = i;

    PresentedModule M{phi.source(), m, {}};
    for (const auto& row : rows_combined) {
        std::vector<Poly> r;
        bool nonzero = false;
        for (const auto& p : row) {
            Poly e = phi.source().normal_form(p.remap(ns, back), budget);
            nonzero = nonzero || !e.is_zero();
            r.push_back(std::move(e));
        }
        if (nonzero) M.rows.push_back(std::move(r));
    }
    std::sort(M.rows.begin(), M.rows.end());
    M.rows.erase(std::unique(M.rows.begin(), M.rows.end()), M.rows.end());
    return M;
}

} // namespace sep
