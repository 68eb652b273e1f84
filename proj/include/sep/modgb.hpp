#pragma once

// Groebner bases for submodules of free modules R^q over the polynomial
// ring, with the two order families the library needs:
//   * position-elimination (component 0 dominant) for syzygy computation;
//   * variable-elimination (masked variables dominant) for intersecting a
//     submodule with a coefficient subring.
// Note: Buchberger's coprime-leads shortcut is not sound for modules, so no
// pair criteria are applied here.

#include "sep/budget.hpp"
#include "sep/ideal.hpp"

#include <map>
#include <set>
#include <tuple>
#include <vector>

namespace sep {

using VecPoly = std::vector<Poly>; // one entry per free-module component

inline bool vec_is_zero(const VecPoly& v)
{
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

class ModuleOrder {
  public:
    static ModuleOrder position_elim()
    {
        return ModuleOrder(Kind::PosElim, MonomialOrder::grevlex());
    }
    static ModuleOrder variable_elim(std::vector<bool> mask)
    {
        return ModuleOrder(Kind::VarElim, MonomialOrder::block_mask(std::move(mask)));
    }
    static ModuleOrder plain() { return ModuleOrder(Kind::Plain, MonomialOrder::grevlex()); }

    // +1 when (ca, ma) > (cb, mb).
    int compare(std::size_t ca, const Monomial& ma, std::size_t cb, const Monomial& mb) const
    {
        if (kind_ == Kind::PosElim && (ca == 0) != (cb == 0)) return ca == 0 ? 1 : -1;
        int c = base_.compare(ma, mb);
        if (c != 0) return c;
        if (ca != cb) return ca < cb ? 1 : -1;
        return 0;
    }

    const MonomialOrder& base() const { return base_; }

  private:
    enum class Kind { Plain, PosElim, VarElim };
    ModuleOrder(Kind k, MonomialOrder base) : kind_(k), base_(std::move(base)) {}
    Kind kind_;
    MonomialOrder base_;
};

struct ModLead {
    std::size_t comp;
    Monomial mono;
    Rational coeff;
};

inline ModLead mod_leading(const VecPoly& v, const ModuleOrder& ord)
{
    bool have = false;
    ModLead best{};
    for (std::size_t c = 0; c < v.size(); ++c) {
        for (const auto& [m, k] : v[c].terms()) {
            if (!have || ord.compare(c, m, best.comp, best.mono) > 0) {
                best = {c, m, k};
                have = true;
            }
        }
    }
    if (!have) throw Error("leading term of zero module element");
    return best;
}

inline VecPoly vec_scale(const VecPoly& v, const Monomial& mono, const Rational& c)
{
    VecPoly r;
    r.reserve(v.size());
    std::size_t nv = 0;
    for (const auto& p : v)
        if (p.nvars()) nv = p.nvars();
    Poly factor = Poly::term(nv, mono, c);
    for (const auto& p : v) r.push_back(p * factor);
    return r;
}

inline VecPoly vec_sub(const VecPoly& a, const VecPoly& b)
{
    VecPoly r;
    r.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
    return r;
}

// Full normal form of v against basis elements (first applicable reducer).
inline VecPoly mod_normal_form(VecPoly v, const std::vector<VecPoly>& basis,
                               const ModuleOrder& ord,
                               const Budget& budget = global_budget())
{
    if (basis.empty()) return v;
    std::vector<ModLead> leads;
    leads.reserve(basis.size());
    for (const auto& b : basis) leads.push_back(mod_leading(b, ord));

    std::size_t ncomp = v.size();
    std::size_t nv = v.empty() ? 0 : v[0].nvars();
    VecPoly result(ncomp, Poly(nv));
    std::uint64_t steps = 0;
    while (!vec_is_zero(v)) {
        if (++steps > budget.max_steps)
            throw BudgetError("module normal form step budget exceeded");
        ModLead L = mod_leading(v, ord);
        bool hit = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (leads[i].comp == L.comp && leads[i].mono.divides(L.mono)) {
                v = vec_sub(v, vec_scale(basis[i], L.mono / leads[i].mono,
                                         L.coeff / leads[i].coeff));
                hit = true;
                break;
            }
        }
        if (!hit) {
            result[L.comp] = result[L.comp] + Poly::term(nv, L.mono, L.coeff);
            v[L.comp] = v[L.comp] - Poly::term(nv, L.mono, L.coeff);
        }
    }
    return result;
}

inline std::vector<VecPoly> module_groebner(std::vector<VecPoly> gens,
                                            const ModuleOrder& ord,
                                            const Budget& budget = global_budget())
{
    std::vector<VecPoly> basis;
    for (auto& g : gens)
        if (!vec_is_zero(g)) basis.push_back(std::move(g));
    if (basis.empty()) return {};

    using PairKey = std::tuple<std::uint64_t, std::size_t, std::size_t>;
    std::set<PairKey> pairs;
    std::vector<ModLead> leads;
    for (const auto& b : basis) leads.push_back(mod_leading(b, ord));
    auto push_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (leads[i].comp != leads[j].comp) continue;
            pairs.emplace(lcm(leads[i].mono, leads[j].mono).total_degree(), i, j);
        }
    };
    for (std::size_t j = 0; j < basis.size(); ++j) push_pairs(j);

    std::uint64_t steps = 0;
    while (!pairs.empty()) {
        auto [deg, i, j] = *pairs.begin();
        pairs.erase(pairs.begin());
        if (++steps > budget.max_steps)
            throw BudgetError("module basis step budget exceeded");
        Monomial l = lcm(leads[i].mono, leads[j].mono);
        VecPoly s = vec_sub(vec_scale(basis[i], l / leads[i].mono, Rational(1) / leads[i].coeff),
                            vec_scale(basis[j], l / leads[j].mono, Rational(1) / leads[j].coeff));
        VecPoly r = mod_normal_form(std::move(s), basis, ord, budget);
        if (vec_is_zero(r)) continue;
        basis.push_back(std::move(r));
        leads.push_back(mod_leading(basis.back(), ord));
        if (basis.size() > budget.max_basis)
            throw BudgetError("module basis size budget exceeded");
        push_pairs(basis.size() - 1);
    }

    // Minimalize and tail-reduce; monic leads; canonical sort.
    std::vector<VecPoly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j || leads[j].comp != leads[i].comp) continue;
            if (leads[j].mono.divides(leads[i].mono) &&
                (leads[j].mono != leads[i].mono || j < i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    std::vector<VecPoly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<VecPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        VecPoly r = mod_normal_form(minimal[i], others, ord, budget);
        if (vec_is_zero(r)) continue;
        ModLead L = mod_leading(r, ord);
        reduced.push_back(vec_scale(r, Monomial(L.mono.nvars()), Rational(1) / L.coeff));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const VecPoly& a, const VecPoly& b) {
        ModLead la = mod_leading(a, ord), lb = mod_leading(b, ord);
        int c = ord.compare(la.comp, la.mono, lb.comp, lb.mono);
        if (c != 0) return c < 0;
        return a < b;
    });
    return reduced;
}

// Generators of the syzygy module ker(R^q -> R), e_i -> p_i. Computed in
// R^{1+q}: a basis of <p_i e_0 + e_i> under a component-0-dominant order;
// members with vanishing component 0 restrict to syzygies.
inline std::vector<VecPoly> syzygies(const std::vector<Poly>& polys,
                                     const Budget& budget = global_budget())
{
    std::size_t q = polys.size();
    if (q == 0) return {};
    std::size_t nv = polys[0].nvars();
    std::vector<VecPoly> gens;
    for (std::size_t i = 0; i < q; ++i) {
        VecPoly v(1 + q, Poly(nv));
        v[0] = polys[i];
        v[1 + i] = Poly::constant(nv, Rational(1));
        gens.push_back(std::move(v));
    }
    auto basis = module_groebner(std::move(gens), ModuleOrder::position_elim(), budget);
    std::vector<VecPoly> rows;
    for (const auto& b : basis) {
        if (!b[0].is_zero()) continue;
        rows.emplace_back(b.begin() + 1, b.end());
    }
    return rows;
}

// Generators of W ∩ k[unmasked]^q for the submodule W spanned by `rows`.
inline std::vector<VecPoly> module_eliminate(const std::vector<VecPoly>& rows,
                                             const std::vector<bool>& elim_mask,
                                             const Budget& budget = global_budget())
{
    auto basis = module_groebner(rows, ModuleOrder::variable_elim(elim_mask), budget);
    std::vector<bool> keep(elim_mask.size());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = !elim_mask[i];
    std::vector<VecPoly> out;
    for (const auto& b : basis) {
        bool ok = true;
        for (const auto& p : b)
            for (const auto& [m, c] : p.terms())
                if (!m.supported_on(keep)) {
                    ok = false;
                    break;
                }
        if (ok) out.push_back(b);
    }
    return out;
}

} // namespace sep
