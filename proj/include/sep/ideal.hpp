#pragma once

// Ideals with a Buchberger engine: reduced Groebner bases (cached per order),
// normal forms, elimination, colon ideals and intersections.

#include "sep/budget.hpp"
#include "sep/order.hpp"
#include "sep/poly.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace sep {

namespace detail {

// Term-map representation sorted descending under the active order, so the
// leading term is begin().
struct OrderedView {
    const MonomialOrder* ord;
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        return ord->compare(a, b) > 0;
    }
};

using TermMap = std::map<Monomial, Rational, OrderedView>;

inline TermMap to_map(const Poly& p, const MonomialOrder& ord)
{
    TermMap m(OrderedView{&ord});
    for (const auto& [mono, c] : p.terms()) m.emplace(mono, c);
    return m;
}

inline Poly to_poly(std::size_t nvars, const TermMap& m)
{
    Poly p(nvars);
    std::vector<Poly::Term> terms(m.begin(), m.end());
    p.set_terms_raw(std::move(terms));
    return p;
}

// h -= c * mono * g
inline void submul(TermMap& h, const Rational& c, const Monomial& mono, const Poly& g)
{
    for (const auto& [m, k] : g.terms()) {
        Monomial t = m * mono;
        auto it = h.find(t);
        if (it == h.end()) {
            h.emplace(std::move(t), -c * k);
        } else {
            it->second -= c * k;
            if (it->second == 0) h.erase(it);
        }
    }
}

} // namespace detail

// Full normal form of f against a list of (not necessarily reduced) basis
// elements; deterministic: the first listed reducer whose leading term
// divides the current term is used.
inline Poly divide_normal_form(const Poly& f, const std::vector<Poly>& basis,
                               const MonomialOrder& ord,
                               const Budget& budget = global_budget())
{
    if (f.is_zero()) return f;
    struct Lead {
        Monomial m;
        Rational c;
    };
    std::vector<Lead> leads;
    leads.reserve(basis.size());
    for (const auto& g : basis) {
        const auto& lt = g.leading_term(ord);
        leads.push_back({lt.first, lt.second});
    }

    auto h = detail::to_map(f, ord);
    detail::TermMap result(detail::OrderedView{&ord});
    std::uint64_t steps = 0;
    while (!h.empty()) {
        if (++steps > budget.max_steps) throw BudgetError("normal form step budget exceeded");
        auto [mono, coeff] = *h.begin();
        bool reduced = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (leads[i].m.divides(mono)) {
                Rational c = coeff / leads[i].c;
                detail::submul(h, c, mono / leads[i].m, basis[i]);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            result.emplace(mono, coeff);
            h.erase(h.begin());
        }
    }
    return detail::to_poly(f.nvars(), result);
}

// Reduced Groebner basis. Pair selection: minimal lcm total degree, ties by
// generator indices. Output is canonical: monic, interreduced, sorted by
// leading monomial ascending.
inline std::vector<Poly> buchberger(std::vector<Poly> gens, const MonomialOrder& ord,
                                    const Budget& budget = global_budget())
{
    std::vector<Poly> basis;
    for (auto& g : gens)
        if (!g.is_zero()) basis.push_back(std::move(g));
    if (basis.empty()) return {};

    using PairKey = std::tuple<std::uint64_t, std::size_t, std::size_t>;
    std::set<PairKey> pairs;
    auto push_pairs = [&](std::size_t j) {
        const auto& ltj = basis[j].leading_term(ord).first;
        for (std::size_t i = 0; i < j; ++i) {
            const auto& lti = basis[i].leading_term(ord).first;
            if (coprime(lti, ltj)) continue; // product criterion
            pairs.emplace(lcm(lti, ltj).total_degree(), i, j);
        }
    };
    for (std::size_t j = 0; j < basis.size(); ++j) push_pairs(j);

    std::uint64_t steps = 0;
    while (!pairs.empty()) {
        auto [deg, i, j] = *pairs.begin();
        pairs.erase(pairs.begin());
        if (++steps > budget.max_steps) throw BudgetError("basis step budget exceeded");

        const auto& [mi, ci] = basis[i].leading_term(ord);
        const auto& [mj, cj] = basis[j].leading_term(ord);
        Monomial l = lcm(mi, mj);
        Poly spoly = Poly::term(basis[i].nvars(), l / mi, Rational(1) / ci) * basis[i] -
                     Poly::term(basis[j].nvars(), l / mj, Rational(1) / cj) * basis[j];
        Poly r = divide_normal_form(spoly, basis, ord, budget);
        if (r.is_zero()) continue;
        if (r.total_degree() > budget.max_degree)
            throw BudgetError("basis degree budget exceeded");
        basis.push_back(r);
        if (basis.size() > budget.max_basis) throw BudgetError("basis size budget exceeded");
        push_pairs(basis.size() - 1);
    }

    // Minimalize: drop elements whose leading term is divisible by another's.
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& lti = basis[i].leading_term(ord).first;
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            const auto& ltj = basis[j].leading_term(ord).first;
            if (ltj.divides(lti) && (ltj != lti || j < i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }

    // Tail-reduce and make monic.
    std::vector<Poly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = others.empty() ? minimal[i]
                                : divide_normal_form(minimal[i], others, ord, budget);
        if (r.is_zero()) continue;
        r = r * (Rational(1) / r.leading_term(ord).second);
        reduced.push_back(std::move(r));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        int c = ord.compare(a.leading_term(ord).first, b.leading_term(ord).first);
        if (c != 0) return c < 0;
        return a < b;
    });
    return reduced;
}

class Ideal {
  public:
    Ideal() = default;
    Ideal(std::vector<std::string> names, std::vector<Poly> gens)
        : names_(std::move(names)), gens_(std::move(gens)),
          cache_(std::make_shared<Cache>())
    {
        for (const auto& g : gens_)
            if (g.nvars() != names_.size()) throw Error("variable-list mismatch");
    }

    static Ideal zero(std::vector<std::string> names) { return Ideal(std::move(names), {}); }

    std::size_t nvars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<Poly>& gens() const { return gens_; }

    const std::vector<Poly>& groebner(const MonomialOrder& ord,
                                      const Budget& budget = global_budget()) const
    {
        std::string key = ord.cache_key();
        {
            std::lock_guard<std::mutex> lock(cache_->mutex);
            auto it = cache_->bases.find(key);
            if (it != cache_->bases.end()) return it->second;
        }
        std::vector<Poly> basis = buchberger(gens_, ord, budget);
        std::lock_guard<std::mutex> lock(cache_->mutex);
        return cache_->bases.emplace(std::move(key), std::move(basis)).first->second;
    }

    Poly normal_form(const Poly& f, const MonomialOrder& ord = MonomialOrder::grevlex(),
                     const Budget& budget = global_budget()) const
    {
        const auto& basis = groebner(ord, budget);
        if (basis.empty()) return f;
        return divide_normal_form(f, basis, ord, budget);
    }

    bool contains(const Poly& f, const Budget& budget = global_budget()) const
    {
        return normal_form(f, MonomialOrder::grevlex(), budget).is_zero();
    }

    bool contains(const Ideal& other, const Budget& budget = global_budget()) const
    {
        for (const auto& g : other.gens_)
            if (!contains(g, budget)) return false;
        return true;
    }

    bool is_unit(const Budget& budget = global_budget()) const
    {
        const auto& basis = groebner(MonomialOrder::grevlex(), budget);
        return basis.size() == 1 && basis[0].is_constant();
    }

    bool is_zero(const Budget& budget = global_budget()) const
    {
        return groebner(MonomialOrder::grevlex(), budget).empty();
    }

    friend bool equal(const Ideal& a, const Ideal& b)
    {
        if (a.nvars() != b.nvars()) return false;
        return a.groebner(MonomialOrder::grevlex()) == b.groebner(MonomialOrder::grevlex());
    }

    Ideal with_extra_gens(std::vector<Poly> extra) const
    {
        std::vector<Poly> g = gens_;
        for (auto& p : extra) g.push_back(std::move(p));
        return Ideal(names_, std::move(g));
    }

  private:
    struct Cache {
        std::mutex mutex;
        std::map<std::string, std::vector<Poly>> bases;
    };

    std::vector<std::string> names_;
    std::vector<Poly> gens_;
    std::shared_ptr<Cache> cache_;
};

// Generators of I ∩ k[kept variables], computed with a block order that puts
// the discarded variables in the leading block. The ambient ring is kept.
inline Ideal eliminate(const Ideal& I, const std::vector<bool>& keep,
                       const Budget& budget = global_budget())
{
    std::vector<bool> discard(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) discard[i] = !keep[i];
    bool any = false;
    for (bool b : discard) any = any || b;
    if (!any) return I;

    const auto& basis = I.groebner(MonomialOrder::block_mask(discard), budget);
    std::vector<Poly> kept;
    for (const auto& g : basis) {
        bool ok = true;
        for (const auto& [m, c] : g.terms())
            if (!m.supported_on(keep)) {
                ok = false;
                break;
            }
        if (ok) kept.push_back(g);
    }
    return Ideal(I.names(), std::move(kept));
}

// Exact division q = a / b in the polynomial ring; requires divisibility.
inline Poly exact_divide(const Poly& a, const Poly& b)
{
    if (b.is_zero()) throw Error("division by zero polynomial");
    auto ord = MonomialOrder::grevlex();
    Poly rem = a;
    Poly q(a.nvars());
    const auto& [bm, bc] = b.leading_term(ord);
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading_term(ord);
        if (!bm.divides(rm)) throw Error("inexact polynomial division");
        Poly t = Poly::term(a.nvars(), rm / bm, rc / bc);
        q = q + t;
        rem = rem - t * b;
    }
    return q;
}

// I ∩ J via the single-tag trick: eliminate w from w·I + (1−w)·J.
inline Ideal intersect(const Ideal& I, const Ideal& J,
                       const Budget& budget = global_budget())
{
    std::size_t n = I.nvars();
    if (J.nvars() != n) throw Error("variable-list mismatch");
    std::size_t m = n + 1; // fresh tag variable appended
    std::vector<std::size_t> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = i;

    Poly w = Poly::variable(m, n);
    Poly one_minus_w = Poly::constant(m, Rational(1)) - w;
    std::vector<Poly> gens;
    for (const auto& g : I.gens()) gens.push_back(w * g.remap(m, id));
    for (const auto& g : J.gens()) gens.push_back(one_minus_w * g.remap(m, id));

    std::vector<std::string> names = I.names();
    names.push_back("@w");
    Ideal K(std::move(names), std::move(gens));
    std::vector<bool> keep(m, true);
    keep[n] = false;
    Ideal E = eliminate(K, keep, budget);

    std::vector<std::size_t> drop = id;
    drop.push_back(0); // tag variable has exponent zero in eliminated output
    std::vector<Poly> out;
    for (const auto& g : E.gens()) out.push_back(g.remap(n, drop));
    return Ideal(I.names(), std::move(out));
}

// Colon ideal (I : f) = { g : g·f ∈ I }, via (I ∩ (f)) / f.
inline Ideal ideal_quotient(const Ideal& I, const Poly& f,
                            const Budget& budget = global_budget())
{
    if (f.is_zero()) throw Error("colon ideal by zero");
    Ideal F(I.names(), {f});
    Ideal M = intersect(I, F, budget);
    std::vector<Poly> out;
    for (const auto& g : M.gens()) out.push_back(exact_divide(g, f));
    return Ideal(I.names(), std::move(out));
}

} // namespace sep
