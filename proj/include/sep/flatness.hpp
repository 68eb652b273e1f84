#pragma once

// Flatness decisions for the two shapes the corpus needs, plus an etale test:
//  * hypersurface extensions A[T]/(sT - t) for a regular sequence (s, t),
//    flat iff (s, t) is the unit ideal;
//  * module-finite maps over a connected base, via Fitting ideals of a
//    certified module presentation.
// Everything else is an honest Undecided.

#include "sep/module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sep {

enum class FlatStatus { Flat, NotFlat, Undecided };
enum class FlatMethod { Hypersurface, Fitting, Trivial };

struct FlatVerdict {
    FlatStatus status = FlatStatus::Undecided;
    FlatMethod method = FlatMethod::Trivial;
    std::optional<std::size_t> rank;       // Fitting path, Flat only
    std::optional<Ideal> witness;          // NotFlat: non-unit (s,t) or failing Fitting ideal
    std::vector<std::string> witness_names; // presentation ring of the witness
    std::string detail;

    static FlatVerdict flat(FlatMethod m, std::optional<std::size_t> rank = std::nullopt,
                            std::string detail = {})
    {
        return {FlatStatus::Flat, m, rank, std::nullopt, {}, std::move(detail)};
    }
    static FlatVerdict not_flat(FlatMethod m, Ideal witness, std::vector<std::string> names,
                                std::string detail = {})
    {
        return {FlatStatus::NotFlat, m,   std::nullopt, std::move(witness),
                std::move(names),    std::move(detail)};
    }
    static FlatVerdict undecided(std::string reason)
    {
        return {FlatStatus::Undecided, FlatMethod::Trivial, std::nullopt, std::nullopt, {},
                std::move(reason)};
    }
};

// (s, t) is a regular sequence in A: (0 : s) = 0 and ((s) : t) = (s).
// The unit ideal is allowed.
inline bool is_regular_sequence(const FpAlgebra& A, const Poly& s, const Poly& t,
                                const Budget& budget = global_budget())
{
    Ideal ann = ideal_quotient(A.relations(), s, budget);
    if (!A.relations().contains(ann, budget)) return false;
    Ideal sA = A.relations().with_extra_gens({s});
    Ideal st = ideal_quotient(sA, t, budget);
    return sA.contains(st, budget);
}

// Flatness of A[T]/(sT - t) over A for a regular sequence (s, t): flat iff
// s and t generate the unit ideal.
inline FlatVerdict flat_hypersurface(const FpAlgebra& A, const Poly& s, const Poly& t,
                                     const Budget& budget = global_budget())
{
    try {
        if (!is_regular_sequence(A, s, t, budget))
            return FlatVerdict::undecided("hypersurface criterion inapplicable: (" +
                                          A.elem_str(s) + ", " + A.elem_str(t) +
                                          ") is not a regular sequence");
        Ideal st = A.relations().with_extra_gens({s, t});
        if (st.is_unit(budget))
            return FlatVerdict::flat(FlatMethod::Hypersurface, std::nullopt,
                                     "(" + A.elem_str(s) + ", " + A.elem_str(t) +
                                         ") is the unit ideal");
        Ideal witness(A.names(), {A.normal_form(s, budget), A.normal_form(t, budget)});
        return FlatVerdict::not_flat(FlatMethod::Hypersurface, std::move(witness), A.names(),
                                     "non-unit ideal (" + A.elem_str(s) + ", " +
                                         A.elem_str(t) + ")");
    } catch (const BudgetError& e) {
        return FlatVerdict::undecided(e.what());
    }
}

// Fitt_0 ⊆ Fitt_1 ⊆ ... ⊆ Fitt_n = (1); Fitt_k is generated by the
// (n-k)-minors of the presentation matrix together with the base relations.
inline std::vector<Ideal> fitting_ideals(const PresentedModule& M,
                                         const Budget& budget = global_budget())
{
    if (M.ngens > 10 || M.rows.size() > budget.max_basis / 100)
        throw BudgetError("presentation too large for minor expansion");
    std::size_t n = M.ngens;
    std::size_t nvars = M.base.ngens();
    const auto& names = M.base.names();

    std::function<Poly(const std::vector<std::size_t>&, const std::vector<std::size_t>&)>
        minor = [&](const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols) -> Poly {
        if (rows.empty()) return Poly::constant(nvars, Rational(1));
        Poly det(nvars);
        std::vector<std::size_t> subrows(rows.begin() + 1, rows.end());
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const Poly& e = M.rows[rows[0]][cols[k]];
            if (e.is_zero()) continue;
            std::vector<std::size_t> subcols;
            for (std::size_t j = 0; j < cols.size(); ++j)
                if (j != k) subcols.push_back(cols[j]);
            Poly sub = minor(subrows, subcols);
            det = (k % 2 == 0) ? det + e * sub : det - e * sub;
        }
        return M.base.normal_form(det);
    };

    auto subsets = [](std::size_t total, std::size_t size) {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> cur;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (cur.size() == size) {
                out.push_back(cur);
                return;
            }
            for (std::size_t i = start; i + (size - cur.size()) <= total; ++i) {
                cur.push_back(i);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
        return out;
    };

    std::vector<Ideal> fits;
    for (std::size_t k = 0; k <= n; ++k) {
        std::size_t size = n - k;
        std::vector<Poly> gens = M.base.relations().gens();
        if (size == 0) {
            gens.push_back(Poly::constant(nvars, Rational(1)));
        } else if (size <= M.rows.size()) {
            for (const auto& rs : subsets(M.rows.size(), size))
                for (const auto& cs : subsets(n, size)) {
                    Poly d = minor(rs, cs);
                    if (!d.is_zero()) gens.push_back(std::move(d));
                }
        }
        fits.emplace_back(names, std::move(gens));
    }
    return fits;
}

// Over a connected Noetherian base, a finite module is flat iff for some r,
// Fitt_{r-1} = 0 and Fitt_r = (1). Scan r upward; the first r with a unit
// Fitting ideal is the rank candidate.
inline FlatVerdict flat_finite(const PresentedModule& M, bool base_connected_certified,
                               const Budget& budget = global_budget())
{
    if (!base_connected_certified)
        return FlatVerdict::undecided(
            "base connectedness is not asserted or structurally certified");
    try {
        auto fits = fitting_ideals(M, budget);
        for (std::size_t r = 0; r <= M.ngens; ++r) {
            if (!fits[r].is_unit(budget)) continue;
            if (r == 0)
                return FlatVerdict::flat(FlatMethod::Fitting, 0, "zero module");
            bool lower_vanishes = true;
            for (const auto& g : fits[r - 1].gens())
                if (!M.base.is_zero_elem(g, budget)) {
                    lower_vanishes = false;
                    break;
                }
            if (lower_vanishes)
                return FlatVerdict::flat(FlatMethod::Fitting, r,
                                         "locally free of rank " + std::to_string(r));
            // Reduce the witness to its nonvanishing minors.
            std::vector<Poly> wgens;
            for (const auto& g : fits[r - 1].gens()) {
                Poly nf = M.base.normal_form(g, budget);
                if (!nf.is_zero()) wgens.push_back(std::move(nf));
            }
            std::sort(wgens.begin(), wgens.end());
            wgens.erase(std::unique(wgens.begin(), wgens.end()), wgens.end());
            Ideal witness(M.base.names(), std::move(wgens));
            return FlatVerdict::not_flat(
                FlatMethod::Fitting, std::move(witness), M.base.names(),
                "rank candidate " + std::to_string(r) + " but the previous Fitting ideal "
                                                        "does not vanish");
        }
        return FlatVerdict::undecided("no unit Fitting ideal found");
    } catch (const BudgetError& e) {
        return FlatVerdict::undecided(e.what());
    }
}

// Kaehler differentials of target over source, presented on d(target gens):
// Jacobian rows of the target relations plus d(image of each source gen) = 0.
inline PresentedModule kaehler_differentials(const RingMap& phi,
                                             const Budget& budget = global_budget())
{
    const auto& B = phi.target();
    std::size_t n = B.ngens();
    PresentedModule M{B, n, {}};
    auto add_jacobian_row = [&](const Poly& f) {
        std::vector<Poly> row;
        bool nonzero = false;
        for (std::size_t j = 0; j < n; ++j) {
            Poly d = B.normal_form(f.derivative(j), budget);
            nonzero = nonzero || !d.is_zero();
            row.push_back(std::move(d));
        }
        if (nonzero) M.rows.push_back(std::move(row));
    };
    for (const auto& r : B.relations().gens()) add_jacobian_row(r);
    for (const auto& im : phi.images()) add_jacobian_row(im);
    return M;
}

inline bool module_is_zero(const PresentedModule& M, const Budget& budget = global_budget())
{
    auto fits = fitting_ideals(M, budget);
    return fits[0].is_unit(budget);
}

// --- flatness of a ring map ---------------------------------------------------

namespace detail {

struct HypersurfaceShape {
    Poly s; // in the source presentation ring
    Poly t;
};

// Try to present the target as A[T]/(sT - t): exactly one target generator
// outside the image subalgebra, and relative kernel principal and linear in
// that generator with coefficients from the source.
inline std::optional<HypersurfaceShape>
detect_hypersurface(const RingMap& phi, const Budget& budget = global_budget())
{
    const auto& A = phi.source();
    const auto& T = phi.target();
    std::optional<std::size_t> outsider;
    for (std::size_t i = 0; i < T.ngens(); ++i) {
        if (in_image(phi, T.gen(i), budget)) continue;
        if (outsider) return std::nullopt;
        outsider = i;
    }
    if (!outsider) return std::nullopt;

    // Extend the source by one free generator mapping to the outsider.
    std::set<std::string> taken(A.names().begin(), A.names().end());
    std::vector<std::string> names = A.names();
    names.push_back(fresh_name("T@rel", taken));
    std::size_t n = names.size();
    std::vector<std::size_t> up(A.ngens());
    for (std::size_t i = 0; i < A.ngens(); ++i) up[i] = i;
    std::vector<Poly> rels;
    for (const auto& r : A.relations().gens()) rels.push_back(r.remap(n, up));
    FpAlgebra AT(names, Ideal(names, std::move(rels)));

    std::vector<Poly> images;
    for (const auto& im : phi.images()) images.push_back(im);
    images.push_back(T.gen(*outsider));
    RingMap psi(AT, T, std::move(images), budget);
    if (!is_surjective(psi, budget)) return std::nullopt;
    Ideal K = ringmap_kernel(psi, budget);

    // Reduced basis elements not coming from the lifted source relations.
    std::vector<Poly> fresh;
    Ideal lifted = AT.relations();
    for (const auto& g : K.groebner(MonomialOrder::grevlex(), budget))
        if (!lifted.contains(g, budget)) fresh.push_back(g);
    if (fresh.size() != 1) return std::nullopt;
    const Poly& rel = fresh[0];
    std::size_t tv = n - 1;
    Poly s(n), t(n);
    for (const auto& [m, c] : rel.terms()) {
        if (m.exp(tv) == 0) {
            t = t - Poly::term(n, m, c);
        } else if (m.exp(tv) == 1) {
            Monomial mm = m;
            mm.set_exp(tv, 0);
            s = s + Poly::term(n, mm, c);
        } else {
            return std::nullopt; // degree > 1 in the extra generator
        }
    }
    if (s.is_zero()) return std::nullopt;
    // Confirm K = lifted + (sT - t): one inclusion is construction, check the other.
    Ideal recon = lifted.with_extra_gens({s * Poly::variable(n, tv) - t});
    if (!recon.contains(K, budget)) return std::nullopt;

    std::vector<std::size_t> back(n, 0);
    for (std::size_t i = 0; i < A.ngens(); ++i) back[i] = i;
    return HypersurfaceShape{s.remap(A.ngens(), back), t.remap(A.ngens(), back)};
}

} // namespace detail

// Decide flatness of phi by the first applicable path: structurally trivial
// (localization chains, certified isomorphisms), module-finite via Fitting
// ideals, hypersurface shape, otherwise Undecided.
inline FlatVerdict flat_of_map(const RingMap& phi, const Budget& budget = global_budget())
{
    if (phi.shape() == MapShape::Iso)
        return FlatVerdict::flat(FlatMethod::Trivial, std::nullopt, "certified isomorphism");
    if (phi.shape() == MapShape::LocChain)
        return FlatVerdict::flat(FlatMethod::Trivial, std::nullopt,
                                 "localization of the source");
    try {
        if (auto w = module_finite_witness(phi, budget)) {
            auto gens = choose_module_generators(phi, *w, 5, budget);
            auto M = module_presentation(phi, gens, 5, budget);
            FlatVerdict v = flat_finite(M, phi.source().connected_certified(budget), budget);
            if (v.status != FlatStatus::Undecided) return v;
        }
        if (auto h = detail::detect_hypersurface(phi, budget))
            return flat_hypersurface(phi.source(), h->s, h->t, budget);
    } catch (const BudgetError& e) {
        return FlatVerdict::undecided(e.what());
    }
    return FlatVerdict::undecided(
        "map is neither module-finite nor hypersurface-presented within bounds");
}

// --- etale -------------------------------------------------------------------

enum class EtaleStatus { Etale, NotEtale, Undecided };

struct EtaleVerdict {
    EtaleStatus status = EtaleStatus::Undecided;
    FlatVerdict flat;
    std::string detail;
};

// Etale iff flat (module-finite or structurally trivial) and the relative
// differentials vanish. Characteristic zero throughout.
inline EtaleVerdict is_etale(const RingMap& phi, const Budget& budget = global_budget())
{
    EtaleVerdict v;
    if (phi.shape() == MapShape::Iso || phi.shape() == MapShape::LocChain) {
        v.flat = FlatVerdict::flat(FlatMethod::Trivial);
        bool unram = module_is_zero(kaehler_differentials(phi, budget), budget);
        v.status = unram ? EtaleStatus::Etale : EtaleStatus::NotEtale;
        v.detail = unram ? "localization/isomorphism with vanishing differentials"
                         : "relative differentials do not vanish";
        return v;
    }
    v.flat = flat_of_map(phi, budget);
    if (v.flat.status == FlatStatus::Undecided) {
        v.status = EtaleStatus::Undecided;
        v.detail = "flatness undecided: " + v.flat.detail;
        return v;
    }
    if (v.flat.status == FlatStatus::NotFlat) {
        v.status = EtaleStatus::NotEtale;
        v.detail = "not flat";
        return v;
    }
    try {
        bool unram = module_is_zero(kaehler_differentials(phi, budget), budget);
        v.status = unram ? EtaleStatus::Etale : EtaleStatus::NotEtale;
        v.detail = unram ? "flat with vanishing relative differentials"
                         : "relative differentials do not vanish";
    } catch (const BudgetError& e) {
        v.status = EtaleStatus::Undecided;
        v.detail = e.what();
    }
    return v;
}

} // namespace sep
