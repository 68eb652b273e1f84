#pragma once

// Finitely presented algebras over Q: named generators plus a relations
// ideal in the presentation ring, with light structural certificates
// (polynomial ring, certified-irreducible principal relation, localization
// provenance) that downstream integrality/connectedness gates consult.

#include "sep/ideal.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sep {

class FpAlgebra {
  public:
    FpAlgebra() : relations_(Ideal::zero({})) {}

    FpAlgebra(std::vector<std::string> names, Ideal relations)
        : names_(std::move(names)), relations_(std::move(relations))
    {
        if (relations_.nvars() != names_.size()) throw Error("variable-list mismatch");
    }

    static FpAlgebra polynomial_ring(std::vector<std::string> names)
    {
        Ideal z = Ideal::zero(names);
        return FpAlgebra(std::move(names), std::move(z));
    }

    static FpAlgebra base_field() { return polynomial_ring({}); }

    std::size_t ngens() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const Ideal& relations() const { return relations_; }

    std::optional<std::size_t> gen_index(const std::string& name) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    Poly gen(std::size_t i) const { return Poly::variable(names_.size(), i); }

    Poly normal_form(const Poly& f, const Budget& budget = global_budget()) const
    {
        return relations_.normal_form(f, MonomialOrder::grevlex(), budget);
    }

    bool is_zero_elem(const Poly& f, const Budget& budget = global_budget()) const
    {
        return normal_form(f, budget).is_zero();
    }

    bool elems_equal(const Poly& f, const Poly& g,
                     const Budget& budget = global_budget()) const
    {
        return is_zero_elem(f - g, budget);
    }

    // The zero ring (1 = 0) is never a chart.
    bool is_zero_ring(const Budget& budget = global_budget()) const
    {
        return relations_.is_unit(budget);
    }

    std::string elem_str(const Poly& f) const { return f.str(names_); }

    // --- assertions and structural certificates -----------------------------

    void assert_integral() { integral_asserted_ = true; }
    void assert_connected() { connected_asserted_ = true; }
    bool integral_asserted() const { return integral_asserted_; }
    bool connected_asserted() const { return connected_asserted_; }

    void mark_localization_of_domain() { localization_of_domain_ = true; }

    // Structurally certified domain: a polynomial ring, a localization of a
    // certified domain, or a principal relation ideal whose generator passes
    // the small irreducibility rules (rational roots for low-degree
    // univariate, smooth-conic determinant for a two-variable quadratic).
    // Sound but deliberately incomplete: failure means "not certified".
    bool visibly_domain(const Budget& budget = global_budget()) const
    {
        if (is_zero_ring(budget)) return false;
        if (localization_of_domain_) return true;
        const auto& basis = relations_.groebner(MonomialOrder::grevlex(), budget);
        if (basis.empty()) return true;
        if (basis.size() == 1) return certified_irreducible(basis[0]);
        return false;
    }

    bool connected_certified(const Budget& budget = global_budget()) const
    {
        return connected_asserted_ || integral_asserted_ || visibly_domain(budget);
    }

    bool integral_certified(const Budget& budget = global_budget()) const
    {
        return integral_asserted_ || visibly_domain(budget);
    }

    // --- declared inverses (localization registry) --------------------------

    void register_inverse(Poly element, Poly inverse)
    {
        inverses_.emplace_back(std::move(element), std::move(inverse));
    }
    const std::vector<std::pair<Poly, Poly>>& inverses() const { return inverses_; }

    // Resolve inv(arg): a declared inverted element, or a product of two of
    // them; nullopt otherwise.
    std::optional<Poly> resolve_inverse(const Poly& arg,
                                        const Budget& budget = global_budget()) const
    {
        for (const auto& [f, inv] : inverses_)
            if (elems_equal(arg, f, budget)) return inv;
        for (const auto& [f, finv] : inverses_)
            for (const auto& [g, ginv] : inverses_)
                if (elems_equal(arg, f * g, budget)) return normal_form(finv * ginv, budget);
        return std::nullopt;
    }

    friend bool operator==(const FpAlgebra& a, const FpAlgebra& b)
    {
        return a.names_ == b.names_ && a.relations_.gens() == b.relations_.gens();
    }

  private:
    static bool certified_irreducible(const Poly& g)
    {
        std::vector<std::size_t> used;
        for (std::size_t i = 0; i < g.nvars(); ++i) {
            for (const auto& [m, c] : g.terms())
                if (m.exp(i) != 0) {
                    used.push_back(i);
                    break;
                }
        }
        if (used.empty()) return false; // constant
        std::uint64_t deg = g.total_degree();
        if (deg == 1) return true;
        if (used.size() == 1) return univariate_no_rational_root(g, used[0]);
        if (used.size() == 2 && deg == 2) return smooth_conic(g, used[0], used[1]);
        return false;
    }

    // Degree 2 or 3 univariate: irreducible over Q iff no rational root.
    static bool univariate_no_rational_root(const Poly& g, std::size_t var)
    {
        std::uint64_t deg = g.total_degree();
        if (deg != 2 && deg != 3) return false;
        std::vector<Rational> coeff(deg + 1, Rational(0));
        for (const auto& [m, c] : g.terms()) coeff[m.exp(var)] = c;
        // clear denominators, then rational-root candidates p/q
        BigInt scale = 1;
        for (const auto& c : coeff) scale = lcm(scale, denominator(c));
        std::vector<BigInt> ic;
        for (const auto& c : coeff) ic.push_back(numerator(Rational(c * scale)));
        if (ic[0] == 0) return false; // x divides
        auto divisors = [](BigInt n) {
            std::vector<BigInt> d;
            if (n < 0) n = -n;
            for (BigInt i = 1; i * i <= n; ++i)
                if (n % i == 0) {
                    d.push_back(i);
                    d.push_back(n / i);
                }
            return d;
        };
        for (const BigInt& p : divisors(ic[0]))
            for (const BigInt& q : divisors(ic.back()))
                for (int sign : {1, -1}) {
                    Rational root(p * sign, q);
                    Rational val = 0, pw = 1;
                    for (const auto& c : coeff) {
                        val += c * pw;
                        pw *= root;
                    }
                    if (val == 0) return false;
                }
        return true;
    }

    // Two-variable quadratic: a smooth conic (nonzero 3x3 determinant of the
    // symmetrized coefficient matrix) is irreducible.
    static bool smooth_conic(const Poly& g, std::size_t x, std::size_t y)
    {
        auto coeff = [&](std::uint32_t ex, std::uint32_t ey) {
            Monomial m(g.nvars());
            m.set_exp(x, ex);
            m.set_exp(y, ey);
            return g.coefficient(m);
        };
        Rational a = coeff(2, 0), b = coeff(1, 1), c = coeff(0, 2);
        Rational d = coeff(1, 0), e = coeff(0, 1), f = coeff(0, 0);
        // det of [[a, b/2, d/2], [b/2, c, e/2], [d/2, e/2, f]]
        Rational det = a * (c * f - e * e / 4) - (b / 2) * (b / 2 * f - e * d / 4) +
                       (d / 2) * (b * e / 4 - c * d / 2);
        return det != 0;
    }

    std::vector<std::string> names_;
    Ideal relations_;
    bool integral_asserted_ = false;
    bool connected_asserted_ = false;
    bool localization_of_domain_ = false;
    std::vector<std::pair<Poly, Poly>> inverses_;
};

// --- tensor products ---------------------------------------------------------

struct TensorFactors {
    FpAlgebra ring;
    std::vector<std::size_t> left;  // index of each left generator in `ring`
    std::vector<std::size_t> right; // index of each right generator
};

namespace detail {

inline std::string fresh_name(std::string base, std::set<std::string>& taken)
{
    if (!taken.count(base)) {
        taken.insert(base);
        return base;
    }
    for (int i = 2;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (!taken.count(cand)) {
            taken.insert(cand);
            return cand;
        }
    }
}

} // namespace detail

// Tensor over the base field. `shared` identifies pairs (left gen, right gen)
// that become a single generator; the caller is responsible for only sharing
// generators it may identify. Colliding non-shared names get 0/1 suffixes.
inline TensorFactors tensor(const FpAlgebra& A, const FpAlgebra& B,
                            const std::vector<std::pair<std::size_t, std::size_t>>& shared = {})
{
    std::vector<std::optional<std::size_t>> a_shared(A.ngens()), b_shared(B.ngens());
    for (std::size_t k = 0; k < shared.size(); ++k) {
        a_shared[shared[k].first] = k;
        b_shared[shared[k].second] = k;
    }

    std::vector<std::string> names;
    std::vector<std::size_t> left(A.ngens()), right(B.ngens());
    std::set<std::string> taken;

    for (const auto& [ai, bi] : shared) {
        left[ai] = names.size();
        right[bi] = names.size();
        names.push_back(detail::fresh_name(A.names()[ai], taken));
    }
    // Non-shared name collisions are disambiguated by factor suffix.
    std::set<std::string> collide;
    for (std::size_t i = 0; i < A.ngens(); ++i) {
        if (a_shared[i]) continue;
        for (std::size_t j = 0; j < B.ngens(); ++j)
            if (!b_shared[j] && A.names()[i] == B.names()[j]) collide.insert(A.names()[i]);
    }
    for (std::size_t i = 0; i < A.ngens(); ++i) {
        if (a_shared[i]) continue;
        std::string base = A.names()[i];
        if (collide.count(base)) base += "0";
        left[i] = names.size();
        names.push_back(detail::fresh_name(base, taken));
    }
    for (std::size_t j = 0; j < B.ngens(); ++j) {
        if (b_shared[j]) continue;
        std::string base = B.names()[j];
        if (collide.count(base)) base += "1";
        right[j] = names.size();
        names.push_back(detail::fresh_name(base, taken));
    }

    std::vector<Poly> rels;
    for (const auto& g : A.relations().gens()) rels.push_back(g.remap(names.size(), left));
    for (const auto& g : B.relations().gens()) rels.push_back(g.remap(names.size(), right));
    FpAlgebra T(names, Ideal(names, std::move(rels)));
    return {std::move(T), std::move(left), std::move(right)};
}

} // namespace sep
