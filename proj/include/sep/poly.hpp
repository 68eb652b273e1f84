#pragma once

// Exact multivariate polynomials over the rationals. Terms are kept sorted
// descending under a fixed canonical order (grevlex) with no zero
// coefficients and no duplicate monomials; Groebner routines re-sort views
// under their own order.

#include "sep/monomial.hpp"
#include "sep/order.hpp"
#include "sep/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sep {

class Poly {
  public:
    using Term = std::pair<Monomial, Rational>;

    Poly() : nvars_(0) {}
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly zero(std::size_t nvars) { return Poly(nvars); }

    static Poly constant(std::size_t nvars, const Rational& c)
    {
        Poly p(nvars);
        if (c != 0) p.terms_.emplace_back(Monomial(nvars), c);
        return p;
    }

    static Poly variable(std::size_t nvars, std::size_t i, std::uint32_t e = 1)
    {
        Poly p(nvars);
        Monomial m(nvars);
        m.set_exp(i, e);
        p.terms_.emplace_back(std::move(m), Rational(1));
        return p;
    }

    static Poly term(std::size_t nvars, Monomial m, Rational c)
    {
        Poly p(nvars);
        if (c != 0) p.terms_.emplace_back(std::move(m), std::move(c));
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
    }

    Rational constant_value() const
    {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw Error("constant_value on non-constant polynomial");
        return terms_[0].second;
    }

    std::uint64_t total_degree() const
    {
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

    Poly operator-() const
    {
        Poly r(nvars_);
        r.terms_.reserve(terms_.size());
        for (const auto& [m, c] : terms_) r.terms_.emplace_back(m, -c);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        a.check_ring(b);
        std::map<std::vector<std::uint32_t>, Rational> acc;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma * mb;
                acc[m.exps()] += ca * cb;
            }
        return from_map(a.nvars_, acc);
    }

    friend Poly operator*(const Poly& a, const Rational& c)
    {
        if (c == 0) return Poly(a.nvars_);
        Poly r(a.nvars_);
        r.terms_.reserve(a.terms_.size());
        for (const auto& [m, k] : a.terms_) r.terms_.emplace_back(m, k * c);
        return r;
    }

    friend Poly operator*(const Rational& c, const Poly& a) { return a * c; }

    friend bool operator==(const Poly& a, const Poly& b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Canonical ordering for deterministic containers of polynomials.
    friend bool operator<(const Poly& a, const Poly& b)
    {
        if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
        return a.terms_ < b.terms_;
    }

    // Substitute images[i] for variable i; images live in a common ring.
    Poly substitute(const std::vector<Poly>& images, std::size_t target_nvars) const
    {
        Poly acc(target_nvars);
        for (const auto& [m, c] : terms_) {
            Poly t = Poly::constant(target_nvars, c);
            for (std::size_t i = 0; i < nvars_; ++i)
                for (std::uint32_t e = 0; e < m.exp(i); ++e) t = t * images[i];
            acc = acc + t;
        }
        return acc;
    }

    // Reinterpret in a larger ring, variable i becoming variable perm[i].
    Poly remap(std::size_t target_nvars, const std::vector<std::size_t>& perm) const
    {
        if (perm.size() < nvars_) throw Error("remap permutation too short");
        Poly r(target_nvars);
        r.terms_.reserve(terms_.size());
        for (const auto& [m, c] : terms_) {
            Monomial t(target_nvars);
            for (std::size_t i = 0; i < nvars_; ++i)
                t.set_exp(perm[i], t.exp(perm[i]) + m.exp(i));
            r.terms_.emplace_back(std::move(t), c);
        }
        r.normalize();
        return r;
    }

    Poly derivative(std::size_t var) const
    {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            std::uint32_t e = m.exp(var);
            if (e == 0) continue;
            Monomial t = m;
            t.set_exp(var, e - 1);
            r.terms_.emplace_back(std::move(t), c * e);
        }
        r.normalize();
        return r;
    }

    // Leading term under an arbitrary order (linear scan; canonical storage
    // order is grevlex so grevlex callers hit the first term).
    const Term& leading_term(const MonomialOrder& ord) const
    {
        if (terms_.empty()) throw Error("leading term of zero polynomial");
        if (ord.kind() == OrderKind::Grevlex) return terms_.front();
        std::size_t best = 0;
        for (std::size_t i = 1; i < terms_.size(); ++i)
            if (ord.greater(terms_[i].first, terms_[best].first)) best = i;
        return terms_[best];
    }

    Rational coefficient(const Monomial& m) const
    {
        for (const auto& [mm, c] : terms_)
            if (mm == m) return c;
        return Rational(0);
    }

    std::string str(const std::vector<std::string>& names) const
    {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = c;
            if (!first) {
                out += (a < 0) ? " - " : " + ";
                if (a < 0) a = -a;
            } else if (a < 0) {
                out += "-";
                a = -a;
            }
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (m.exp(i) == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += names[i];
                if (m.exp(i) > 1) mono += "^" + std::to_string(m.exp(i));
            }
            if (mono.empty()) {
                out += to_string(a);
            } else if (a == 1) {
                out += mono;
            } else {
                out += to_string(a) + "*" + mono;
            }
        }
        return out;
    }

    // Restores all invariants after direct term edits.
    void normalize()
    {
        std::map<std::vector<std::uint32_t>, Rational> acc;
        for (auto& [m, c] : terms_) acc[m.exps()] += c;
        *this = from_map(nvars_, acc);
    }

    void set_terms_raw(std::vector<Term> terms)
    {
        terms_ = std::move(terms);
        normalize();
    }

  private:
    static Poly from_map(std::size_t nvars,
                         const std::map<std::vector<std::uint32_t>, Rational>& acc)
    {
        Poly r(nvars);
        for (const auto& [e, c] : acc)
            if (c != 0) r.terms_.emplace_back(Monomial(e), c);
        // Canonical storage: descending grevlex.
        auto ord = MonomialOrder::grevlex();
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [&](const Term& x, const Term& y) { return ord.greater(x.first, y.first); });
        return r;
    }

    static Poly merge(const Poly& a, const Poly& b, bool subtract)
    {
        a.check_ring(b);
        std::map<std::vector<std::uint32_t>, Rational> acc;
        for (const auto& [m, c] : a.terms_) acc[m.exps()] += c;
        for (const auto& [m, c] : b.terms_) acc[m.exps()] += subtract ? -c : c;
        return from_map(a.nvars_, acc);
    }

    void check_ring(const Poly& other) const
    {
        if (nvars_ != other.nvars_) throw Error("variable-list mismatch");
    }

    std::size_t nvars_;
    std::vector<Term> terms_;
};

} // namespace sep
