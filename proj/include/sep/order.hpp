#pragma once

// Monomial orders: lex, grevlex, and block elimination orders. A block order
// compares the designated leading block first (grevlex within each block), so
// a Groebner basis under it eliminates the leading-block variables.

#include "sep/monomial.hpp"

#include <string>
#include <vector>

namespace sep {

enum class OrderKind { Lex, Grevlex, Block };

class MonomialOrder {
  public:
    static MonomialOrder lex() { return MonomialOrder(OrderKind::Lex, {}); }
    static MonomialOrder grevlex() { return MonomialOrder(OrderKind::Grevlex, {}); }

    // Eliminates the first `split` variables.
    static MonomialOrder block(std::size_t nvars, std::size_t split)
    {
        std::vector<bool> mask(nvars, false);
        for (std::size_t i = 0; i < split && i < nvars; ++i) mask[i] = true;
        return MonomialOrder(OrderKind::Block, std::move(mask));
    }

    // Eliminates exactly the masked variables.
    static MonomialOrder block_mask(std::vector<bool> mask)
    {
        return MonomialOrder(OrderKind::Block, std::move(mask));
    }

    OrderKind kind() const { return kind_; }
    const std::vector<bool>& elim_mask() const { return mask_; }

    // Strict "a after b" comparison: returns +1 if a > b, -1 if a < b, 0 else.
    int compare(const Monomial& a, const Monomial& b) const
    {
        switch (kind_) {
        case OrderKind::Lex: return cmp_lex(a, b);
        case OrderKind::Grevlex: return cmp_grevlex_full(a, b);
        case OrderKind::Block: {
            int c = cmp_grevlex_masked(a, b, mask_, true);
            if (c != 0) return c;
            return cmp_grevlex_masked(a, b, mask_, false);
        }
        }
        return 0;
    }

    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    // Stable identity for the per-ideal basis cache.
    std::string cache_key() const
    {
        switch (kind_) {
        case OrderKind::Lex: return "lex";
        case OrderKind::Grevlex: return "grevlex";
        case OrderKind::Block: {
            std::string k = "block:";
            for (bool b : mask_) k.push_back(b ? '1' : '0');
            return k;
        }
        }
        return "?";
    }

    friend bool operator==(const MonomialOrder& a, const MonomialOrder& b)
    {
        return a.kind_ == b.kind_ && a.mask_ == b.mask_;
    }

  private:
    MonomialOrder(OrderKind k, std::vector<bool> mask) : kind_(k), mask_(std::move(mask)) {}

    static int cmp_lex(const Monomial& a, const Monomial& b)
    {
        for (std::size_t i = 0; i < a.nvars(); ++i) {
            if (a.exp(i) != b.exp(i)) return a.exp(i) > b.exp(i) ? 1 : -1;
        }
        return 0;
    }

    static int cmp_grevlex_full(const Monomial& a, const Monomial& b)
    {
        std::uint64_t da = a.total_degree(), db = b.total_degree();
        if (da != db) return da > db ? 1 : -1;
        // Equal degree: last variable with differing exponent, smaller wins.
        for (std::size_t i = a.nvars(); i-- > 0;) {
            if (a.exp(i) != b.exp(i)) return a.exp(i) < b.exp(i) ? 1 : -1;
        }
        return 0;
    }

    static int cmp_grevlex_masked(const Monomial& a, const Monomial& b,
                                  const std::vector<bool>& mask, bool inside)
    {
        std::uint64_t da = 0, db = 0;
        for (std::size_t i = 0; i < a.nvars(); ++i) {
            if (mask[i] == inside) {
                da += a.exp(i);
                db += b.exp(i);
            }
        }
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t i = a.nvars(); i-- > 0;) {
            if (mask[i] == inside && a.exp(i) != b.exp(i))
                return a.exp(i) < b.exp(i) ? 1 : -1;
        }
        return 0;
    }

    OrderKind kind_;
    std::vector<bool> mask_; // Block only
};

} // namespace sep
