#pragma once

// Monomials as exponent vectors over a fixed ambient variable list.

#include "sep/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace sep {

class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : e_(std::move(exps)) {}

    std::size_t nvars() const { return e_.size(); }
    std::uint32_t exp(std::size_t i) const { return e_[i]; }
    void set_exp(std::size_t i, std::uint32_t v) { e_[i] = v; }

    std::uint64_t total_degree() const
    {
        return std::accumulate(e_.begin(), e_.end(), std::uint64_t{0});
    }

    bool is_one() const
    {
        return std::all_of(e_.begin(), e_.end(), [](auto x) { return x == 0; });
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial r(a.e_.size());
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }

    bool divides(const Monomial& other) const
    {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > other.e_[i]) return false;
        return true;
    }

    // Quotient of exponent vectors; requires divisibility.
    friend Monomial operator/(const Monomial& a, const Monomial& b)
    {
        Monomial r(a.e_.size());
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b)
    {
        Monomial r(a.e_.size());
        for (std::size_t i = 0; i < a.e_.size(); ++i)
            r.e_[i] = std::max(a.e_[i], b.e_[i]);
        return r;
    }

    friend bool coprime(const Monomial& a, const Monomial& b)
    {
        for (std::size_t i = 0; i < a.e_.size(); ++i)
            if (a.e_[i] != 0 && b.e_[i] != 0) return false;
        return true;
    }

    // True when every variable outside `mask` has exponent zero.
    bool supported_on(const std::vector<bool>& mask) const
    {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] != 0 && !mask[i]) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    // Canonical container ordering (not a monomial order).
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.e_ < b.e_; }

    const std::vector<std::uint32_t>& exps() const { return e_; }

  private:
    std::vector<std::uint32_t> e_;
};

} // namespace sep
