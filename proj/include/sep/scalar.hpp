#pragma once

// Exact coefficient arithmetic: arbitrary-precision rationals for the main
// path, and a small prime-field type used by the finite-field oracle.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sep {

using BigInt = boost::multiprecision::cpp_int;

// Always stored in lowest terms with positive denominator (the backend
// normalizes on every operation).
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a configured resource bound is exceeded; callers that expose a
// verdict translate this into a typed Undecided, never a wrong answer.
struct BudgetError : Error {
    explicit BudgetError(const std::string& what) : Error(what) {}
};

inline std::string to_string(const Rational& q) { return q.str(); }

inline Rational rational_of(long long num, long long den = 1)
{
    if (den == 0) throw Error("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

// --- prime field ------------------------------------------------------------

// Element of F_p for a small runtime prime p (< 2^16). Oracle use only.
class Fp {
  public:
    Fp() : v_(0), p_(0) {}
    Fp(std::uint32_t value, std::uint32_t p) : v_(value % p), p_(p) {}

    std::uint32_t value() const { return v_; }
    std::uint32_t prime() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    friend Fp operator+(Fp a, Fp b) { return Fp((a.v_ + b.v_) % a.checked(b), a.p_); }
    friend Fp operator-(Fp a, Fp b) { return Fp((a.v_ + a.p_ - b.v_) % a.checked(b), a.p_); }
    friend Fp operator*(Fp a, Fp b)
    {
        return Fp(static_cast<std::uint32_t>(
                      (std::uint64_t(a.v_) * b.v_) % a.checked(b)),
                  a.p_);
    }
    Fp inverse() const
    {
        if (v_ == 0) throw Error("inverse of zero in F_p");
        return pow(p_ - 2);
    }
    Fp pow(std::uint64_t e) const
    {
        Fp r(1, p_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
    friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && a.p_ == b.p_; }

  private:
    std::uint32_t checked(Fp other) const
    {
        if (p_ != other.p_) throw Error("mixed primes in F_p arithmetic");
        return p_;
    }
    std::uint32_t v_;
    std::uint32_t p_;
};

// Reduce an exact rational mod p. Fails if p divides the denominator; the
// oracle skips (and logs) such inputs.
inline bool rational_mod_p(const Rational& q, std::uint32_t p, std::uint32_t& out)
{
    BigInt num = numerator(q) % p;
    BigInt den = denominator(q) % p;
    if (den == 0) return false;
    std::uint32_t n = static_cast<std::uint32_t>(num < 0 ? num + p : num);
    std::uint32_t d = static_cast<std::uint32_t>(den);
    out = (Fp(n, p) * Fp(d, p).inverse()).value();
    return true;
}

} // namespace sep
