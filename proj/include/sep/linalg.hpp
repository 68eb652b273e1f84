#pragma once

// Small dense exact linear algebra over Q and over F_p. Used by the
// brute-force oracles and by degree-bounded spanning checks.

#include "sep/scalar.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sep {

// Solves A x = b over Q (A given row-major, size r x c). Returns one solution
// if the system is consistent.
inline std::optional<std::vector<Rational>>
solve_rational(std::vector<std::vector<Rational>> A, std::vector<Rational> b)
{
    std::size_t rows = A.size();
    std::size_t cols = rows ? A[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        Rational inv = Rational(1) / A[r][c];
        for (std::size_t j = c; j < cols; ++j) A[r][j] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

// Consistency of A x = b_k for many right-hand sides against one elimination.
inline std::vector<bool> consistent_many(std::vector<std::vector<Rational>> A,
                                         std::vector<std::vector<Rational>> B)
{
    std::size_t rows = A.size();
    std::size_t cols = rows ? A[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        std::swap(B[piv], B[r]);
        Rational inv = Rational(1) / A[r][c];
        for (std::size_t j = c; j < cols; ++j) A[r][j] *= inv;
        for (auto& x : B[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            for (std::size_t k = 0; k < B[i].size(); ++k) B[i][k] -= f * B[r][k];
        }
        ++r;
    }
    std::size_t nrhs = B.empty() ? 0 : B[0].size();
    std::vector<bool> ok(nrhs, true);
    for (std::size_t i = r; i < rows; ++i)
        for (std::size_t k = 0; k < nrhs; ++k)
            if (B[i][k] != 0) ok[k] = false;
    return ok;
}

inline std::vector<bool> consistent_many_mod_p(std::vector<std::vector<std::uint32_t>> A,
                                               std::vector<std::vector<std::uint32_t>> B,
                                               std::uint32_t p)
{
    std::size_t rows = A.size();
    std::size_t cols = rows ? A[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A[piv][c] % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        std::swap(B[piv], B[r]);
        std::uint64_t inv = Fp(A[r][c], p).inverse().value();
        for (std::size_t j = c; j < cols; ++j)
            A[r][j] = static_cast<std::uint32_t>(A[r][j] * inv % p);
        for (auto& x : B[r]) x = static_cast<std::uint32_t>(x * inv % p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] % p == 0) continue;
            std::uint64_t f = p - A[i][c] % p;
            for (std::size_t j = c; j < cols; ++j)
                A[i][j] = static_cast<std::uint32_t>((A[i][j] + f * A[r][j]) % p);
            for (std::size_t k = 0; k < B[i].size(); ++k)
                B[i][k] = static_cast<std::uint32_t>((B[i][k] + f * B[r][k]) % p);
        }
        ++r;
    }
    std::size_t nrhs = B.empty() ? 0 : B[0].size();
    std::vector<bool> ok(nrhs, true);
    for (std::size_t i = r; i < rows; ++i)
        for (std::size_t k = 0; k < nrhs; ++k)
            if (B[i][k] % p != 0) ok[k] = false;
    return ok;
}

inline std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>> A, std::uint32_t p)
{
    std::size_t rows = A.size();
    std::size_t cols = rows ? A[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A[piv][c] % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        std::uint64_t inv = Fp(A[r][c], p).inverse().value();
        for (std::size_t j = c; j < cols; ++j)
            A[r][j] = static_cast<std::uint32_t>(A[r][j] * inv % p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] % p == 0) continue;
            std::uint64_t f = A[i][c];
            for (std::size_t j = c; j < cols; ++j)
                A[i][j] = static_cast<std::uint32_t>(
                    (A[i][j] + (p - 1) * f % p * A[r][j]) % p);
        }
        ++r;
    }
    return r;
}

// Consistency of A x = b over F_p.
inline bool solvable_mod_p(std::vector<std::vector<std::uint32_t>> A,
                           std::vector<std::uint32_t> b, std::uint32_t p)
{
    std::size_t rows = A.size();
    for (std::size_t i = 0; i < rows; ++i) A[i].push_back(b[i] % p);
    std::size_t cols = rows ? A[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c + 1 < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A[piv][c] % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        std::uint64_t inv = Fp(A[r][c], p).inverse().value();
        for (std::size_t j = c; j < cols; ++j)
            A[r][j] = static_cast<std::uint32_t>(A[r][j] * inv % p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] % p == 0) continue;
            std::uint64_t f = A[i][c];
            for (std::size_t j = c; j < cols; ++j)
                A[i][j] = static_cast<std::uint32_t>(
                    (A[i][j] + (p - 1) * f % p * A[r][j]) % p);
        }
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (A[i][cols - 1] % p != 0) return false;
    return true;
}

} // namespace sep
