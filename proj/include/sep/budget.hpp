#pragma once

// Resource bounds for basis computations. Defaults are generous for the
// shipped corpus; exceeding a bound raises BudgetError, which verdict-level
// callers translate into a typed Undecided.

#include <cstdint>

namespace sep {

struct Budget {
    std::size_t max_basis = 6000;
    std::uint64_t max_degree = 160;
    std::uint64_t max_steps = 8'000'000;
};

inline Budget& global_budget()
{
    static Budget b;
    return b;
}

} // namespace sep
