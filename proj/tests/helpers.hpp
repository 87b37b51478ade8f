#pragma once

#include "fmd/core.hpp"

#include <cmath>
#include <cstring>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace fmd::test {

inline bool same_bits(double a, double b)
{
    std::uint64_t x = 0, y = 0;
    std::memcpy(&x, &a, sizeof x);
    std::memcpy(&y, &b, sizeof y);
    return x == y;
}

inline bool same_bits(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!same_bits(a[k], b[k])) return false;
    return true;
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

/// History filled with uniform [0, 1) values on every row.
inline SolutionHistory random_history(const GridSpec& grid, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> row(grid.n_space());
    for (auto& v : row) v = u(rng);
    SolutionHistory h(grid, row);
    for (int n = 1; n <= grid.n_time(); ++n) {
        for (auto& v : row) v = u(rng);
        h.set_row(n, row);
    }
    return h;
}

}  // namespace fmd::test
