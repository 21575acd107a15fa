#pragma once

#include "cyp/exact/series.hpp"

#include <random>

namespace cyp::testing {

inline std::mt19937_64 &rng()
{
    static std::mt19937_64 g(20240611);
    return g;
}

inline long uniform(long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

inline Rational random_rational(long num_bound = 20, long den_bound = 9)
{
    return Rational(Integer(uniform(-num_bound, num_bound)), Integer(uniform(1, den_bound)));
}

inline QSeries random_series(size_t order, const std::string &var = "z")
{
    QSeries s(var, order);
    for (size_t i = 0; i < order; ++i)
        s[i] = random_rational();
    return s;
}

} // namespace cyp::testing
