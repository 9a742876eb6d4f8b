#pragma once

#include "isphere/persmod.hpp"

#include <random>

namespace testsupport {

using namespace isphere;

inline Rational small_rational(std::mt19937_64& rng)
{
    static const int nums[] = {-2, -1, -1, 1, 1, 2, 3};
    Rational r(nums[rng() % 7], 1 + static_cast<int>(rng() % 2));
    r.canonicalize();
    return r;
}

/// Random matrix of rank at most `k`, built as a product so ranks vary.
inline Matrix random_low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t k)
{
    Matrix a(rows, k), b(k, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (rng() % 3)
                a(i, j) = small_rational(rng);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (rng() % 3)
                b(i, j) = small_rational(rng);
    return a * b;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols)
{
    std::size_t k = std::min(rows, cols);
    return random_low_rank(rng, rows, cols, k == 0 ? 0 : rng() % (k + 1));
}

/// Invertible n x n: unit lower times unit upper triangular.
inline Matrix random_invertible(std::mt19937_64& rng, std::size_t n)
{
    Matrix l = Matrix::identity(n), u = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            if (rng() % 2)
                l(i, j) = small_rational(rng);
            if (rng() % 2)
                u(j, i) = small_rational(rng);
        }
    return l * u;
}

inline EventGrid random_grid(std::mt19937_64& rng, std::size_t max_values)
{
    std::size_t n = 1 + rng() % max_values;
    std::vector<Rational> v;
    for (std::size_t i = 0; i < n; ++i)
        v.emplace_back(static_cast<long>(i));
    return EventGrid(v);
}

inline PersModule random_module(std::mt19937_64& rng, const EventGrid& g, std::size_t max_dim)
{
    std::vector<std::size_t> dims(g.node_count());
    for (auto& d : dims)
        d = rng() % (max_dim + 1);
    std::vector<Matrix> steps;
    for (std::size_t j = 0; j + 1 < dims.size(); ++j)
        steps.push_back(random_matrix(rng, dims[j + 1], dims[j]));
    return PersModule(g, dims, steps);
}

} // namespace testsupport
