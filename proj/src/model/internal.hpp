#pragma once

#include "isphere/errors.hpp"
#include "isphere/exactla.hpp"
#include "isphere/pcx.hpp"

#include <exception>
#include <optional>
#include <string>
#include <vector>

namespace isphere::model::detail {

// Degree-safe accessors: degrees outside 0..N are zero spaces.

inline std::size_t dim(const PersComplex& x, long k, std::size_t j)
{
    if (k < 0 || k > static_cast<long>(x.max_degree()))
        return 0;
    return x.dim(static_cast<std::size_t>(k), j);
}

/// d^k: X^k(j) -> X^{k+1}(j).
inline Matrix dmat(const PersComplex& x, long k, std::size_t j)
{
    if (k < 0 || k > static_cast<long>(x.max_degree()))
        return Matrix(dim(x, k + 1, j), dim(x, k, j));
    return x.d(static_cast<std::size_t>(k), j);
}

inline Matrix push(const PersComplex& x, long k, std::size_t p, std::size_t q)
{
    if (k < 0 || k > static_cast<long>(x.max_degree()))
        return Matrix(0, 0);
    return x.module(static_cast<std::size_t>(k)).composite(p, q);
}

inline Matrix fmat(const PersComplexMap& f, long k, std::size_t j)
{
    if (k < 0 || k > static_cast<long>(f.source.max_degree()))
        return Matrix(0, 0);
    return f.at(static_cast<std::size_t>(k), j);
}

/// Runs check(i) for every task, in parallel when asked, and returns the
/// failure of the smallest index. Exceptions are rethrown in task order.
template <class Check>
auto first_failure(std::size_t count, bool parallel, Check&& check) -> decltype(check(std::size_t{}))
{
    using Result = decltype(check(std::size_t{}));
    std::vector<Result> out(count);
    std::vector<std::exception_ptr> errors(count);
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = check(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        if (out[i])
            return out[i];
    }
    return Result{};
}

inline void require_same_shape(const PersComplexMap& f)
{
    if (f.source.grid() != f.target.grid() || f.source.max_degree() != f.target.max_degree())
        throw UsageError("source and target must share grid and maximal degree");
}

} // namespace isphere::model::detail
