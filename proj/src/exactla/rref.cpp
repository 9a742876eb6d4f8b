#include "isphere/exactla.hpp"

#include "isphere/errors.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace isphere::exactla {

namespace {

std::atomic<std::size_t> g_threshold{4096};

// Shared elimination skeleton. `eliminate` clears column `col` in every row
// except the pivot row using the (already normalised) pivot row.
template <class Eliminate>
RrefResult reduce(const Matrix& m, Eliminate&& eliminate)
{
    RrefResult res{m, {}, Matrix::identity(m.rows())};
    Matrix& a = res.reduced;
    Matrix& t = res.transform;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::size_t prow = 0;
    for (std::size_t col = 0; col < cols && prow < rows; ++col) {
        std::size_t found = rows;
        for (std::size_t r = prow; r < rows; ++r)
            if (sgn(a(r, col)) != 0) {
                found = r;
                break;
            }
        if (found == rows)
            continue;
        if (found != prow) {
            for (std::size_t c = 0; c < cols; ++c)
                std::swap(a(found, c), a(prow, c));
            for (std::size_t c = 0; c < rows; ++c)
                std::swap(t(found, c), t(prow, c));
        }
        Rational inv = 1 / a(prow, col);
        for (std::size_t c = col; c < cols; ++c)
            a(prow, c) *= inv;
        for (std::size_t c = 0; c < rows; ++c)
            t(prow, c) *= inv;
        eliminate(a, t, prow, col);
        res.pivots.push_back(col);
        ++prow;
    }
    return res;
}

void eliminate_row(Matrix& a, Matrix& t, std::size_t r, std::size_t prow, std::size_t col)
{
    if (r == prow || sgn(a(r, col)) == 0)
        return;
    Rational f = a(r, col);
    for (std::size_t c = col; c < a.cols(); ++c)
        if (sgn(a(prow, c)) != 0)
            a(r, c) -= f * a(prow, c);
    for (std::size_t c = 0; c < t.cols(); ++c)
        if (sgn(t(prow, c)) != 0)
            t(r, c) -= f * t(prow, c);
}

} // namespace

void set_parallel_threshold(std::size_t threshold) { g_threshold = threshold; }
std::size_t parallel_threshold() { return g_threshold; }

namespace serial {
RrefResult rref(const Matrix& m)
{
    return reduce(m, [](Matrix& a, Matrix& t, std::size_t prow, std::size_t col) {
        for (std::size_t r = 0; r < a.rows(); ++r)
            eliminate_row(a, t, r, prow, col);
    });
}
} // namespace serial

RrefResult rref(const Matrix& m)
{
    if (m.rows() * m.cols() < g_threshold)
        return serial::rref(m);
    return reduce(m, [](Matrix& a, Matrix& t, std::size_t prow, std::size_t col) {
        const long rows = static_cast<long>(a.rows());
        // Rows are independent once the pivot row is fixed.
#pragma omp parallel for schedule(dynamic, 4)
        for (long r = 0; r < rows; ++r)
            eliminate_row(a, t, static_cast<std::size_t>(r), prow, col);
    });
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::optional<Vector> solve_linear(const Matrix& a, const Vector& b)
{
    if (a.rows() != b.size())
        throw UsageError("solve_linear: " + std::to_string(a.rows()) + " equations but rhs of size " +
                         std::to_string(b.size()));
    Matrix aug = hstack(a, Matrix::column_matrix(b));
    RrefResult r = rref(aug);
    Vector x = zero_vector(a.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] == a.cols())
            return std::nullopt;
        x[r.pivots[i]] = r.reduced(i, a.cols());
    }
    return x;
}

std::optional<Matrix> solve_matrix(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows())
        throw UsageError("solve_matrix: row mismatch");
    Matrix x(a.cols(), b.cols());
    if (b.cols() == 0)
        return x;
    RrefResult r = rref(a);
    Matrix tb = r.transform * b;
    const std::size_t rk = r.pivots.size();
    for (std::size_t i = rk; i < tb.rows(); ++i)
        for (std::size_t c = 0; c < tb.cols(); ++c)
            if (sgn(tb(i, c)) != 0)
                return std::nullopt;
    for (std::size_t i = 0; i < rk; ++i)
        for (std::size_t c = 0; c < tb.cols(); ++c)
            x(r.pivots[i], c) = tb(i, c);
    return x;
}

Matrix kernel_basis(const Matrix& a)
{
    RrefResult r = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : r.pivots)
        is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vector v = zero_vector(a.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            v[r.pivots[i]] = -r.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return Matrix::from_columns(a.cols(), basis);
}

Matrix image_basis(const Matrix& a) { return a.select_columns(rref(a).pivots); }

Matrix left_annihilator(const Matrix& a)
{
    return kernel_basis(a.transpose()).transpose();
}

std::optional<Matrix> inverse(const Matrix& a)
{
    if (a.rows() != a.cols())
        throw UsageError("inverse of non-square matrix");
    RrefResult r = rref(a);
    if (r.pivots.size() != a.rows())
        return std::nullopt;
    return r.transform;
}

Matrix right_inverse(const Matrix& q)
{
    auto x = solve_matrix(q, Matrix::identity(q.rows()));
    if (!x)
        throw UsageError("right_inverse: matrix does not have full row rank");
    return *x;
}

Matrix complete_basis(const Matrix& independent, std::size_t n)
{
    if (independent.rows() != n)
        throw UsageError("complete_basis: row mismatch");
    Matrix acc = independent;
    std::size_t rk = rank(acc);
    std::vector<Vector> added;
    for (std::size_t i = 0; i < n && rk < n; ++i) {
        Vector e = unit_vector(n, i);
        Matrix trial = hstack(acc, Matrix::column_matrix(e));
        std::size_t rk2 = rank(trial);
        if (rk2 > rk) {
            acc = std::move(trial);
            rk = rk2;
            added.push_back(std::move(e));
        }
    }
    return Matrix::from_columns(n, added);
}

bool in_column_span(const Matrix& a, const Vector& v)
{
    return solve_linear(a, v).has_value();
}

PullbackBasis pullback_basis(const Matrix& f, const Matrix& g)
{
    if (f.rows() != g.rows())
        throw UsageError("pullback_basis: codomain mismatch");
    Matrix k = kernel_basis(hstack(f, -g));
    return {k.block(0, 0, f.cols(), k.cols()), k.block(f.cols(), 0, g.cols(), k.cols())};
}

} // namespace isphere::exactla
