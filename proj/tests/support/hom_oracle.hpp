#pragma once

// Brute-force Hom of persistent complexes: every chain map X -> Y as the
// kernel of the naturality and d-compatibility equations on all entries.

#include "isphere/exactla.hpp"
#include "isphere/pcx.hpp"

namespace testsupport {

using namespace isphere;

struct EntryLayout {
    std::vector<std::vector<std::size_t>> offset;  // offset[k][j] of block f[k][j]
    std::size_t total = 0;
};

inline EntryLayout entry_layout(const PersComplex& x, const PersComplex& y)
{
    EntryLayout l;
    l.offset.resize(x.max_degree() + 1);
    for (std::size_t k = 0; k <= x.max_degree(); ++k)
        for (std::size_t j = 0; j < x.node_count(); ++j) {
            l.offset[k].push_back(l.total);
            l.total += y.dim(k, j) * x.dim(k, j);
        }
    return l;
}

inline Vector flatten(const PersComplexMap& f)
{
    Vector v;
    for (const auto& deg : f.f)
        for (const auto& m : deg)
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    v.push_back(m(r, c));
    return v;
}

inline PersComplexMap unflatten(const PersComplex& x, const PersComplex& y, const Vector& v)
{
    EntryLayout l = entry_layout(x, y);
    PersComplexMap f{x, y, {}};
    for (std::size_t k = 0; k <= x.max_degree(); ++k) {
        f.f.emplace_back();
        for (std::size_t j = 0; j < x.node_count(); ++j) {
            Matrix m(y.dim(k, j), x.dim(k, j));
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    m(r, c) = v[l.offset[k][j] + r * m.cols() + c];
            f.f[k].push_back(m);
        }
    }
    return f;
}

/// Equations whose kernel is Hom(X, Y) in the flattened entry space.
inline Matrix hom_equations(const PersComplex& x, const PersComplex& y)
{
    EntryLayout l = entry_layout(x, y);
    std::vector<Vector> rows;
    auto add = [&](std::size_t k1, std::size_t j1, const Matrix& right, std::size_t k2, std::size_t j2,
                   const Matrix& left) {
        // f[k1][j1] * right - left * f[k2][j2] = 0
        std::size_t R = left.rows(), C = right.cols();
        std::size_t cols1 = x.dim(k1, j1), cols2 = x.dim(k2, j2);
        for (std::size_t r = 0; r < R; ++r)
            for (std::size_t c = 0; c < C; ++c) {
                Vector row = zero_vector(l.total);
                for (std::size_t m = 0; m < right.rows(); ++m)
                    row[l.offset[k1][j1] + r * cols1 + m] += right(m, c);
                for (std::size_t m = 0; m < left.cols(); ++m)
                    row[l.offset[k2][j2] + m * cols2 + c] -= left(r, m);
                rows.push_back(std::move(row));
            }
    };
    for (std::size_t k = 0; k <= x.max_degree(); ++k)
        for (std::size_t j = 0; j + 1 < x.node_count(); ++j)
            add(k, j + 1, x.step(k, j), k, j, y.step(k, j));
    for (std::size_t k = 0; k < x.max_degree(); ++k)
        for (std::size_t j = 0; j < x.node_count(); ++j)
            add(k + 1, j, x.d(k, j), k, j, y.d(k, j));
    Matrix m(rows.size(), l.total);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < l.total; ++c)
            m(r, c) = rows[r][c];
    return m;
}

inline std::vector<PersComplexMap> hom_basis(const PersComplex& x, const PersComplex& y)
{
    Matrix k = exactla::kernel_basis(hom_equations(x, y));
    std::vector<PersComplexMap> out;
    for (std::size_t c = 0; c < k.cols(); ++c)
        out.push_back(unflatten(x, y, k.column(c)));
    return out;
}

} // namespace testsupport
