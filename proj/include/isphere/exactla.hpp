#pragma once

// Exact dense linear algebra over Q.
//
// Pivoting is deterministic: the pivot of each column is the first row (at or
// below the current pivot row) with a nonzero entry, columns are scanned left
// to right. All results are therefore reproducible bit for bit, which the
// barcode and certificate code relies on.

#include "isphere/matrix.hpp"

#include <optional>
#include <vector>

namespace isphere::exactla {

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    Matrix transform;  // reduced == transform * input, transform invertible
};

/// Row reduction. Row updates for each pivot run in parallel (OpenMP) once the
/// matrix is large enough; the result is identical to serial::rref.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Solution of a*x = b with all free variables set to zero, or nullopt when
/// the system is inconsistent. Throws UsageError on dimension mismatch.
std::optional<Vector> solve_linear(const Matrix& a, const Vector& b);

/// Column-wise solve of a*X = B; nullopt if any column is inconsistent.
std::optional<Matrix> solve_matrix(const Matrix& a, const Matrix& b);

/// Columns form a basis of ker(a): one column per free variable, in column
/// order, with a 1 in the free slot.
Matrix kernel_basis(const Matrix& a);

/// Columns of `a` at its pivot positions: a basis of the column space.
Matrix image_basis(const Matrix& a);

/// Rows span the left annihilator {l : l * a = 0}.
Matrix left_annihilator(const Matrix& a);

std::optional<Matrix> inverse(const Matrix& a);

/// For q of full row rank, some r with q * r = identity.
Matrix right_inverse(const Matrix& q);

/// Appends unit vectors (in index order) to the independent columns of
/// `independent` until they span Q^n. Returns only the appended columns.
Matrix complete_basis(const Matrix& independent, std::size_t n);

bool in_column_span(const Matrix& a, const Vector& v);

struct PullbackBasis {
    Matrix first;   // components in the domain of f
    Matrix second;  // components in the domain of g
    std::size_t dimension() const noexcept { return first.cols(); }
};

/// Basis of {(u, w) : f u = g w}, computed as kernel_basis([f | -g]).
PullbackBasis pullback_basis(const Matrix& f, const Matrix& g);

namespace serial {
/// Single-threaded reference implementation; kept for tests and benchmarks.
RrefResult rref(const Matrix& m);
} // namespace serial

/// Work threshold (rows * cols) above which rref parallelises row updates.
void set_parallel_threshold(std::size_t threshold);
std::size_t parallel_threshold();

} // namespace isphere::exactla
