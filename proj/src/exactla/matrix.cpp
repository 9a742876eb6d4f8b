#include "isphere/matrix.hpp"

#include "isphere/errors.hpp"

#include <sstream>

namespace isphere {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw UsageError("empty rational literal");
    Rational value;
    if (value.set_str(s, 10) != 0)
        throw UsageError("malformed rational literal '" + s + "'");
    if (value.get_den() == 0)
        throw UsageError("zero denominator in '" + s + "'");
    value.canonicalize();
    return value;
}

std::string format_rational(const Rational& value)
{
    if (value.get_den() == 1)
        return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

Vector unit_vector(std::size_t n, std::size_t i)
{
    Vector v(n, Rational(0));
    v.at(i) = 1;
    return v;
}

bool is_zero(const Vector& v)
{
    for (const auto& x : v)
        if (sgn(x) != 0)
            return false;
    return true;
}

Vector operator+(const Vector& a, const Vector& b)
{
    if (a.size() != b.size())
        throw UsageError("vector size mismatch in +");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

Vector operator-(const Vector& a, const Vector& b)
{
    if (a.size() != b.size())
        throw UsageError("vector size mismatch in -");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

Vector operator*(const Rational& c, const Vector& v)
{
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = c * v[i];
    return r;
}

Vector concat(const Vector& a, const Vector& b)
{
    Vector r(a);
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Vector slice(const Vector& v, std::size_t begin, std::size_t count)
{
    if (begin + count > v.size())
        throw UsageError("vector slice out of range");
    return Vector(v.begin() + static_cast<std::ptrdiff_t>(begin),
                  v.begin() + static_cast<std::ptrdiff_t>(begin + count));
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0))
{
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw UsageError("ragged matrix literal");
        for (const auto& x : row)
            data_.push_back(x);
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns)
{
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        m.set_column(c, columns[c]);
    return m;
}

Vector Matrix::column(std::size_t c) const
{
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

Vector Matrix::row(std::size_t r) const
{
    Vector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        v[c] = (*this)(r, c);
    return v;
}

void Matrix::set_column(std::size_t c, const Vector& v)
{
    if (v.size() != rows_ || c >= cols_)
        throw UsageError("set_column: dimension mismatch");
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& other) const
{
    if (cols_ != other.rows_)
        throw UsageError("matrix product: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                         " times " + std::to_string(other.rows_) + "x" + std::to_string(other.cols_));
    Matrix p(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (sgn(a) == 0)
                continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                p(i, j) += a * other(k, j);
        }
    return p;
}

Vector Matrix::operator*(const Vector& v) const
{
    if (cols_ != v.size())
        throw UsageError("matrix-vector product: dimension mismatch");
    Vector r(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k)
            if (sgn(v[k]) != 0)
                r[i] += (*this)(i, k) * v[k];
    return r;
}

Matrix Matrix::operator+(const Matrix& other) const
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw UsageError("matrix sum: dimension mismatch");
    Matrix s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        s.data_[i] = data_[i] + other.data_[i];
    return s;
}

Matrix Matrix::operator-(const Matrix& other) const
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw UsageError("matrix difference: dimension mismatch");
    Matrix s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        s.data_[i] = data_[i] - other.data_[i];
    return s;
}

Matrix Matrix::operator-() const { return scaled(Rational(-1)); }

Matrix Matrix::scaled(const Rational& c) const
{
    Matrix s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        s.data_[i] = c * data_[i];
    return s;
}

bool Matrix::is_zero() const
{
    for (const auto& x : data_)
        if (sgn(x) != 0)
            return false;
    return true;
}

bool Matrix::is_identity() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0))
                return false;
    return true;
}

bool Matrix::operator==(const Matrix& other) const
{
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cols) const
{
    Matrix m(rows_, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t r = 0; r < rows_; ++r)
            m(r, j) = (*this)(r, cols[j]);
    return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rows) const
{
    Matrix m(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < cols_; ++c)
            m(i, c) = (*this)(rows[i], c);
    return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw UsageError("matrix block out of range");
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m)
{
    if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_)
        throw UsageError("set_block out of range");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            (*this)(r0 + i, c0 + j) = m(i, j);
}

std::string Matrix::to_string() const
{
    std::ostringstream out;
    out << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        out << (r ? ", [" : "[");
        for (std::size_t c = 0; c < cols_; ++c)
            out << (c ? ", " : "") << format_rational((*this)(r, c));
        out << "]";
    }
    out << "] (" << rows_ << "x" << cols_ << ")";
    return out.str();
}

Matrix hstack(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows())
        throw UsageError("hstack: row mismatch");
    Matrix m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

Matrix vstack(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.cols())
        throw UsageError("vstack: column mismatch");
    Matrix m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

Matrix vstack(const std::vector<Matrix>& blocks, std::size_t cols)
{
    std::size_t rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols)
            throw UsageError("vstack: column mismatch");
        rows += b.rows();
    }
    Matrix m(rows, cols);
    std::size_t r = 0;
    for (const auto& b : blocks) {
        m.set_block(r, 0, b);
        r += b.rows();
    }
    return m;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks)
{
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix m(rows, cols);
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

} // namespace isphere
