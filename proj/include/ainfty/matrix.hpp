#pragma once

#include <optional>
#include <vector>

#include "rational.hpp"

namespace ainfty {

/// Dense matrix over the rationals. Row-major. Sized for desk-scale complexes;
/// elimination is plain Gauss-Jordan with leftmost-pivot, first-row tie-breaking
/// so every derived basis is reproducible byte for byte.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0)
                return false;
        return true;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& rhs) const {
        if (cols_ != rhs.rows_)
            throw malformed_input("matrix product dimension mismatch");
        Matrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = (*this)(i, k);
                if (a == 0)
                    continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j)
                    out(i, j) += a * rhs(k, j);
            }
        return out;
    }

    Matrix operator+(const Matrix& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw malformed_input("matrix sum dimension mismatch");
        Matrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i)
            out.data_[i] += rhs.data_[i];
        return out;
    }

    Matrix operator-(const Matrix& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw malformed_input("matrix difference dimension mismatch");
        Matrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i)
            out.data_[i] -= rhs.data_[i];
        return out;
    }

    Matrix scaled(const Rational& s) const {
        Matrix out = *this;
        for (auto& x : out.data_)
            x *= s;
        return out;
    }

    std::vector<Rational> apply(const std::vector<Rational>& v) const {
        if (v.size() != cols_)
            throw malformed_input("matrix apply dimension mismatch");
        std::vector<Rational> out(rows_);
        // column accumulation: sparse inputs only touch their columns
        for (std::size_t j = 0; j < cols_; ++j) {
            if (v[j] == 0)
                continue;
            for (std::size_t i = 0; i < rows_; ++i) {
                const Rational& m = (*this)(i, j);
                if (m != 0)
                    out[i] += m * v[j];
            }
        }
        return out;
    }

    /// In-place reduced row echelon form; returns pivot column indices in order.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t sel = row;
            while (sel < rows_ && (*this)(sel, col) == 0)
                ++sel;
            if (sel == rows_)
                continue;
            if (sel != row)
                for (std::size_t j = 0; j < cols_; ++j)
                    std::swap((*this)(sel, j), (*this)(row, j));
            const Rational inv = Rational(1) / (*this)(row, col);
            for (std::size_t j = col; j < cols_; ++j)
                (*this)(row, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row)
                    continue;
                const Rational f = (*this)(i, col);
                if (f == 0)
                    continue;
                for (std::size_t j = col; j < cols_; ++j)
                    (*this)(i, j) -= f * (*this)(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix tmp = *this;
        return tmp.rref().size();
    }

    /// One solution of Ax = b, free variables set to zero; nullopt if inconsistent.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const {
        if (b.size() != rows_)
            throw malformed_input("solve: rhs length does not match row count");
        Matrix aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j)
                aug(i, j) = (*this)(i, j);
            aug(i, cols_) = b[i];
        }
        const auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_)
            return std::nullopt;
        std::vector<Rational> x(cols_);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            x[pivots[r]] = aug(r, cols_);
        return x;
    }

    /// Canonical kernel basis from RREF: one vector per free column, ascending.
    std::vector<std::vector<Rational>> kernel_basis() const {
        Matrix tmp = *this;
        const auto pivots = tmp.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots)
            is_pivot[c] = true;
        std::vector<std::vector<Rational>> basis;
        for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
            if (is_pivot[free_col])
                continue;
            std::vector<Rational> v(cols_);
            v[free_col] = 1;
            for (std::size_t r = 0; r < pivots.size(); ++r)
                v[pivots[r]] = -tmp(r, free_col);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// Echelon basis of the column space (RREF rows of the transpose).
    std::vector<std::vector<Rational>> column_space_basis() const {
        Matrix t = transposed();
        const auto pivots = t.rref();
        std::vector<std::vector<Rational>> basis;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            std::vector<Rational> v(rows_);
            for (std::size_t j = 0; j < rows_; ++j)
                v[j] = t(r, j);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    static Matrix from_columns(const std::vector<std::vector<Rational>>& cols, std::size_t nrows) {
        Matrix m(nrows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != nrows)
                throw malformed_input("from_columns: ragged column");
            for (std::size_t i = 0; i < nrows; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    std::optional<Matrix> inverse() const {
        if (rows_ != cols_)
            throw malformed_input("inverse of non-square matrix");
        Matrix aug(rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j)
                aug(i, j) = (*this)(i, j);
            aug(i, cols_ + i) = 1;
        }
        const auto pivots = aug.rref();
        if (pivots.size() != rows_ || (rows_ > 0 && pivots.back() >= cols_))
            return std::nullopt;
        Matrix inv(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                inv(i, j) = aug(i, cols_ + j);
        return inv;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Incremental echelon span for membership and rank questions.
class SubspaceBuilder {
  public:
    explicit SubspaceBuilder(std::size_t dim) : dim_(dim) {}

    /// Adds a vector; returns true if it enlarged the span.
    bool add(std::vector<Rational> v) {
        if (v.size() != dim_)
            throw malformed_input("subspace add: wrong length");
        reduce(v);
        std::size_t lead = leading(v);
        if (lead == dim_)
            return false;
        const Rational inv = Rational(1) / v[lead];
        for (auto& x : v)
            x *= inv;
        rows_.push_back(std::move(v));
        leads_.push_back(lead);
        // keep rows sorted by leading index for deterministic output
        for (std::size_t i = rows_.size(); i-- > 1;) {
            if (leads_[i] < leads_[i - 1]) {
                std::swap(rows_[i], rows_[i - 1]);
                std::swap(leads_[i], leads_[i - 1]);
            } else {
                break;
            }
        }
        return true;
    }

    bool contains(std::vector<Rational> v) const {
        if (v.size() != dim_)
            throw malformed_input("subspace contains: wrong length");
        reduce(v);
        return leading(v) == dim_;
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  private:
    void reduce(std::vector<Rational>& v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Rational f = v[leads_[r]];
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < dim_; ++j)
                v[j] -= f * rows_[r][j];
        }
    }

    std::size_t leading(const std::vector<Rational>& v) const {
        for (std::size_t j = 0; j < dim_; ++j)
            if (v[j] != 0)
                return j;
        return dim_;
    }

    std::size_t dim_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> leads_;
};

} // namespace ainfty
