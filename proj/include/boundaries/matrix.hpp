#pragma once

#include "boundaries/scalar.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace boundaries {

template <class T>
using Vec = std::vector<T>;

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix from_columns(std::size_t rows, const std::vector<Vec<T>>& cols) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec<T> column(std::size_t j) const {
        Vec<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    Vec<T> row(std::size_t i) const { return Vec<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Vec<T> apply(const Vec<T>& v) const {
        Vec<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            T s(0);
            for (std::size_t j = 0; j < cols_; ++j)
                if (!is_zero((*this)(i, j)) && !is_zero(v[j])) s += (*this)(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                if (is_zero(x)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!is_zero(b(k, j))) c(i, j) += x * b(k, j);
            }
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix c = a;
        for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
        return c;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix c = a;
        for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
        return c;
    }

    bool is_zero_matrix() const {
        return std::all_of(a_.begin(), a_.end(), [](const T& x) { return is_zero(x); });
    }
    bool equals(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (!is_zero(T(a_[i] - o.a_[i]))) return false;
        return true;
    }

    // Horizontal concatenation [A | B].
    static Matrix hcat(const Matrix& a, const Matrix& b) {
        std::size_t r = a.cols_ ? a.rows_ : b.rows_;
        Matrix m(r, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
        }
        return m;
    }
    static Matrix block_diag(const Matrix& a, const Matrix& b) {
        Matrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
        return m;
    }
    Matrix select_columns(const std::vector<std::size_t>& idx) const {
        Matrix m(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
        return m;
    }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? "\n[" : "[");
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << field_traits<T>::str((*this)(i, j));
            os << "]";
        }
        return os.str();
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

// Reduced row echelon form in place; returns pivot columns. Floats use
// partial pivoting and treat entries under the tolerance as zero.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t best = m.rows();
        if constexpr (field_traits<T>::exact) {
            for (std::size_t i = r; i < m.rows(); ++i)
                if (!is_zero(m(i, c))) {
                    best = i;
                    break;
                }
        } else {
            double bv = 0;
            for (std::size_t i = r; i < m.rows(); ++i)
                if (std::fabs(m(i, c)) > bv) {
                    bv = std::fabs(m(i, c));
                    best = i;
                }
            if (bv <= real_tolerance()) best = m.rows();
        }
        if (best == m.rows()) continue;
        if (best != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
        T inv = T(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            T f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
            if constexpr (!field_traits<T>::exact) m(i, c) = 0;
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
    return rref(m).size();
}

// Columns spanning the null space.
template <class T>
Matrix<T> kernel_basis(const Matrix<T>& a) {
    Matrix<T> m = a;
    auto piv = rref(m);
    std::vector<bool> is_piv(a.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<Vec<T>> cols;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_piv[f]) continue;
        Vec<T> v(a.cols(), T(0));
        v[f] = T(1);
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(k, f);
        cols.push_back(std::move(v));
    }
    return Matrix<T>::from_columns(a.cols(), cols);
}

// A maximal independent subset of the columns.
template <class T>
Matrix<T> column_basis(const Matrix<T>& a) {
    Matrix<T> m = a;
    auto piv = rref(m);
    return a.select_columns(piv);
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    std::size_t n = a.rows();
    Matrix<T> m = Matrix<T>::hcat(a, Matrix<T>::identity(n));
    auto piv = rref(m);
    if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
    Matrix<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = m(i, n + j);
    return inv;
}

// Solves A x = b for full-column-rank A, reusing a factorization.
template <class T>
class ColumnSolver {
public:
    ColumnSolver() = default;
    explicit ColumnSolver(const Matrix<T>& a) : a_(a) {
        Matrix<T> t = a.transpose();
        auto piv = rref(t);  // pivots of A^T are independent rows of A
        if (piv.size() != a.cols()) throw std::invalid_argument("ColumnSolver: columns are dependent");
        rows_ = piv;
        Matrix<T> sq(a.cols(), a.cols());
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) sq(i, j) = a(rows_[i], j);
        auto inv = inverse(sq);
        if (!inv) throw std::logic_error("ColumnSolver: singular pivot block");
        pinv_ = *inv;
    }
    std::size_t cols() const { return a_.cols(); }
    std::optional<Vec<T>> solve(const Vec<T>& b) const {
        Vec<T> bp(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) bp[i] = b[rows_[i]];
        Vec<T> x = pinv_.apply(bp);
        Vec<T> back = a_.apply(x);
        for (std::size_t i = 0; i < b.size(); ++i)
            if (!is_zero(T(back[i] - b[i]))) return std::nullopt;
        return x;
    }

private:
    Matrix<T> a_;
    Matrix<T> pinv_;
    std::vector<std::size_t> rows_;
};

}  // namespace boundaries
