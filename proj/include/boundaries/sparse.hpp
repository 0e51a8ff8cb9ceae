#pragma once

#include "boundaries/matrix.hpp"

#include <cstdint>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace boundaries {

using Index = std::int64_t;

// Sorted sparse vector.
template <class T>
struct SparseVec {
    std::vector<Index> idx;
    std::vector<T> val;
    bool empty() const { return idx.empty(); }
    std::size_t size() const { return idx.size(); }
    void push(Index i, const T& v) {
        idx.push_back(i);
        val.push_back(v);
    }
};

// this - f * other, merged. Entries that cancel are dropped.
template <class T>
void axpy_into(const SparseVec<T>& a, const T& f, const SparseVec<T>& b, SparseVec<T>& out) {
    out.idx.clear();
    out.val.clear();
    out.idx.reserve(a.size() + b.size());
    out.val.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a.idx[i] < b.idx[j])) {
            out.push(a.idx[i], a.val[i]);
            ++i;
        } else if (i == a.size() || b.idx[j] < a.idx[i]) {
            out.push(b.idx[j], T(-(f * b.val[j])));
            ++j;
        } else {
            T v = a.val[i] - f * b.val[j];
            if (!is_zero(v)) out.push(a.idx[i], v);
            ++i;
            ++j;
        }
    }
}

// Compressed sparse rows.
template <class T>
class SparseMatrix {
public:
    SparseMatrix() : ptr_(1, 0) {}
    SparseMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), ptr_(rows + 1, 0) {}

    // Triplets are summed; zeros dropped.
    static SparseMatrix from_triplets(Index rows, Index cols, std::vector<std::tuple<Index, Index, T>> t) {
        std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
        });
        SparseMatrix m(rows, cols);
        std::size_t k = 0;
        for (Index r = 0; r < rows; ++r) {
            while (k < t.size() && std::get<0>(t[k]) == r) {
                Index c = std::get<1>(t[k]);
                T s(0);
                while (k < t.size() && std::get<0>(t[k]) == r && std::get<1>(t[k]) == c) {
                    s += std::get<2>(t[k]);
                    ++k;
                }
                if (!is_zero(s)) {
                    m.col_.push_back(c);
                    m.val_.push_back(s);
                }
            }
            m.ptr_[r + 1] = static_cast<Index>(m.col_.size());
        }
        return m;
    }

    // Build from per-row sorted sparse vectors.
    static SparseMatrix from_rows(Index cols, const std::vector<SparseVec<T>>& rows) {
        SparseMatrix m(static_cast<Index>(rows.size()), cols);
        std::size_t nnz = 0;
        for (auto& r : rows) nnz += r.size();
        m.col_.reserve(nnz);
        m.val_.reserve(nnz);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            m.col_.insert(m.col_.end(), rows[r].idx.begin(), rows[r].idx.end());
            m.val_.insert(m.val_.end(), rows[r].val.begin(), rows[r].val.end());
            m.ptr_[r + 1] = static_cast<Index>(m.col_.size());
        }
        return m;
    }

    static SparseMatrix from_dense(const Matrix<T>& d) {
        SparseMatrix m(d.rows(), d.cols());
        for (std::size_t i = 0; i < d.rows(); ++i) {
            for (std::size_t j = 0; j < d.cols(); ++j)
                if (!is_zero(d(i, j))) {
                    m.col_.push_back(j);
                    m.val_.push_back(d(i, j));
                }
            m.ptr_[i + 1] = static_cast<Index>(m.col_.size());
        }
        return m;
    }

    static SparseMatrix identity(Index n) {
        SparseMatrix m(n, n);
        for (Index i = 0; i < n; ++i) {
            m.col_.push_back(i);
            m.val_.push_back(T(1));
            m.ptr_[i + 1] = i + 1;
        }
        return m;
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    std::size_t nnz() const { return col_.size(); }
    Index row_begin(Index r) const { return ptr_[r]; }
    Index row_end(Index r) const { return ptr_[r + 1]; }
    Index col_at(Index k) const { return col_[k]; }
    const T& val_at(Index k) const { return val_[k]; }

    SparseVec<T> row(Index r) const {
        SparseVec<T> v;
        for (Index k = ptr_[r]; k < ptr_[r + 1]; ++k) v.push(col_[k], val_[k]);
        return v;
    }

    T at(Index r, Index c) const {
        auto b = col_.begin() + ptr_[r], e = col_.begin() + ptr_[r + 1];
        auto it = std::lower_bound(b, e, c);
        if (it != e && *it == c) return val_[it - col_.begin()];
        return T(0);
    }

    SparseMatrix transpose() const {
        SparseMatrix t(cols_, rows_);
        std::vector<Index> cnt(cols_ + 1, 0);
        for (Index c : col_) ++cnt[c + 1];
        for (Index c = 0; c < cols_; ++c) cnt[c + 1] += cnt[c];
        t.ptr_ = cnt;
        t.col_.resize(col_.size());
        t.val_.resize(val_.size());
        std::vector<Index> pos(cnt.begin(), cnt.end() - 1);
        for (Index r = 0; r < rows_; ++r)
            for (Index k = ptr_[r]; k < ptr_[r + 1]; ++k) {
                Index p = pos[col_[k]]++;
                t.col_[p] = r;
                t.val_[p] = val_[k];
            }
        return t;
    }

    Vec<T> apply(const Vec<T>& v) const {
        Vec<T> out(rows_, T(0));
        for (Index r = 0; r < rows_; ++r) {
            T s(0);
            for (Index k = ptr_[r]; k < ptr_[r + 1]; ++k)
                if (!is_zero(v[col_[k]])) s += val_[k] * v[col_[k]];
            out[r] = s;
        }
        return out;
    }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("sparse product: dimension mismatch");
        SparseMatrix c(a.rows_, b.cols_);
        std::vector<T> acc(b.cols_, T(0));
        std::vector<char> used(b.cols_, 0);
        std::vector<Index> touched;
        for (Index r = 0; r < a.rows_; ++r) {
            touched.clear();
            for (Index k = a.ptr_[r]; k < a.ptr_[r + 1]; ++k) {
                Index m = a.col_[k];
                for (Index l = b.ptr_[m]; l < b.ptr_[m + 1]; ++l) {
                    Index j = b.col_[l];
                    if (!used[j]) {
                        used[j] = 1;
                        touched.push_back(j);
                    }
                    acc[j] += a.val_[k] * b.val_[l];
                }
            }
            std::sort(touched.begin(), touched.end());
            for (Index j : touched) {
                if (!is_zero(acc[j])) {
                    c.col_.push_back(j);
                    c.val_.push_back(acc[j]);
                }
                acc[j] = T(0);
                used[j] = 0;
            }
            c.ptr_[r + 1] = static_cast<Index>(c.col_.size());
        }
        return c;
    }

    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("sparse sum: dimension mismatch");
        std::vector<SparseVec<T>> rows(a.rows_);
        for (Index r = 0; r < a.rows_; ++r) axpy_into(a.row(r), T(-1), b.row(r), rows[r]);
        return from_rows(a.cols_, rows);
    }
    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("sparse difference: dimension mismatch");
        std::vector<SparseVec<T>> rows(a.rows_);
        for (Index r = 0; r < a.rows_; ++r) axpy_into(a.row(r), T(1), b.row(r), rows[r]);
        return from_rows(a.cols_, rows);
    }

    bool is_zero_matrix() const {
        for (auto& v : val_)
            if (!is_zero(v)) return false;
        return true;
    }
    // First nonzero entry (row, col), if any.
    std::optional<std::pair<Index, Index>> first_nonzero() const {
        for (Index r = 0; r < rows_; ++r)
            for (Index k = ptr_[r]; k < ptr_[r + 1]; ++k)
                if (!is_zero(val_[k])) return std::make_pair(r, col_[k]);
        return std::nullopt;
    }
    bool equals(const SparseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        return (*this - o).is_zero_matrix();
    }
    bool identical(const SparseMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && ptr_ == o.ptr_ && col_ == o.col_ && val_ == o.val_;
    }

    Matrix<T> to_dense() const {
        Matrix<T> d(rows_, cols_);
        for (Index r = 0; r < rows_; ++r)
            for (Index k = ptr_[r]; k < ptr_[r + 1]; ++k) d(r, col_[k]) = val_[k];
        return d;
    }

    // Rows [r0,r1) x cols [c0,c1), reindexed from zero.
    SparseMatrix block(Index r0, Index r1, Index c0, Index c1) const {
        SparseMatrix m(r1 - r0, c1 - c0);
        for (Index r = r0; r < r1; ++r) {
            for (Index k = ptr_[r]; k < ptr_[r + 1]; ++k)
                if (col_[k] >= c0 && col_[k] < c1) {
                    m.col_.push_back(col_[k] - c0);
                    m.val_.push_back(val_[k]);
                }
            m.ptr_[r - r0 + 1] = static_cast<Index>(m.col_.size());
        }
        return m;
    }

private:
    Index rows_ = 0, cols_ = 0;
    std::vector<Index> ptr_;
    std::vector<Index> col_;
    std::vector<T> val_;
};

// Incremental echelon basis of sparse vectors keyed by their leading index.
// With tracking enabled every stored vector remembers its combination of
// inserted inputs, which yields kernels and solutions.
template <class T>
class SparseEchelon {
public:
    // `dim` > 0 switches pivot lookup to a dense table.
    explicit SparseEchelon(bool track = false, Index dim = 0) : track_(track) {
        if (dim > 0) dense_.assign(dim, -1);
    }

    // Reduces v in place; returns the coefficients (in terms of stored
    // pivots) used, when tracking.
    void reduce(SparseVec<T>& v, SparseVec<T>* combo = nullptr) const {
        SparseVec<T> tmp, ctmp;
        while (!v.empty()) {
            Index at = find(v.idx[0]);
            if (at < 0) return;
            const auto& p = basis_[at];
            T f = v.val[0] / p.val[0];
            axpy_into(v, f, p, tmp);
            std::swap(v, tmp);
            if (combo) {
                axpy_into(*combo, f, combos_[at], ctmp);
                std::swap(*combo, ctmp);
            }
        }
    }

    bool contains(SparseVec<T> v) const {
        reduce(v);
        return v.empty();
    }

    // Inserts v; `input_id` labels the input for tracking. Returns true when
    // v was independent of the stored vectors.
    bool insert(SparseVec<T> v, Index input_id = -1) {
        SparseVec<T> combo;
        if (track_) combo.push(input_id, T(1));
        reduce(v, track_ ? &combo : nullptr);
        if (v.empty()) {
            if (track_) dependencies_.push_back(std::move(combo));
            return false;
        }
        if (!dense_.empty())
            dense_[v.idx[0]] = static_cast<Index>(basis_.size());
        else
            lead_.emplace(v.idx[0], basis_.size());
        basis_.push_back(std::move(v));
        if (track_) combos_.push_back(std::move(combo));
        return true;
    }

    // Solves: finds coefficients c over inputs with sum c_i input_i = v.
    std::optional<SparseVec<T>> express(SparseVec<T> v) const {
        SparseVec<T> combo;
        reduce(v, &combo);
        if (!v.empty()) return std::nullopt;
        // reduce subtracted f*combo from an empty start, so negate
        for (auto& x : combo.val) x = -x;
        return combo;
    }

    std::size_t rank() const { return basis_.size(); }
    const std::vector<SparseVec<T>>& basis() const { return basis_; }
    // Input combinations that reduced to zero: kernel vectors.
    const std::vector<SparseVec<T>>& dependencies() const { return dependencies_; }

private:
    Index find(Index i) const {
        if (!dense_.empty()) return dense_[i];
        auto it = lead_.find(i);
        return it == lead_.end() ? -1 : static_cast<Index>(it->second);
    }

    bool track_;
    std::vector<Index> dense_;
    std::unordered_map<Index, std::size_t> lead_;
    std::vector<SparseVec<T>> basis_;
    std::vector<SparseVec<T>> combos_;
    std::vector<SparseVec<T>> dependencies_;
};

template <class T>
SparseVec<T> dense_to_sparse(const Vec<T>& v) {
    SparseVec<T> s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i])) s.push(static_cast<Index>(i), v[i]);
    return s;
}

template <class T>
Vec<T> sparse_to_dense(const SparseVec<T>& s, std::size_t n) {
    Vec<T> v(n, T(0));
    for (std::size_t k = 0; k < s.size(); ++k) v[s.idx[k]] = s.val[k];
    return v;
}

// Rank of a sparse matrix. Columns are eliminated as vectors over the row
// index space (columns are the short side for every coboundary we build).
template <class T>
std::size_t sparse_rank(const SparseMatrix<T>& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    bool by_cols = m.cols() <= m.rows();
    SparseMatrix<T> t = by_cols ? m.transpose() : m;
    SparseEchelon<T> e(false, t.cols());
    for (Index r = 0; r < t.rows(); ++r) {
        e.insert(t.row(r));
        if (static_cast<Index>(e.rank()) == std::min(t.rows(), t.cols())) break;
    }
    return e.rank();
}

// Null space of a sparse matrix as dense columns (small instances).
template <class T>
std::vector<SparseVec<T>> sparse_kernel(const SparseMatrix<T>& m) {
    SparseMatrix<T> t = m.transpose();
    SparseEchelon<T> e(true);
    for (Index c = 0; c < t.rows(); ++c) e.insert(t.row(c), c);
    std::vector<SparseVec<T>> out;
    for (auto d : e.dependencies()) {
        // combos track subtraction; flip sign is irrelevant for a kernel, but
        // keep indices sorted
        std::vector<std::pair<Index, T>> tmp;
        for (std::size_t k = 0; k < d.size(); ++k) tmp.emplace_back(d.idx[k], d.val[k]);
        std::sort(tmp.begin(), tmp.end(), [](auto& a, auto& b) { return a.first < b.first; });
        SparseVec<T> v;
        for (auto& [i, x] : tmp) v.push(i, x);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace boundaries
