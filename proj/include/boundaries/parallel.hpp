#pragma once

#include "boundaries/sparse.hpp"

#include <omp.h>

namespace boundaries {

// Applies BOUNDARIES_THREADS (if set) to the OpenMP runtime; returns the
// thread count in effect.
int configure_threads();

// Basis of a direct sum of blocks, one block per simplex.
struct BlockLayout {
    std::vector<Index> offset{0};  // size blocks+1

    static BlockLayout uniform(Index blocks, Index width) {
        BlockLayout l;
        l.offset.resize(blocks + 1);
        for (Index b = 0; b <= blocks; ++b) l.offset[b] = b * width;
        return l;
    }
    Index blocks() const { return static_cast<Index>(offset.size()) - 1; }
    Index dim() const { return offset.back(); }
    Index start(Index b) const { return offset[b]; }
    Index width(Index b) const { return offset[b + 1] - offset[b]; }
    void push(Index width) { offset.push_back(offset.back() + width); }
    // block containing a basis index
    Index block_of(Index i) const {
        return static_cast<Index>(std::upper_bound(offset.begin(), offset.end(), i) - offset.begin()) - 1;
    }
};

// One block entry: scalar * twist, with twist = identity when null.
template <class T>
struct BlockTerm {
    Index col;
    T scalar;
    const Matrix<T>* twist;
};

enum class Assembly { Serial, Parallel };

// Matrix with row blocks `rows` and column blocks `cols`; terms(r, out)
// appends the block entries of row block r. The serial path collects global
// triplets, the parallel path builds rows independently per block.
template <class T, class Terms>
SparseMatrix<T> assemble_blocks(const BlockLayout& rows, const BlockLayout& cols, Terms&& terms,
                                Assembly mode = Assembly::Parallel) {
    const Index nb = rows.blocks();
    if (mode == Assembly::Serial) {
        std::vector<std::tuple<Index, Index, T>> trip;
        std::vector<BlockTerm<T>> buf;
        for (Index r = 0; r < nb; ++r) {
            buf.clear();
            terms(r, buf);
            Index r0 = rows.start(r), w = rows.width(r);
            for (auto& t : buf) {
                Index c0 = cols.start(t.col);
                if (!t.twist) {
                    for (Index k = 0; k < w; ++k) trip.emplace_back(r0 + k, c0 + k, t.scalar);
                    continue;
                }
                for (Index k = 0; k < w; ++k)
                    for (std::size_t j = 0; j < t.twist->cols(); ++j) {
                        const T& v = (*t.twist)(k, j);
                        if (!is_zero(v)) trip.emplace_back(r0 + k, c0 + static_cast<Index>(j), T(t.scalar * v));
                    }
            }
        }
        return SparseMatrix<T>::from_triplets(rows.dim(), cols.dim(), std::move(trip));
    }
    std::vector<SparseVec<T>> out(rows.dim());
#pragma omp parallel
    {
        std::vector<BlockTerm<T>> buf;
        std::vector<std::pair<Index, T>> acc;
#pragma omp for schedule(dynamic, 256)
        for (Index r = 0; r < nb; ++r) {
            buf.clear();
            terms(r, buf);
            Index r0 = rows.start(r), w = rows.width(r);
            for (Index k = 0; k < w; ++k) {
                acc.clear();
                for (auto& t : buf) {
                    Index c0 = cols.start(t.col);
                    if (!t.twist) {
                        acc.emplace_back(c0 + k, t.scalar);
                        continue;
                    }
                    for (std::size_t j = 0; j < t.twist->cols(); ++j) {
                        const T& v = (*t.twist)(k, j);
                        if (!is_zero(v)) acc.emplace_back(c0 + static_cast<Index>(j), T(t.scalar * v));
                    }
                }
                std::sort(acc.begin(), acc.end(), [](auto& a, auto& b) { return a.first < b.first; });
                auto& row = out[r0 + k];
                for (std::size_t i = 0; i < acc.size();) {
                    Index c = acc[i].first;
                    T s = acc[i].second;
                    for (++i; i < acc.size() && acc[i].first == c; ++i) s += acc[i].second;
                    if (!is_zero(s)) row.push(c, s);
                }
            }
        }
    }
    return SparseMatrix<T>::from_rows(cols.dim(), out);
}

}  // namespace boundaries
