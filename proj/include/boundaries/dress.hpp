#pragma once

#include "boundaries/cochains.hpp"
#include "boundaries/rref.hpp"
#include "boundaries/kan.hpp"

namespace boundaries {

// Bisimplices (sigma: Delta^p x Delta^q -> X, tau in Y_p) with
// f sigma = tau pr1, for p+q <= N. Elements of each cell are grouped by tau.
struct BisimplexGrid {
    SimplicialMap f;
    int N = 0;
    std::vector<std::vector<PrismMaps>> cells;                      // [p][q]
    std::vector<std::vector<std::vector<Id>>> tau;                  // [p][q][k]
    std::vector<std::vector<std::vector<Id>>> tau_start;            // [p][q][tau], size |Y_p|+1
    std::vector<std::vector<std::vector<Id>>> corner;               // sigma(0,0)
    std::vector<std::vector<std::vector<Id>>> h_edge, v_edge;       // sigma on (0,0)->(1,0), (0,0)->(0,1)
    std::vector<std::vector<std::vector<std::vector<Id>>>> hface;  // [p][q][i][k] in S_{p-1,q}
    std::vector<std::vector<std::vector<std::vector<Id>>>> vface;  // [p][q][j][k] in S_{p,q-1}

    bool in_window(int p, int q) const { return p >= 0 && q >= 0 && p + q <= N; }
    Id count(int p, int q) const { return cells[p][q].size(); }
};

BisimplexGrid bisimplex_grid(const SimplicialMap& f, int N);
// Projection compatibility of faces and the commutation of both face actions.
std::vector<std::string> check_bisimplex_grid(const BisimplexGrid& g);
// sigma |-> sigma restricted to {0} x Delta^q, as an element of the fiber
// over the first vertex of tau (vertex_fibers indexed by the vertices of Y).
std::vector<Id> first_column(const BisimplexGrid& g, int p, int q, const std::vector<Fiber>& vertex_fibers);

// d_h: C^{p,q} -> C^{p+1,q}, d_v: C^{p,q} -> C^{p,q+1}; coefficients at sigma(0,0).
template <class T>
struct DoubleComplex {
    std::shared_ptr<const BisimplexGrid> grid;
    std::shared_ptr<const CoefficientSystem<T>> coeffs;
    int N = 0;
    std::vector<std::vector<BlockLayout>> layout;
    std::vector<std::vector<SeminormedModule<T>>> modules;
    std::vector<std::vector<SparseMatrix<T>>> dh, dv;  // present when p+q+1 <= N

    Index dim(int p, int q) const { return static_cast<Index>(modules[p][q].rank()); }
};

namespace detail {

inline std::string bisimplex_label(const BisimplexGrid& g, int p, int q, Id k) {
    return "bisimplex " + std::to_string(k) + " of bidegree (" + std::to_string(p) + "," + std::to_string(q) +
           ") over tau = " + std::to_string(g.tau[p][q][k]);
}

template <class T>
std::optional<std::string> zero_or_where(const DoubleComplex<T>& d, const SparseMatrix<T>& m, int p, int q,
                                         const char* what) {
    auto nz = m.first_nonzero();
    if (!nz) return std::nullopt;
    Id k = static_cast<Id>(d.layout[p][q].block_of(nz->first));
    return std::string(what) + " fails at " + bisimplex_label(*d.grid, p, q, k);
}

}  // namespace detail

// First violation of d_h^2 = 0, d_v^2 = 0 or d_h d_v + d_v d_h = 0.
template <class T>
std::optional<std::string> check_double_complex(const DoubleComplex<T>& d) {
    const int N = d.N;
    for (int p = 0; p <= N; ++p)
        for (int q = 0; p + q + 2 <= N; ++q) {
            if (auto e = detail::zero_or_where(d, d.dh[p + 1][q] * d.dh[p][q], p + 2, q, "d_h d_h = 0")) return e;
            if (auto e = detail::zero_or_where(d, d.dv[p][q + 1] * d.dv[p][q], p, q + 2, "d_v d_v = 0")) return e;
            if (auto e = detail::zero_or_where(d, d.dv[p + 1][q] * d.dh[p][q] + d.dh[p][q + 1] * d.dv[p][q], p + 1,
                                               q + 1, "d_h d_v + d_v d_h = 0"))
                return e;
        }
    return std::nullopt;
}

// (d_h phi)(sigma) = A([(0,0)->(1,0)])^-1 phi(d^h_0 sigma) + sum_{i>=1} (-1)^i phi(d^h_i sigma)
// (d_v phi)(sigma) = (-1)^p [A([(0,0)->(0,1)])^-1 phi(d^v_0 sigma) + sum_{j>=1} (-1)^j phi(d^v_j sigma)]
namespace detail {

// Shared by the cochain and the (transposed) l1 chain double complexes:
// `twist(e)` is the block applied on face 0, `ambient` the module builder.
template <class T, class Twist, class Module>
DoubleComplex<T> assemble_double_complex(std::shared_ptr<const BisimplexGrid> grid,
                                         std::shared_ptr<const CoefficientSystem<T>> a, Twist&& twist,
                                         Module&& ambient, bool verify, Assembly mode) {
    a->require_validated();
    if (a->base() != grid->f.src) throw InputError("coefficient system must live on the total space of the map");
    DoubleComplex<T> d;
    d.grid = grid;
    d.coeffs = a;
    const int N = d.N = grid->N;
    const auto& g = *grid;
    d.layout.resize(N + 1);
    d.modules.resize(N + 1);
    d.dh.resize(N + 1);
    d.dv.resize(N + 1);
    for (int p = 0; p <= N; ++p)
        for (int q = 0; p + q <= N; ++q) {
            BlockLayout l;
            for (Id v : g.corner[p][q]) l.push(static_cast<Index>(a->rank(v)));
            d.layout[p].push_back(std::move(l));
            d.modules[p].push_back(ambient(g.corner[p][q]));
        }
    for (int p = 0; p <= N; ++p)
        for (int q = 0; p + q + 1 <= N; ++q) {
            auto h = [&](Index s, std::vector<BlockTerm<T>>& out) {
                Id k = static_cast<Id>(s);
                const auto& f = g.hface[p + 1][q];
                out.push_back({f[0][k], T(1), twist(g.h_edge[p + 1][q][k])});
                for (int i = 1; i <= p + 1; ++i) out.push_back({f[i][k], T(i % 2 ? -1 : 1), nullptr});
            };
            d.dh[p].push_back(assemble_blocks<T>(d.layout[p + 1][q], d.layout[p][q], h, mode));
            const T sign(p % 2 ? -1 : 1);
            auto v = [&](Index s, std::vector<BlockTerm<T>>& out) {
                Id k = static_cast<Id>(s);
                const auto& f = g.vface[p][q + 1];
                out.push_back({f[0][k], sign, twist(g.v_edge[p][q + 1][k])});
                for (int j = 1; j <= q + 1; ++j) out.push_back({f[j][k], T(j % 2 ? -sign : sign), nullptr});
            };
            d.dv[p].push_back(assemble_blocks<T>(d.layout[p][q + 1], d.layout[p][q], v, mode));
        }
    if (verify)
        if (auto e = check_double_complex(d)) throw CompositionError("double complex: " + *e);
    return d;
}

}  // namespace detail

template <class T>
DoubleComplex<T> build_double_complex(std::shared_ptr<const BisimplexGrid> grid,
                                      std::shared_ptr<const CoefficientSystem<T>> a, bool verify = true,
                                      Assembly mode = Assembly::Parallel) {
    const auto* sys = a.get();
    return detail::assemble_double_complex<T>(
        grid, a, [sys](Id e) { return sys->stored_inverse(e); },
        [sys](const std::vector<Id>& v) { return detail::blocked_module(*sys, v); }, verify, mode);
}

template <class T>
DoubleComplex<T> build_double_complex(const SimplicialMap& f, const CoefficientSystem<T>& a, int N,
                                      bool verify = true) {
    auto grid = std::make_shared<const BisimplexGrid>(bisimplex_grid(f, N));
    return build_double_complex(grid, std::make_shared<const CoefficientSystem<T>>(a), verify);
}

// Filtration II is by p (columns), filtration I by q (rows). Entries are
// labelled (s, t) with s the filtration index and t the complementary
// degree, so d_r: (s, t) -> (s + r, t - r + 1) for both.
enum class Filtration { I, II };

inline std::pair<int, int> bidegree_of(Filtration f, int s, int t) {
    return f == Filtration::II ? std::pair{s, t} : std::pair{t, s};
}

// Total complex with blocks of Tot^n ordered by ascending filtration index.
template <class T>
BoundedCochainComplex<T> total_complex(const DoubleComplex<T>& d, Filtration filt = Filtration::II) {
    BoundedCochainComplex<T> c;
    c.top = d.N;
    for (int n = 0; n <= d.N; ++n) {
        BlockLayout l;
        std::vector<const SeminormedModule<T>*> parts;
        for (int s = 0; s <= n; ++s) {
            auto [p, q] = bidegree_of(filt, s, n - s);
            l.push(d.dim(p, q));
            parts.push_back(&d.modules[p][q]);
        }
        c.layout.push_back(std::move(l));
        c.modules.push_back(SeminormedModule<T>::direct_sum(parts));
    }
    for (int n = 0; n < d.N; ++n) {
        const auto& rows = c.layout[n + 1];
        const auto& cols = c.layout[n];
        std::vector<SparseVec<T>> out(rows.dim());
        auto col_off = [&](int p, int q) { return cols.start(filt == Filtration::II ? p : q); };
        for (int s = 0; s <= n + 1; ++s) {
            auto [p, q] = bidegree_of(filt, s, n + 1 - s);
            Index r0 = rows.start(s);
            // contributions from (p-1, q) through d_h and (p, q-1) through d_v
            std::vector<std::pair<const SparseMatrix<T>*, Index>> parts;
            if (p >= 1) parts.push_back({&d.dh[p - 1][q], col_off(p - 1, q)});
            if (q >= 1) parts.push_back({&d.dv[p][q - 1], col_off(p, q - 1)});
            std::sort(parts.begin(), parts.end(), [](auto& a, auto& b) { return a.second < b.second; });
            for (Index r = 0; r < rows.width(s); ++r) {
                auto& row = out[r0 + r];
                for (auto [m, off] : parts)
                    for (Index k = m->row_begin(r); k < m->row_end(r); ++k) row.push(off + m->col_at(k), m->val_at(k));
            }
        }
        c.d.push_back(SparseMatrix<T>::from_rows(cols.dim(), out));
    }
    return c;
}

template <class T>
Subquotient<T> total_cohomology(const DoubleComplex<T>& d, int n) {
    if (n < 0 || n + 1 > d.N) throw InputError("total degree " + std::to_string(n) + " is outside the window");
    return bounded_cohomology(total_complex(d), n);
}

// Ranks rho_n(a, b) of d^n restricted to F^a and projected to filtration
// below b, for n < N, 0 <= a <= n+1, a <= b <= n+2. From these every page
// dimension follows (see page_rank).
struct FiltrationRanks {
    Filtration filt = Filtration::II;
    int N = 0;
    std::vector<std::vector<std::vector<std::size_t>>> rho;  // [n][a][b]
    std::vector<std::vector<std::size_t>> gr;                // [n][a], n <= N

    std::size_t r(int n, int a, int b) const {
        if (n < 0 || n >= N) return 0;
        a = std::max(a, 0);
        if (a > n) return 0;
        b = std::min(b, n + 2);
        if (b <= a) return 0;
        return rho[n][a][b];
    }
    // dim E_r^{s, n-s}; r = 0 requests E_infinity
    std::size_t page_rank(int r, int s, int n) const {
        if (s < 0 || s > n) return 0;
        if (r == 0) r = n + 2;
        const int c = std::max(0, s - r + 1);
        return gr[n][s] - r_(n, s, s + r) + r_(n, s + 1, s + r) + r_(n - 1, c, s) - r_(n - 1, c, s + 1);
    }
    // rank of d_r out of (s, n-s)
    std::size_t differential_rank(int r, int s, int n) const {
        return (r_(n, s, s + r + 1) - r_(n, s, s + r)) - (r_(n, s + 1, s + r + 1) - r_(n, s + 1, s + r));
    }
    bool certified(int s, int n) const { return s >= 0 && s <= n && n <= N - 1; }
    std::size_t total_rank(int n) const {
        return (n < static_cast<int>(gr.size()) ? sum_gr(n) : 0) - r(n, 0, n + 2) - r(n - 1, 0, n + 1);
    }

private:
    std::size_t r_(int n, int a, int b) const { return r(n, a, b); }
    std::size_t sum_gr(int n) const {
        std::size_t s = 0;
        for (auto x : gr[n]) s += x;
        return s;
    }
};

// One row reduction per total degree. Rows of d^n go in by ascending
// filtration; column keys run from the top filtration down, so a lead sits in
// the highest filtration the row touches. After the rows below b are in, the
// leads in column filtration >= a count rho_n(a, b).
template <class T>
FiltrationRanks filtration_ranks(const DoubleComplex<T>& d, Filtration filt) {
    FiltrationRanks fr;
    fr.filt = filt;
    fr.N = d.N;
    for (int n = 0; n <= d.N; ++n) {
        std::vector<std::size_t> g;
        for (int s = 0; s <= n; ++s) {
            auto [p, q] = bidegree_of(filt, s, n - s);
            g.push_back(static_cast<std::size_t>(d.dim(p, q)));
        }
        fr.gr.push_back(std::move(g));
    }
    fr.rho.resize(d.N);
    auto fidx = [filt](int p, int q) { return filt == Filtration::II ? p : q; };
#pragma omp parallel for schedule(dynamic, 1)
    for (int n = 0; n < d.N; ++n) {
        BlockLayout cols;
        for (auto w : fr.gr[n]) cols.push(static_cast<Index>(w));
        const Index C = cols.dim();
        RowReducer<T> red(C);
        std::vector<std::size_t> leads(n + 1, 0);
        auto& rho = fr.rho[n];
        rho.assign(n + 2, std::vector<std::size_t>(n + 3, 0));
        std::vector<std::pair<Index, T>> row;
        for (int s = 0; s <= n + 1; ++s) {
            auto [p, q] = bidegree_of(filt, s, n + 1 - s);
            std::vector<std::pair<const SparseMatrix<T>*, Index>> parts;
            if (p >= 1) parts.push_back({&d.dh[p - 1][q], cols.start(fidx(p - 1, q))});
            if (q >= 1) parts.push_back({&d.dv[p][q - 1], cols.start(fidx(p, q - 1))});
            for (Index r = 0; r < d.dim(p, q); ++r) {
                row.clear();
                for (auto [m, off] : parts)
                    for (Index k = m->row_begin(r); k < m->row_end(r); ++k)
                        row.push_back({C - 1 - (off + m->col_at(k)), m->val_at(k)});
                if (red.insert(row)) ++leads[cols.block_of(C - 1 - red.last_lead())];
            }
            for (int a = 0; a <= n; ++a) {
                std::size_t acc = 0;
                for (int f = a; f <= n; ++f) acc += leads[f];
                rho[a][s + 1] = acc;
            }
        }
    }
    return fr;
}

struct PageEntry {
    int r = 0;  // 0 for E_infinity
    int s = 0, t = 0;
    std::size_t rank = 0;
    bool certified = false;
    std::vector<double> seminorms;  // class seminorms of the basis, E_2 and E_infinity only
    bool has_seminorms = false;
};

// Entries for r = 1..r_max and E_infinity over total degrees 0..N; entries
// in degree N carry certified = false.
inline std::vector<PageEntry> page_table(const FiltrationRanks& fr, int r_max) {
    std::vector<PageEntry> out;
    for (int r = 1; r <= r_max + 1; ++r) {
        int rr = r == r_max + 1 ? 0 : r;
        for (int n = 0; n <= fr.N; ++n)
            for (int s = 0; s <= n; ++s) {
                PageEntry e;
                e.r = rr;
                e.s = s;
                e.t = n - s;
                e.certified = fr.certified(s, n);
                e.rank = n < fr.N ? fr.page_rank(rr, s, n) : 0;
                if (n == fr.N) {
                    // no d^N: ranks read off the truncated complex
                    const int c = std::max(0, s - (rr ? rr : n + 2) + 1);
                    e.rank = fr.gr[n][s] + fr.r(n - 1, c, s) - fr.r(n - 1, c, s + 1);
                }
                out.push_back(std::move(e));
            }
    }
    return out;
}

namespace detail {

template <class T>
std::vector<SparseVec<T>> shift(const std::vector<SparseVec<T>>& vs, Index off) {
    auto out = vs;
    for (auto& v : out)
        for (auto& i : v.idx) i += off;
    return out;
}

template <class T>
std::vector<SparseVec<T>> images(const SparseMatrix<T>& m, const std::vector<SparseVec<T>>& vs) {
    std::vector<SparseVec<T>> out;
    for (auto& v : vs) out.push_back(dense_to_sparse(m.apply(sparse_to_dense(v, m.cols()))));
    return out;
}

template <class T>
std::vector<SparseVec<T>> all_columns(const SparseMatrix<T>& m) {
    return columns_of(m);
}

}  // namespace detail

// E_r^{s, n-s} = Z_r^s / (Z_{r-1}^{s+1} + d Z_{r-1}^{s-r+1}) inside Tot^n,
// Z_r^s = {x in F^s : dx in F^{s+r}}. Small instances only (dense).
template <class T>
class ExplicitPages {
public:
    ExplicitPages(const DoubleComplex<T>& d, Filtration filt) : tot_(total_complex(d, filt)), N_(d.N) {}

    const BoundedCochainComplex<T>& total() const { return tot_; }

    // needs n <= N-1; r >= 1, r = 0 for E_infinity
    Subquotient<T> entry(int r, int s, int n) const {
        if (n < 0 || n > N_ - 1) throw InputError("page entry outside the certified window");
        const int rr = r == 0 ? n + 2 : r;
        auto z = cycles(rr, s, n);
        auto b = cycles(rr - 1, s + 1, n);
        // d{y in F^c : dy in F^s}, c = s-r+1 clamped at 0
        const int c = std::max(0, s - rr + 1);
        auto inb = boundaries(s - c, c, n);
        b.insert(b.end(), inb.begin(), inb.end());
        return Subquotient<T>(tot_.modules[n], z, b);
    }

    // d_r as a matrix E_r^{s,n-s} -> E_r^{s+r, n-s-r+1}; needs n+1 <= N-1
    Matrix<T> differential(int r, int s, int n, const Subquotient<T>& src, const Subquotient<T>& tgt) const {
        Matrix<T> out(tgt.rank(), src.rank());
        for (std::size_t j = 0; j < src.rank(); ++j) {
            Vec<T> e(src.rank(), T(0));
            e[j] = T(1);
            auto cls = tgt.classify(tot_.d[n].apply(src.representative(e)));
            if (!cls) throw CompositionError("d_" + std::to_string(r) + " leaves the target page entry");
            for (std::size_t i = 0; i < tgt.rank(); ++i) out(i, j) = (*cls)[i];
        }
        (void)s;
        return out;
    }

    // Z_r^s in Tot^n, r >= 0 (r = 0 gives F^s)
    std::vector<SparseVec<T>> cycles(int r, int s, int n) const {
        const auto& l = tot_.layout[n];
        if (s > n) return {};
        s = std::max(s, 0);
        Index c0 = l.start(s), c1 = l.dim();
        if (r == 0 || n >= N_) {
            std::vector<SparseVec<T>> out;
            for (Index i = c0; i < c1; ++i) {
                SparseVec<T> v;
                v.push(i, T(1));
                out.push_back(std::move(v));
            }
            return out;
        }
        const auto& rl = tot_.layout[n + 1];
        Index r1 = s + r > n + 1 ? rl.dim() : rl.start(s + r);
        auto m = tot_.d[n].block(0, r1, c0, c1);
        return detail::shift(sparse_kernel(m), c0);
    }
    // d(Z_{r}^c) in Tot^n from Tot^{n-1}
    std::vector<SparseVec<T>> boundaries(int r, int c, int n) const {
        if (n == 0) return {};
        return detail::images(tot_.d[n - 1], cycles(r, c, n - 1));
    }

private:
    BoundedCochainComplex<T> tot_;
    int N_;
};

// E_2 of filtration `filt` presented inside the single bidegree C^{p,q}:
// classes of inner cocycles whose outer differential is inner-exact, modulo
// inner boundaries and outer images of inner cocycles. The seminorm is the
// one induced from E_1 = H(inner) with its quotient seminorm.
template <class T>
Subquotient<T> e2_bidegree(const DoubleComplex<T>& d, Filtration filt, int s, int t) {
    auto [p, q] = bidegree_of(filt, s, t);
    if (p + q > d.N - 1) throw InputError("E_2 entry outside the certified window");
    const bool II = filt == Filtration::II;
    auto inner = [&](int a, int b) -> const SparseMatrix<T>& { return II ? d.dv[a][b] : d.dh[a][b]; };
    auto outer = [&](int a, int b) -> const SparseMatrix<T>& { return II ? d.dh[a][b] : d.dv[a][b]; };
    auto in_prev = [&](int a, int b) -> std::optional<std::pair<int, int>> {
        // source of the inner differential into (a, b)
        if (II) return b >= 1 ? std::optional{std::pair{a, b - 1}} : std::nullopt;
        return a >= 1 ? std::optional{std::pair{a - 1, b}} : std::nullopt;
    };
    auto out_prev = [&](int a, int b) -> std::optional<std::pair<int, int>> {
        if (II) return a >= 1 ? std::optional{std::pair{a - 1, b}} : std::nullopt;
        return b >= 1 ? std::optional{std::pair{a, b - 1}} : std::nullopt;
    };
    const Index m = d.dim(p, q);
    const auto& di = inner(p, q);
    const auto& dout = outer(p, q);
    auto [tp, tq] = II ? std::pair{p + 1, q} : std::pair{p, q + 1};
    auto tprev = in_prev(tp, tq);
    // kernel of [[inner, 0], [outer, -M]] on (x, y), M the inner map into the target
    Index ycols = tprev ? d.dim(tprev->first, tprev->second) : 0;
    std::vector<std::tuple<Index, Index, T>> trip;
    for (Index r = 0; r < di.rows(); ++r)
        for (Index k = di.row_begin(r); k < di.row_end(r); ++k) trip.emplace_back(r, di.col_at(k), di.val_at(k));
    const Index o = di.rows();
    for (Index r = 0; r < dout.rows(); ++r)
        for (Index k = dout.row_begin(r); k < dout.row_end(r); ++k)
            trip.emplace_back(o + r, dout.col_at(k), dout.val_at(k));
    if (tprev) {
        const auto& mm = inner(tprev->first, tprev->second);
        for (Index r = 0; r < mm.rows(); ++r)
            for (Index k = mm.row_begin(r); k < mm.row_end(r); ++k)
                trip.emplace_back(o + r, m + mm.col_at(k), T(-mm.val_at(k)));
    }
    auto big = SparseMatrix<T>::from_triplets(o + dout.rows(), m + ycols, std::move(trip));
    std::vector<SparseVec<T>> z;
    for (auto& v : sparse_kernel(big)) {
        SparseVec<T> x;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v.idx[k] < m) x.push(v.idx[k], v.val[k]);
        if (!x.empty()) z.push_back(std::move(x));
    }
    std::vector<SparseVec<T>> b;
    if (auto ip = in_prev(p, q)) b = columns_of(inner(ip->first, ip->second));
    if (auto op = out_prev(p, q)) {
        auto ker = sparse_kernel(inner(op->first, op->second));
        auto im = detail::images(outer(op->first, op->second), ker);
        b.insert(b.end(), im.begin(), im.end());
    }
    return Subquotient<T>(d.modules[p][q], z, b);
}

// E_infinity^{s, n-s} = F^s H^n / F^{s+1} H^n with the quotient seminorm of H^n.
template <class T>
Subquotient<T> einf_filtration(const ExplicitPages<T>& pages, int s, int n) {
    const auto& tot = pages.total();
    auto im = n ? columns_of(tot.d[n - 1]) : std::vector<SparseVec<T>>{};
    auto z = pages.cycles(n + 2, s, n);
    auto b = pages.cycles(n + 2, s + 1, n);
    z.insert(z.end(), im.begin(), im.end());
    b.insert(b.end(), im.begin(), im.end());
    return Subquotient<T>(tot.modules[n], z, b);
}

// Consistency of explicit pages for r = 1..r_max: d_r d_r = 0, the next page
// has the rank of H(E_r, d_r), explicit ranks match the filtration ranks,
// and E_infinity ranks add up to the total cohomology. Returns failures.
template <class T>
std::vector<std::string> check_pages(const DoubleComplex<T>& d, Filtration filt, int r_max) {
    std::vector<std::string> out;
    ExplicitPages<T> pages(d, filt);
    auto fr = filtration_ranks(d, filt);
    const int top = d.N - 1;
    auto tag = [](int r, int s, int n) {
        return "E_" + (r ? std::to_string(r) : std::string("inf")) + "^{" + std::to_string(s) + "," +
               std::to_string(n - s) + "}";
    };
    std::map<std::tuple<int, int, int>, Subquotient<T>> e;
    for (int r = 1; r <= r_max + 1; ++r)
        for (int n = 0; n <= top; ++n)
            for (int s = 0; s <= n; ++s) {
                auto sq = pages.entry(r, s, n);
                if (sq.rank() != fr.page_rank(r, s, n))
                    out.push_back(tag(r, s, n) + ": explicit rank " + std::to_string(sq.rank()) +
                                  " but filtration ranks give " + std::to_string(fr.page_rank(r, s, n)));
                e.emplace(std::tuple{r, s, n}, std::move(sq));
            }
    for (int r = 1; r <= r_max; ++r) {
        std::map<std::pair<int, int>, Matrix<T>> dr;
        for (int n = 0; n + 1 <= top; ++n)
            for (int s = 0; s <= n; ++s) {
                if (s + r > n + 1) continue;
                auto m = pages.differential(r, s, n, e.at({r, s, n}), e.at({r, s + r, n + 1}));
                if (rank(m) != fr.differential_rank(r, s, n))
                    out.push_back(tag(r, s, n) + ": d_" + std::to_string(r) + " rank disagrees");
                dr.emplace(std::pair{s, n}, std::move(m));
            }
        for (auto& [k, m] : dr) {
            auto it = dr.find({k.first + r, k.second + 1});
            if (it != dr.end() && !(it->second * m).equals(Matrix<T>(it->second.rows(), m.cols())))
                out.push_back(tag(r, k.first, k.second) + ": d_r d_r != 0");
        }
        for (int n = 0; n + 1 <= top; ++n)
            for (int s = 0; s <= n; ++s) {
                std::size_t dim = e.at({r, s, n}).rank();
                auto o = dr.find({s, n});
                auto i = dr.find({s - r, n - 1});
                std::size_t kernel = dim - (o == dr.end() ? 0 : rank(o->second));
                std::size_t image = i == dr.end() ? 0 : rank(i->second);
                if (e.at({r + 1, s, n}).rank() != kernel - image)
                    out.push_back(tag(r + 1, s, n) + ": rank differs from H(E_r, d_r)");
            }
    }
    for (int n = 0; n <= top; ++n) {
        std::size_t sum = 0;
        for (int s = 0; s <= n; ++s) sum += fr.page_rank(0, s, n);
        std::size_t h = bounded_cohomology(pages.total(), n).rank();
        if (sum != h || fr.total_rank(n) != h)
            out.push_back("E_inf in total degree " + std::to_string(n) + " does not add up to H^n(Tot)");
    }
    return out;
}

// y |-> H^q_b(F_y; A_y) with transports from the zigzag over each edge.
template <class T>
struct FiberCoefficientSystem {
    int q = 0;
    std::vector<Fiber> fibers;                              // per vertex of Y
    std::vector<std::shared_ptr<const CoefficientSystem<T>>> local;
    std::vector<BoundedCochainComplex<T>> complexes;
    std::vector<Subquotient<T>> cohomology;
    CoefficientSystem<T> system;  // on Y
    std::vector<std::string> violations;
};

namespace detail {

// The fiber map F_gamma -> F_{gamma(v)} restricting to {v} x Delta^q.
inline SimplicialMap fiber_end(const SimplicialSet& x, const Fiber& edge, const Fiber& end, int v) {
    SimplicialMap m;
    m.src = edge.set;
    m.tgt = end.set;
    const int M = edge.set->trunc();
    for (int q = 0; q <= M; ++q) {
        PrismShape small(0, q), big(1, q);
        PrismPlan plan(small, big, [v](GridPoint g) { return GridPoint{v, g.second}; });
        std::vector<Id> buf(plan.size()), comp(edge.levels[q].size());
        for (Id k = 0; k < edge.levels[q].size(); ++k) {
            plan.apply(x, edge.levels[q].at(k), buf.data());
            comp[k] = end.levels[q].find(buf.data());
            if (comp[k] < 0) throw std::logic_error("fiber end restriction left the fiber");
        }
        m.comp.push_back(std::move(comp));
    }
    return m;
}

}  // namespace detail

template <class T>
FiberCoefficientSystem<T> fiber_coefficient_system(const SimplicialMap& f, const CoefficientSystem<T>& a, int q,
                                                   bool check_kan = true) {
    a.require_validated();
    const auto& y = *f.tgt;
    const int N = f.src->trunc();
    if (q + 2 > N) throw InputError("fiber cohomology in degree " + std::to_string(q) + " needs truncation >= " +
                                    std::to_string(q + 2));
    if (check_kan) {
        auto k = is_kan_fibration_up_to(f, std::min(N, q + 2));
        if (!k.ok) throw ValidationError("not a Kan fibration: " + k.witness->str());
    }
    FiberCoefficientSystem<T> out;
    out.q = q;
    std::vector<SeminormedModule<T>> mods;
    for (Id v = 0; v < y.count(0); ++v) {
        out.fibers.push_back(fiber_over(f, 0, v));
        out.local.push_back(std::make_shared<const CoefficientSystem<T>>(restrict_to_fiber(out.fibers.back(), a)));
        out.complexes.push_back(build_cochain_complex(out.local.back(), q + 1));
        out.cohomology.push_back(bounded_cohomology(out.complexes.back(), q));
        mods.push_back(out.cohomology.back().module());
    }
    std::map<Id, Matrix<T>> edges;
    for (Id e = 0; e < y.count(1); ++e) {
        if (!y.nondegenerate(1, e)) continue;
        Id y0 = y.face(1, 1, e), y1 = y.face(1, 0, e);
        Fiber fe = fiber_over(f, 1, e);
        auto ae = std::make_shared<const CoefficientSystem<T>>(restrict_to_fiber(fe, a));
        auto ce = build_cochain_complex(ae, q + 1);
        auto he = bounded_cohomology(ce, q);
        auto left = detail::fiber_end(*f.src, fe, out.fibers[y0], 0);
        auto right = detail::fiber_end(*f.src, fe, out.fibers[y1], 1);
        auto theta = fiber_transport(fe, {0}, a, true);
        auto lmap = induced_cochain_map(left, out.complexes[y0], ce, q, theta);
        auto rmap = induced_cochain_map(right, out.complexes[y1], ce, q, {});
        Matrix<T> l = map_on_cohomology(lmap, out.cohomology[y0], he);
        Matrix<T> r = map_on_cohomology(rmap, out.cohomology[y1], he);
        auto rinv = inverse(r);
        if (!rinv || l.rows() != l.cols())
            throw CompositionError("fiber transport over edge " + std::to_string(e) +
                                   ": a zigzag leg is not invertible on cohomology (not a fibration in this range?)");
        edges.emplace(e, *rinv * l);
    }
    out.system = CoefficientSystem<T>(f.tgt, std::move(mods), std::move(edges));
    out.violations = out.system.validate();
    return out;
}

template <class T>
struct E2Report {
    int p = 0, q = 0;
    std::size_t rank_e2 = 0, rank_base = 0;
    bool ranks_equal = false;
    bool map_is_iso = false;
    bool seminorms_agree = false;
    double max_seminorm_gap = 0;
    std::vector<std::pair<double, double>> seminorms;  // (base side, E_2 side) per basis class
    std::string note;
    bool ok() const { return ranks_equal && map_is_iso && seminorms_agree; }
};

namespace detail {

// Columns: images in E_2 (bidegree presentation) of the basis of the base
// cohomology hb, by restricting fiber cocycles over tau(0) to F_tau.
template <class T>
std::optional<Matrix<T>> e2_matching_map(const DoubleComplex<T>& d, const FiberCoefficientSystem<T>& fcs, int p,
                                         const BoundedCochainComplex<T>& cb, const Subquotient<T>& hb,
                                         const Subquotient<T>& e2) {
    const int q = fcs.q;
    const auto& g = *d.grid;
    auto restr = first_column(g, p, q, fcs.fibers);
    const auto& y = *g.f.tgt;
    Matrix<T> m(e2.rank(), hb.rank());
    for (std::size_t j = 0; j < hb.rank(); ++j) {
        Vec<T> ej(hb.rank(), T(0));
        ej[j] = T(1);
        Vec<T> c = hb.representative(ej);
        Vec<T> x(static_cast<std::size_t>(d.dim(p, q)), T(0));
        for (Id k = 0; k < g.count(p, q); ++k) {
            Id tau = g.tau[p][q][k];
            Id v = y.vertex(p, tau, 0);
            const auto& hv = fcs.cohomology[v];
            Index off = cb.layout[p].start(tau);
            Vec<T> coords(c.begin() + off, c.begin() + off + static_cast<Index>(hv.rank()));
            Vec<T> z = hv.representative(coords);
            const auto& fl = fcs.complexes[v].layout[q];
            Index fo = fl.start(restr[k]), w = fl.width(restr[k]);
            Index xo = d.layout[p][q].start(k);
            for (Index i = 0; i < w; ++i) x[xo + i] = z[fo + i];
        }
        auto cls = e2.classify(x);
        if (!cls) return std::nullopt;
        for (std::size_t i = 0; i < e2.rank(); ++i) m(i, j) = (*cls)[i];
    }
    return m;
}

}  // namespace detail

// Compares ^II E_2^{p,q} with H^p_b(Y; H^q_b(F;A)) through the map that
// restricts fiber cocycles over tau(0) to the fibers over tau.
template <class T>
E2Report<T> e2_identification_check(const DoubleComplex<T>& d, const FiberCoefficientSystem<T>& fcs, int p,
                                     double tol = 1e-9) {
    E2Report<T> rep;
    rep.p = p;
    const int q = rep.q = fcs.q;
    if (!fcs.violations.empty()) {
        rep.note = "fiber coefficient system failed validation: " + fcs.violations.front();
        return rep;
    }
    auto e2 = e2_bidegree(d, Filtration::II, p, q);
    auto sys = std::make_shared<const CoefficientSystem<T>>(fcs.system);
    auto cb = build_cochain_complex(sys, p + 1);
    auto hb = bounded_cohomology(cb, p);
    rep.rank_e2 = e2.rank();
    rep.rank_base = hb.rank();
    rep.ranks_equal = rep.rank_e2 == rep.rank_base;
    auto mm = detail::e2_matching_map(d, fcs, p, cb, hb, e2);
    if (!mm) {
        rep.note = "restricted cocycle is not an E_2 cycle";
        return rep;
    }
    const Matrix<T>& m = *mm;
    rep.map_is_iso = rep.ranks_equal && rank(m) == hb.rank();
    if (!rep.map_is_iso) {
        rep.note = "comparison map is not an isomorphism";
        return rep;
    }
    rep.seminorms_agree = true;
    auto check = [&](const Vec<T>& v) {
        auto a = hb.class_seminorm(v);
        auto b = e2.class_seminorm(m.apply(v));
        double av = a.infinite ? INFINITY : to_double(a.value);
        double bv = b.infinite ? INFINITY : to_double(b.value);
        rep.seminorms.push_back({av, bv});
        bool same;
        if constexpr (field_traits<T>::exact)
            same = a.infinite == b.infinite && (a.infinite || a.value == b.value);
        else
            same = std::abs(av - bv) <= tol;
        double gap = std::abs(av - bv);
        if (std::isfinite(gap)) rep.max_seminorm_gap = std::max(rep.max_seminorm_gap, gap);
        if (!same) rep.seminorms_agree = false;
    };
    for (std::size_t j = 0; j < hb.rank(); ++j) {
        Vec<T> ej(hb.rank(), T(0));
        ej[j] = T(1);
        check(ej);
    }
    // preimages of the E_2 basis as a second matched basis
    auto inv = inverse(m);
    for (std::size_t j = 0; inv && j < e2.rank(); ++j) {
        Vec<T> ej(e2.rank(), T(0));
        ej[j] = T(1);
        check(inv->apply(ej));
    }
    return rep;
}

}  // namespace boundaries
