#pragma once

#include "boundaries/dress.hpp"
#include "boundaries/lp.hpp"

namespace boundaries {

// C_0..C_top with boundary[n]: C_n -> C_{n-1} (boundary[0] has no rows).
// Blocks as for cochains, coefficients at the front vertex; the ambient
// norm on every C_n is the weighted l1 norm.
template <class T>
struct L1ChainComplex {
    SSetPtr base;
    std::shared_ptr<const CoefficientSystem<T>> coeffs;
    int top = 0;
    std::vector<std::vector<Id>> front_vertex, front_edge;
    std::vector<BlockLayout> layout;
    std::vector<SeminormedModule<T>> modules;
    std::vector<SparseMatrix<T>> boundary;

    Index dim(int n) const { return static_cast<Index>(modules[n].rank()); }
};

namespace detail {

template <class T>
SeminormedModule<T> l1_blocked_module(const CoefficientSystem<T>& a, const std::vector<Id>& vertex) {
    if (!a.uniform_plain()) return blocked_module(a, vertex);
    std::vector<norm_t<T>> w;
    for (Id v : vertex) {
        const auto& mw = a.module(v).weights();
        w.insert(w.end(), mw.begin(), mw.end());
    }
    return SeminormedModule<T>::weighted(std::move(w), AmbientNorm::L1);
}

template <class T>
std::map<Id, Matrix<T>> transposed_edges(const CoefficientSystem<T>& a) {
    std::map<Id, Matrix<T>> out;
    for (const auto& [e, m] : a.edges()) out.emplace(e, m.transpose());
    return out;
}

}  // namespace detail

// d(a sigma) = A(sigma_01)(a) d_0 sigma + sum_{i>=1} (-1)^i a d_i sigma.
// Assembled as the transpose of a cochain-shaped matrix whose face-0 block
// is A(sigma_01)^T.
template <class T>
L1ChainComplex<T> build_l1_complex(std::shared_ptr<const CoefficientSystem<T>> a, int top) {
    a->require_validated();
    const auto& x = *a->base();
    if (top > x.trunc())
        throw InputError("l1 chain complex up to degree " + std::to_string(top) + " needs truncation >= " +
                         std::to_string(top));
    L1ChainComplex<T> c;
    c.base = a->base();
    c.coeffs = a;
    c.top = top;
    c.front_vertex.resize(top + 1);
    c.front_edge.resize(top + 1);
    for (Id v = 0; v < x.count(0); ++v) c.front_vertex[0].push_back(v);
    for (int n = 1; n <= top; ++n)
        for (Id s = 0; s < x.count(n); ++s) {
            Id back = x.face(n, n, s);
            c.front_vertex[n].push_back(c.front_vertex[n - 1][back]);
            c.front_edge[n].push_back(n == 1 ? s : c.front_edge[n - 1][back]);
        }
    for (int n = 0; n <= top; ++n) {
        BlockLayout l;
        for (Id v : c.front_vertex[n]) l.push(static_cast<Index>(a->rank(v)));
        c.layout.push_back(std::move(l));
        c.modules.push_back(detail::l1_blocked_module(*a, c.front_vertex[n]));
    }
    const auto tr = detail::transposed_edges(*a);
    c.boundary.push_back(SparseMatrix<T>(0, c.dim(0)));
    for (int n = 1; n <= top; ++n) {
        auto terms = [&](Index s, std::vector<BlockTerm<T>>& out) {
            Id sid = static_cast<Id>(s);
            auto it = tr.find(c.front_edge[n][sid]);
            out.push_back({x.face(n, 0, sid), T(1), it == tr.end() ? nullptr : &it->second});
            for (int i = 1; i <= n; ++i) out.push_back({x.face(n, i, sid), T(i % 2 ? -1 : 1), nullptr});
        };
        c.boundary.push_back(assemble_blocks<T>(c.layout[n], c.layout[n - 1], terms).transpose());
    }
    return c;
}

template <class T>
L1ChainComplex<T> build_l1_complex(const CoefficientSystem<T>& a, int top) {
    return build_l1_complex(std::make_shared<const CoefficientSystem<T>>(a), top);
}

template <class T>
std::optional<std::string> check_boundary_squared(const L1ChainComplex<T>& c) {
    for (int n = 2; n <= c.top; ++n)
        if (auto nz = (c.boundary[n - 1] * c.boundary[n]).first_nonzero())
            return "d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " != 0 at (" +
                   std::to_string(nz->first) + ", " + std::to_string(nz->second) + ")";
    return std::nullopt;
}

// H_n with the quotient gauge of the weighted l1 norm; needs n+1 <= top.
template <class T>
Subquotient<T> l1_homology(const L1ChainComplex<T>& c, int n) {
    if (n < 0 || n + 1 > c.top)
        throw InputError("l1 homology in degree " + std::to_string(n) + " needs n+1 <= " + std::to_string(c.top));
    return cohomology_presentation(c.boundary[n + 1], c.boundary[n], c.modules[n]);
}

// Operator norm between weighted l1 spaces: max over columns j with w_j > 0
// of sum_i v_i |m_ij| / w_j; a column with w_j = 0 and a nonzero weighted
// image gives an infinite norm.
template <class T>
NormValue<T> l1_operator_norm(const SparseMatrix<T>& m, const SeminormedModule<T>& src,
                              const SeminormedModule<T>& tgt) {
    using N = norm_t<T>;
    if (!src.plain() || !tgt.plain()) throw InputError("l1 operator norm needs plain weighted modules");
    NormValue<T> out;
    out.value = N(0);
    std::vector<N> col(m.cols(), N(0));
    const auto& wt = tgt.weights();
    for (Index r = 0; r < m.rows(); ++r)
        for (Index k = m.row_begin(r); k < m.row_end(r); ++k) col[m.col_at(k)] += wt[r] * detail::to_norm<T>(m.val_at(k));
    const auto& ws = src.weights();
    for (Index j = 0; j < m.cols(); ++j) {
        if (ws[j] == N(0)) {
            if (col[j] != N(0)) out.infinite = true;
            continue;
        }
        N v = col[j] / ws[j];
        if (out.value < v) out.value = v;
    }
    return out;
}

// Chain-level data of the l1 double complex is the transpose of a
// cochain-shaped double complex with face-0 blocks A(e)^T. `dual` keeps
// that transpose: dual.dh[p][q] = (d_h: C_{p+1,q} -> C_{p,q})^T and
// likewise for d_v, so page ranks of the homology spectral sequence are
// the filtration ranks of `dual`.
template <class T>
struct L1DoubleComplex {
    DoubleComplex<T> dual;
    std::map<Id, Matrix<T>> transposes;

    int N() const { return dual.N; }
    const SeminormedModule<T>& module(int p, int q) const { return dual.modules[p][q]; }
    // d_h: C_{p,q} -> C_{p-1,q}, d_v: C_{p,q} -> C_{p,q-1}
    SparseMatrix<T> dh(int p, int q) const { return dual.dh[p - 1][q].transpose(); }
    SparseMatrix<T> dv(int p, int q) const { return dual.dv[p][q - 1].transpose(); }
};

template <class T>
L1DoubleComplex<T> build_l1_double_complex(std::shared_ptr<const BisimplexGrid> grid,
                                           std::shared_ptr<const CoefficientSystem<T>> a, bool verify = true) {
    L1DoubleComplex<T> out;
    auto tr = std::make_shared<std::map<Id, Matrix<T>>>(detail::transposed_edges(*a));
    const auto* sys = a.get();
    out.dual = detail::assemble_double_complex<T>(
        grid, a,
        [tr](Id e) -> const Matrix<T>* {
            auto it = tr->find(e);
            return it == tr->end() ? nullptr : &it->second;
        },
        [sys](const std::vector<Id>& v) { return detail::l1_blocked_module(*sys, v); }, verify,
        Assembly::Parallel);
    out.transposes = std::move(*tr);
    return out;
}

template <class T>
L1DoubleComplex<T> build_l1_double_complex(const SimplicialMap& f, const CoefficientSystem<T>& a, int N,
                                           bool verify = true) {
    auto grid = std::make_shared<const BisimplexGrid>(bisimplex_grid(f, N));
    return build_l1_double_complex(grid, std::make_shared<const CoefficientSystem<T>>(a), verify);
}

// Total homology H_n(Tot C_{*,*}) with the l1 gauge; needs n+1 <= N.
template <class T>
Subquotient<T> l1_total_homology(const L1DoubleComplex<T>& d, int n) {
    if (n < 0 || n + 1 > d.N()) throw InputError("total degree " + std::to_string(n) + " is outside the window");
    auto tot = total_complex(d.dual);
    SparseMatrix<T> out = n == 0 ? SparseMatrix<T>(0, tot.dim(0)) : tot.d[n - 1].transpose();
    return cohomology_presentation(tot.d[n].transpose(), out, tot.modules[n]);
}

struct L1PageReport {
    FiltrationRanks ranks;  // E^r_{p,q} for filtration by p has rank ranks.page_rank(r, p, p+q)
    std::vector<std::size_t> total;    // rank H_n(Tot)
    std::vector<std::size_t> x_ranks;  // rank H_n^{l1}(X;A)
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Homology spectral sequence of the column filtration, the row-filtration
// collapse onto H_*^{l1}(X;A), and E^infinity against the total homology.
template <class T>
L1PageReport l1_double_and_pages(const SimplicialMap& f, const CoefficientSystem<T>& a, int N) {
    L1PageReport rep;
    auto d = build_l1_double_complex(f, a, N);
    rep.ranks = filtration_ranks(d.dual, Filtration::II);
    auto fI = filtration_ranks(d.dual, Filtration::I);
    auto cx = build_l1_complex(a, N);
    if (auto e = check_boundary_squared(cx)) rep.failures.push_back(*e);
    for (int n = 0; n + 1 <= N; ++n) {
        rep.total.push_back(l1_total_homology(d, n).rank());
        rep.x_ranks.push_back(l1_homology(cx, n).rank());
        std::size_t sum = 0;
        for (int s = 0; s <= n; ++s) sum += rep.ranks.page_rank(0, s, n);
        if (sum != rep.total[n] || rep.ranks.total_rank(n) != rep.total[n])
            rep.failures.push_back("E^inf in total degree " + std::to_string(n) + " does not add up to H_n(Tot)");
        if (rep.total[n] != rep.x_ranks[n])
            rep.failures.push_back("H_" + std::to_string(n) + "(Tot) differs from H_n^l1(X;A)");
        for (int s = 0; s <= n; ++s) {
            std::size_t want = s == 0 ? rep.x_ranks[n] : 0;
            if (fI.page_rank(2, s, n) != want)
                rep.failures.push_back("row filtration E^2 in row " + std::to_string(s) + ", degree " +
                                       std::to_string(n) + " does not collapse");
        }
    }
    return rep;
}

template <class T>
struct DualityReport {
    int degree = 0;
    NormValue<T> l1;         // l1 seminorm of the class (primal LP)
    T pairing{};             // max <phi, z> over cocycles with |phi|_inf <= 1 (dual LP)
    Vec<T> cocycle;          // maximizer
    bool certificates = false;
    bool equal = false;
    std::string note;
    bool ok() const { return equal && certificates; }
};

// Pairs l1 cycles against bounded cocycles. Needs unit weights and
// boundary[n] = d^{n-1} transposed in the two degrees involved.
template <class T>
DualityReport<T> duality_pairing_check(const L1ChainComplex<T>& ch, const BoundedCochainComplex<T>& co, int n,
                                       const Vec<T>& z, double tol = 1e-9) {
    DualityReport<T> rep;
    rep.degree = n;
    if (n + 1 > ch.top || n + 1 > co.top) throw InputError("duality check needs degree n+1 in both complexes");
    if (ch.dim(n) != co.dim(n) || static_cast<Index>(z.size()) != ch.dim(n))
        throw InputError("chain and cochain complexes do not match");
    for (int k : {n, n + 1}) {
        if (k == 0) continue;
        if (!ch.boundary[k].to_dense().equals(co.d[k - 1].to_dense().transpose()))
            throw InputError("boundary in degree " + std::to_string(k) + " is not the transposed coboundary");
    }
    for (const auto* m : {&ch.modules[n], &co.modules[n]}) {
        if (!m->plain()) throw InputError("duality check needs plain weighted modules");
        for (auto& w : m->weights())
            if (w != norm_t<T>(1)) throw InputError("duality check needs unit weights");
    }
    auto h = l1_homology(ch, n);
    auto cls = h.classify(z);
    if (!cls) throw InputError("the chain is not a cycle");
    rep.l1 = h.class_seminorm(*cls);
    const std::size_t m = z.size();
    LpProblem<T> lp;
    lp.c.assign(m, T(0));
    for (std::size_t i = 0; i < m; ++i) lp.c[i] = T(-z[i]);
    lp.A = co.d[n].to_dense();
    lp.b.assign(lp.A.rows(), T(0));
    lp.D = Matrix<T>(2 * m, m);
    lp.e.assign(2 * m, T(1));
    for (std::size_t i = 0; i < m; ++i) {
        lp.D(2 * i, i) = T(1);
        lp.D(2 * i + 1, i) = T(-1);
    }
    auto res = lp_solve(lp);
    if (res.status != LpStatus::Optimal) {
        rep.note = std::string("pairing LP: ") + lp_status_name(res.status);
        return rep;
    }
    std::string why;
    rep.certificates = lp_certificate_ok(lp, res, &why);
    if (!rep.certificates) rep.note = "pairing LP certificate: " + why;
    rep.pairing = T(-res.value);
    rep.cocycle = res.x;
    if constexpr (field_traits<T>::exact)
        rep.equal = !rep.l1.infinite && T(rep.l1.value) == rep.pairing;
    else
        rep.equal = !rep.l1.infinite && std::abs(to_double(rep.l1.value) - to_double(rep.pairing)) <= tol;
    return rep;
}

// Chain homotopy of a prism g: X x Delta^1 -> Y with coefficients B on Y:
// h[n](a sigma) = sum_j (-1)^j a g(s_j sigma, 0^{j+1} 1^{n-j}), C_n(X) -> C_{n+1}(Y).
template <class T>
struct L1PrismHomotopy {
    SimplicialMap f0, f1;
    L1ChainComplex<T> cx, cy;
    std::vector<SparseMatrix<T>> h, c0, c1;  // c*: pushforwards C_n(X) -> C_n(Y)
};

template <class T>
L1PrismHomotopy<T> l1_prism_homotopy(const ProductSet& cyl, const SimplicialMap& g, const CoefficientSystem<T>& b,
                                     int top) {
    b.require_validated();
    if (g.src != cyl.set) throw InputError("homotopy must be defined on the given cylinder");
    L1PrismHomotopy<T> out;
    out.f0 = SimplicialMap::compose(g, cylinder_end(cyl, 0));
    out.f1 = SimplicialMap::compose(g, cylinder_end(cyl, 1));
    const auto& x = *out.f0.src;
    if (top + 1 > x.trunc() || top + 1 > b.base()->trunc())
        throw InputError("prism chain homotopy up to degree " + std::to_string(top) + " needs truncation >= " +
                         std::to_string(top + 1));
    auto a = std::make_shared<const CoefficientSystem<T>>(pullback_system(out.f0, b));
    out.cx = build_l1_complex(a, top + 1);
    out.cy = build_l1_complex(std::make_shared<const CoefficientSystem<T>>(b), top + 1);
    // theta^T per vertex, theta = B(g on (x,0)->(x,1)): B(f0 x) -> B(f1 x)
    std::vector<Matrix<T>> theta_t;
    for (Id v = 0; v < x.count(0); ++v) theta_t.push_back(b.edge(g(1, prism_simplex(cyl, 1, v, 0))).transpose());
    for (int n = 0; n <= top + 1; ++n) {
        const auto& fv = out.cx.front_vertex[n];
        auto push0 = [&](Index s, std::vector<BlockTerm<T>>& o) { o.push_back({out.f0(n, static_cast<Id>(s)), T(1), nullptr}); };
        auto push1 = [&](Index s, std::vector<BlockTerm<T>>& o) {
            o.push_back({out.f1(n, static_cast<Id>(s)), T(1), &theta_t[fv[s]]});
        };
        out.c0.push_back(assemble_blocks<T>(out.cx.layout[n], out.cy.layout[n], push0).transpose());
        out.c1.push_back(assemble_blocks<T>(out.cx.layout[n], out.cy.layout[n], push1).transpose());
    }
    for (int n = 0; n <= top; ++n) {
        auto terms = [&](Index s, std::vector<BlockTerm<T>>& o) {
            for (int j = 0; j <= n; ++j)
                o.push_back({g(n + 1, prism_simplex(cyl, n + 1, static_cast<Id>(s), j)), T(j % 2 ? -1 : 1), nullptr});
        };
        out.h.push_back(assemble_blocks<T>(out.cx.layout[n], out.cy.layout[n + 1], terms).transpose());
    }
    return out;
}

// d h + h d - (c1 - c0) in degree n; zero when the chain homotopy identity holds.
template <class T>
SparseMatrix<T> l1_homotopy_defect(const L1PrismHomotopy<T>& p, int n) {
    SparseMatrix<T> lhs = p.cy.boundary[n + 1] * p.h[n];
    if (n >= 1) lhs = lhs + p.h[n - 1] * p.cx.boundary[n];
    return lhs - (p.c1[n] - p.c0[n]);
}

}  // namespace boundaries
