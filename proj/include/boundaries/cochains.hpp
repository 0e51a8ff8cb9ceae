#pragma once

#include "boundaries/coefficients.hpp"
#include "boundaries/groupoid.hpp"
#include "boundaries/parallel.hpp"

#include <random>

namespace boundaries {

// C^0..C^top with d[n]: C^n -> C^{n+1}. The basis of C^n is blocked by
// n-simplices, each block a copy of the coefficient module at the front
// vertex. Products and other derived complexes leave `base` empty.
template <class T>
struct BoundedCochainComplex {
    SSetPtr base;
    std::shared_ptr<const CoefficientSystem<T>> coeffs;
    int top = 0;
    std::vector<std::vector<Id>> front_vertex;  // [n][sigma]
    std::vector<std::vector<Id>> front_edge;    // [n][sigma], n >= 1
    std::vector<BlockLayout> layout;
    std::vector<SeminormedModule<T>> modules;
    std::vector<SparseMatrix<T>> d;

    Index dim(int n) const { return static_cast<Index>(modules[n].rank()); }
};

namespace detail {

template <class T>
SeminormedModule<T> blocked_module(const CoefficientSystem<T>& a, const std::vector<Id>& vertex) {
    if (a.uniform_plain()) {
        std::vector<norm_t<T>> w;
        AmbientNorm kind = vertex.empty() ? AmbientNorm::Sup : a.module(vertex[0]).kind();
        for (Id v : vertex) {
            const auto& mw = a.module(v).weights();
            w.insert(w.end(), mw.begin(), mw.end());
        }
        return SeminormedModule<T>::weighted(std::move(w), kind);
    }
    std::vector<const SeminormedModule<T>*> parts;
    for (Id v : vertex) parts.push_back(&a.module(v));
    return SeminormedModule<T>::direct_sum(parts);
}

}  // namespace detail

// delta(phi)(s) = A([s_01])^-1 phi(d_0 s) + sum_{i>=1} (-1)^i phi(d_i s)
template <class T>
BoundedCochainComplex<T> build_cochain_complex(std::shared_ptr<const CoefficientSystem<T>> a, int top,
                                               Assembly mode = Assembly::Parallel) {
    a->require_validated();
    const auto& x = *a->base();
    if (top > x.trunc())
        throw InputError("cochain complex up to degree " + std::to_string(top) + " needs truncation >= " +
                         std::to_string(top));
    BoundedCochainComplex<T> c;
    c.base = a->base();
    c.coeffs = a;
    c.top = top;
    c.front_vertex.resize(top + 1);
    c.front_edge.resize(top + 1);
    c.front_vertex[0].resize(x.count(0));
    for (Id v = 0; v < x.count(0); ++v) c.front_vertex[0][v] = v;
    for (int n = 1; n <= top; ++n) {
        c.front_vertex[n].resize(x.count(n));
        c.front_edge[n].resize(x.count(n));
        for (Id s = 0; s < x.count(n); ++s) {
            Id back = x.face(n, n, s);
            c.front_vertex[n][s] = c.front_vertex[n - 1][back];
            c.front_edge[n][s] = n == 1 ? s : c.front_edge[n - 1][back];
        }
    }
    for (int n = 0; n <= top; ++n) {
        BlockLayout l;
        for (Id v : c.front_vertex[n]) l.push(static_cast<Index>(a->rank(v)));
        c.layout.push_back(std::move(l));
        c.modules.push_back(detail::blocked_module(*a, c.front_vertex[n]));
    }
    for (int n = 0; n < top; ++n) {
        auto terms = [&](Index s, std::vector<BlockTerm<T>>& out) {
            Id sid = static_cast<Id>(s);
            out.push_back({x.face(n + 1, 0, sid), T(1), a->stored_inverse(c.front_edge[n + 1][sid])});
            for (int i = 1; i <= n + 1; ++i) out.push_back({x.face(n + 1, i, sid), T(i % 2 ? -1 : 1), nullptr});
        };
        c.d.push_back(assemble_blocks<T>(c.layout[n + 1], c.layout[n], terms, mode));
    }
    return c;
}

template <class T>
BoundedCochainComplex<T> build_cochain_complex(const CoefficientSystem<T>& a, int top,
                                               Assembly mode = Assembly::Parallel) {
    return build_cochain_complex(std::make_shared<const CoefficientSystem<T>>(a), top, mode);
}

// First nonzero entry of d[n+1] d[n], if any.
template <class T>
std::optional<std::string> check_dd(const BoundedCochainComplex<T>& c) {
    for (int n = 0; n + 1 < static_cast<int>(c.d.size()); ++n) {
        auto comp = c.d[n + 1] * c.d[n];
        if (auto nz = comp.first_nonzero())
            return "d^" + std::to_string(n + 1) + " d^" + std::to_string(n) + " != 0 at (" +
                   std::to_string(nz->first) + ", " + std::to_string(nz->second) + ")";
    }
    return std::nullopt;
}

template <class T>
SparseMatrix<T> incoming_differential(const BoundedCochainComplex<T>& c, int n) {
    return n == 0 ? SparseMatrix<T>(c.dim(0), 0) : c.d[n - 1];
}

template <class T>
Subquotient<T> bounded_cohomology(const BoundedCochainComplex<T>& c, int n) {
    if (n < 0 || n + 1 > c.top)
        throw InputError("degree " + std::to_string(n) + " is not certified (needs n+1 <= " + std::to_string(c.top) +
                         ")");
    return cohomology_presentation(incoming_differential(c, n), c.d[n], c.modules[n]);
}

template <class T>
std::size_t cohomology_rank(const BoundedCochainComplex<T>& c, int n) {
    if (n < 0 || n + 1 > c.top) throw InputError("degree " + std::to_string(n) + " is not certified");
    std::size_t in = n == 0 ? 0 : sparse_rank(c.d[n - 1]);
    return static_cast<std::size_t>(c.dim(n)) - sparse_rank(c.d[n]) - in;
}

template <class T>
NormValue<T> class_seminorm(const Subquotient<T>& h, const Vec<T>& coords) {
    if (coords.size() != h.rank()) throw InputError("class coordinates have the wrong length");
    return h.class_seminorm(coords);
}

// H^0 as the fixed vectors of A(x0) under monodromy.
template <class T>
struct H0Result {
    Id base_vertex = 0;
    Matrix<T> fixed;    // rank(A(x0)) x k, basis of fixed vectors
    Matrix<T> to_h0;    // class coordinates of the cocycle extending each basis vector
    Matrix<T> from_h0;  // coordinates in `fixed` of the value at x0 of each H^0 basis class
    std::vector<Matrix<T>> monodromy;
    NormValue<T> seminorm(const Vec<T>& coords) const { return seminorm_eval(*module, fixed.apply(coords)); }
    const SeminormedModule<T>* module = nullptr;
};

template <class T>
H0Result<T> h0_invariants(const BoundedCochainComplex<T>& c, const Subquotient<T>& h0, Id x0) {
    const auto& x = *c.base;
    const auto& a = *c.coeffs;
    auto gpd = fundamental_groupoid(x);
    if (gpd.components != 1)
        throw InputError("h0_invariants needs a connected base; found " + std::to_string(gpd.components) +
                         " components");
    // transport T_v: A(x0) -> A(v) along a BFS tree
    std::vector<std::optional<Matrix<T>>> tr(x.count(0));
    std::vector<char> tree(gpd.generators.size(), 0);
    tr[x0] = Matrix<T>::identity(a.rank(x0));
    std::vector<Id> queue{x0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        Id v = queue[qi];
        for (std::size_t g = 0; g < gpd.generators.size(); ++g) {
            auto [s, t] = gpd.endpoints[g];
            Id e = gpd.generators[g];
            if (s == v && !tr[t]) {
                tr[t] = a.edge(e) * *tr[v];
                tree[g] = 1;
                queue.push_back(t);
            } else if (t == v && !tr[s]) {
                tr[s] = a.edge_inverse(e) * *tr[v];
                tree[g] = 1;
                queue.push_back(s);
            }
        }
    }
    H0Result<T> out;
    out.base_vertex = x0;
    out.module = &a.module(x0);
    const std::size_t r = a.rank(x0);
    Matrix<T> stack(0, r);
    for (std::size_t g = 0; g < gpd.generators.size(); ++g) {
        if (tree[g]) continue;
        auto [s, t] = gpd.endpoints[g];
        auto tinv = inverse(*tr[t]);
        Matrix<T> m = *tinv * a.edge(gpd.generators[g]) * *tr[s];
        out.monodromy.push_back(m);
        Matrix<T> diff = m - Matrix<T>::identity(r);
        Matrix<T> grown(stack.rows() + r, r);
        for (std::size_t i = 0; i < stack.rows(); ++i)
            for (std::size_t j = 0; j < r; ++j) grown(i, j) = stack(i, j);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) grown(stack.rows() + i, j) = diff(i, j);
        stack = std::move(grown);
    }
    out.fixed = stack.rows() ? kernel_basis(stack) : Matrix<T>::identity(r);
    const std::size_t k = out.fixed.cols();
    if (k != h0.rank())
        throw std::logic_error("h0_invariants: fixed space rank " + std::to_string(k) + " differs from H^0 rank " +
                               std::to_string(h0.rank()));
    out.to_h0 = Matrix<T>(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        Vec<T> cochain(c.dim(0), T(0));
        for (Id v = 0; v < x.count(0); ++v) {
            Vec<T> col(r);
            for (std::size_t i = 0; i < r; ++i) col[i] = out.fixed(i, j);
            Vec<T> val = tr[v]->apply(col);
            for (std::size_t i = 0; i < val.size(); ++i) cochain[c.layout[0].start(v) + i] = val[i];
        }
        auto cls = h0.classify(cochain);
        if (!cls) throw std::logic_error("h0_invariants: extended fixed vector is not a cocycle");
        for (std::size_t i = 0; i < k; ++i) out.to_h0(i, j) = (*cls)[i];
    }
    out.from_h0 = Matrix<T>(k, k);
    if (k) {
        ColumnSolver<T> solve(out.fixed);
        for (std::size_t j = 0; j < k; ++j) {
            Vec<T> e(k, T(0));
            e[j] = T(1);
            Vec<T> rep = h0.representative(e);
            Vec<T> at(rep.begin() + c.layout[0].start(x0), rep.begin() + c.layout[0].start(x0) + r);
            auto co = solve.solve(at);
            if (!co) throw std::logic_error("h0_invariants: class value at base vertex is not fixed");
            for (std::size_t i = 0; i < k; ++i) out.from_h0(i, j) = (*co)[i];
        }
    }
    return out;
}

// Class coordinates of `target` for the representatives of `source`.
template <class T>
Matrix<T> map_on_cohomology(const SparseMatrix<T>& chain_map, const Subquotient<T>& source,
                            const Subquotient<T>& target) {
    Matrix<T> out(target.rank(), source.rank());
    for (std::size_t j = 0; j < source.rank(); ++j) {
        Vec<T> e(source.rank(), T(0));
        e[j] = T(1);
        auto cls = target.classify(chain_map.apply(source.representative(e)));
        if (!cls) throw CompositionError("map_on_cohomology: image of a cycle is not a cycle");
        for (std::size_t i = 0; i < target.rank(); ++i) out(i, j) = (*cls)[i];
    }
    return out;
}

// H^n_b(X;A) -> H^n(X;A with trivialized seminorm); the identity on cochains.
template <class T>
struct ComparisonMap {
    Subquotient<T> bounded, ordinary;
    Matrix<T> matrix;
};

template <class T>
ComparisonMap<T> comparison_map(const BoundedCochainComplex<T>& c, int n) {
    ComparisonMap<T> out;
    out.bounded = bounded_cohomology(c, n);
    auto triv = std::make_shared<const CoefficientSystem<T>>(c.coeffs->trivialized());
    auto cu = build_cochain_complex(triv, c.top);
    out.ordinary = bounded_cohomology(cu, n);
    out.matrix = map_on_cohomology(SparseMatrix<T>::identity(c.dim(n)), out.bounded, out.ordinary);
    return out;
}

// Cochain map of (f, theta): phi |-> theta_{s_0} phi(f s), where theta_x:
// B(f x) -> A(x). An empty theta means identities.
template <class T>
SparseMatrix<T> induced_cochain_map(const SimplicialMap& f, const BoundedCochainComplex<T>& cy,
                                    const BoundedCochainComplex<T>& cx, int n, const std::vector<Matrix<T>>& theta,
                                    Assembly mode = Assembly::Parallel) {
    auto terms = [&](Index s, std::vector<BlockTerm<T>>& out) {
        Id sid = static_cast<Id>(s);
        const Matrix<T>* tw = theta.empty() ? nullptr : &theta[cx.front_vertex[n][sid]];
        out.push_back({f(n, sid), T(1), tw});
    };
    return assemble_blocks<T>(cx.layout[n], cy.layout[n], terms, mode);
}

// Data of a simplicial homotopy G: X x Delta^1 -> Y with B on Y. The source
// system is A = f*B for f = G(-,0), and theta' transports along G({x} x [0,1]).
template <class T>
struct PrismHomotopy {
    SimplicialMap f0, f1;
    std::shared_ptr<const CoefficientSystem<T>> a;  // f0*B on X
    BoundedCochainComplex<T> cx, cy;
    std::vector<Matrix<T>> theta1;                  // per vertex: B(f1 x) -> A(x)
    std::vector<SparseMatrix<T>> h;                 // h[n]: C^n(Y) -> C^{n-1}(X), n >= 1
    std::vector<SparseMatrix<T>> c0, c1;            // induced maps per degree
};

SimplicialMap cylinder_end(const ProductSet& cyl, int end);
// (s_j sigma, 0^{j+1} 1^{n-j}) in (X x Delta^1)_n for sigma in X_{n-1}
Id prism_simplex(const ProductSet& cyl, int n, Id sigma, int j);

template <class T>
PrismHomotopy<T> prism_homotopy(const ProductSet& cyl, const SimplicialMap& g, const CoefficientSystem<T>& b,
                                int top) {
    b.require_validated();
    if (g.src != cyl.set) throw InputError("homotopy must be defined on the given cylinder");
    PrismHomotopy<T> out;
    out.f0 = SimplicialMap::compose(g, cylinder_end(cyl, 0));
    out.f1 = SimplicialMap::compose(g, cylinder_end(cyl, 1));
    const auto& x = *out.f0.src;
    if (top + 1 > x.trunc() || top + 1 > b.base()->trunc())
        throw InputError("prism homotopy up to degree " + std::to_string(top) + " needs truncation >= " +
                         std::to_string(top + 1));
    out.a = std::make_shared<const CoefficientSystem<T>>(pullback_system(out.f0, b));
    auto bp = std::make_shared<const CoefficientSystem<T>>(b);
    out.cx = build_cochain_complex(out.a, top + 1);
    out.cy = build_cochain_complex(bp, top + 1);
    for (Id v = 0; v < x.count(0); ++v) {
        Id e = g(1, prism_simplex(cyl, 1, v, 0));
        out.theta1.push_back(b.edge_inverse(e));
    }
    for (int n = 0; n <= top + 1; ++n) {
        out.c0.push_back(induced_cochain_map<T>(out.f0, out.cy, out.cx, n, {}));
        out.c1.push_back(induced_cochain_map<T>(out.f1, out.cy, out.cx, n, out.theta1));
    }
    out.h.push_back(SparseMatrix<T>(0, out.cy.dim(0)));
    for (int n = 1; n <= top + 1; ++n) {
        auto terms = [&](Index s, std::vector<BlockTerm<T>>& o) {
            for (int j = 0; j < n; ++j)
                o.push_back({g(n, prism_simplex(cyl, n, static_cast<Id>(s), j)), T(j % 2 ? -1 : 1), nullptr});
        };
        out.h.push_back(assemble_blocks<T>(out.cx.layout[n - 1], out.cy.layout[n], terms));
    }
    return out;
}

// delta H^n + H^{n+1} delta - (c1 - c0) in degree n; zero when the
// homotopy identity holds.
template <class T>
SparseMatrix<T> homotopy_defect(const PrismHomotopy<T>& p, int n) {
    SparseMatrix<T> lhs = p.h[n + 1] * p.cy.d[n];
    if (n >= 1) lhs = lhs + p.cx.d[n - 1] * p.h[n];
    return lhs - (p.c1[n] - p.c0[n]);
}

template <class T>
struct UbcReport {
    int degree = 0;
    norm_t<T> kappa{};
    Vec<T> witness;   // b in im delta^{n-1}, |b| <= 1
    Vec<T> preimage;  // minimal-norm c with delta c = b
    norm_t<T> witness_norm{};
    norm_t<T> preimage_norm{};
    std::size_t vertices = 0;
};

// kappa = max over vertices b of { b in im delta^{n-1} : |b| <= 1 } of
// min { |c| : delta c = b }.
template <class T>
UbcReport<T> ubc_constant(const BoundedCochainComplex<T>& c, int n, std::size_t vertex_cap = 1u << 20) {
    using N = norm_t<T>;
    if (n < 1 || n > c.top) throw InputError("UBC degree out of range");
    UbcReport<T> rep;
    rep.degree = n;
    if constexpr (field_traits<T>::trivial_norm) {
        rep.kappa = N(0);
        return rep;
    } else {
        const auto& tgt = c.modules[n];
        const auto& src = c.modules[n - 1];
        if (!tgt.plain() || !src.plain() || tgt.kind() != AmbientNorm::Sup)
            throw InputError("ubc_constant needs weighted sup cochain modules");
        Matrix<T> dd = c.d[n - 1].to_dense();
        Matrix<T> t = dd;
        auto piv = rref(t);
        const std::size_t k = piv.size();
        if (k == 0) {
            rep.kappa = N(0);
            return rep;
        }
        Matrix<T> v = dd.select_columns(piv);
        // unit ball of the image in coordinates lambda
        std::vector<std::size_t> rows;
        const auto& w = tgt.weights();
        for (std::size_t i = 0; i < v.rows(); ++i) {
            if (w[i] == N(0)) continue;
            bool nz = false;
            for (std::size_t j = 0; j < k && !nz; ++j) nz = !is_zero(v(i, j));
            if (nz) rows.push_back(i);
        }
        Matrix<T> ar(rows.size(), k);
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t j = 0; j < k; ++j) ar(a, j) = T(w[rows[a]]) * v(rows[a], j);
        if (rank(ar) < k)
            throw InputError("image of the differential meets the null space of the seminorm; kappa is unbounded");
        auto verts = detail::symmetric_polytope_vertices(ar, vertex_cap);
        rep.vertices = verts.size();
        Matrix<T> sec(dd.cols(), k);
        for (std::size_t j = 0; j < k; ++j) sec(piv[j], j) = T(1);
        auto ker = kernel_basis(dd);
        auto quot = SeminormedModule<T>::quotient(src, sec, ker);
        bool first = true;
        for (auto& lam : verts) {
            auto val = seminorm_eval(quot, lam);
            if (first || val.value > rep.kappa) {
                first = false;
                rep.kappa = val.value;
                rep.witness = v.apply(lam);
                rep.preimage = val.witness;
            }
        }
        rep.witness_norm = seminorm_eval(tgt, rep.witness).value;
        rep.preimage_norm = seminorm_eval(src, rep.preimage).value;
        return rep;
    }
}

// Degreewise direct sum with max-of-seminorms, and Phi^n: H^n(prod) -> prod H^n.
template <class T>
struct BoundedProduct {
    BoundedCochainComplex<T> complex;
    std::vector<std::vector<Index>> factor_offset;  // [n][i]
    std::vector<Matrix<T>> phi;                     // per certified degree
    std::vector<Subquotient<T>> product_h;
    std::vector<std::vector<Subquotient<T>>> factor_h;
};

template <class T>
BoundedProduct<T> finite_bounded_product(const std::vector<const BoundedCochainComplex<T>*>& parts) {
    BoundedProduct<T> out;
    auto& c = out.complex;
    if (parts.empty()) {
        c.top = 0;
        c.modules.push_back(SeminormedModule<T>::weighted({}));
        c.layout.push_back(BlockLayout{});
        return out;
    }
    c.top = parts[0]->top;
    for (auto* p : parts) c.top = std::min(c.top, p->top);
    for (int n = 0; n <= c.top; ++n) {
        std::vector<const SeminormedModule<T>*> mods;
        std::vector<Index> off{0};
        for (auto* p : parts) {
            mods.push_back(&p->modules[n]);
            off.push_back(off.back() + p->dim(n));
        }
        c.modules.push_back(SeminormedModule<T>::direct_sum(mods));
        c.layout.push_back(BlockLayout::uniform(off.back(), 1));
        out.factor_offset.push_back(std::move(off));
    }
    for (int n = 0; n < c.top; ++n) {
        std::vector<std::tuple<Index, Index, T>> trip;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const auto& m = parts[i]->d[n];
            Index r0 = out.factor_offset[n + 1][i], c0 = out.factor_offset[n][i];
            for (Index r = 0; r < m.rows(); ++r)
                for (Index k = m.row_begin(r); k < m.row_end(r); ++k)
                    trip.emplace_back(r0 + r, c0 + m.col_at(k), m.val_at(k));
        }
        c.d.push_back(SparseMatrix<T>::from_triplets(c.dim(n + 1), c.dim(n), std::move(trip)));
    }
    for (int n = 0; n + 1 <= c.top; ++n) {
        out.product_h.push_back(bounded_cohomology(c, n));
        std::vector<Subquotient<T>> fh;
        std::size_t total = 0;
        for (auto* p : parts) {
            fh.push_back(bounded_cohomology(*p, n));
            total += fh.back().rank();
        }
        const auto& hp = out.product_h.back();
        Matrix<T> phi(total, hp.rank());
        for (std::size_t j = 0; j < hp.rank(); ++j) {
            Vec<T> e(hp.rank(), T(0));
            e[j] = T(1);
            Vec<T> rep = hp.representative(e);
            std::size_t row = 0;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                Index a = out.factor_offset[n][i], b = out.factor_offset[n][i + 1];
                Vec<T> piece(rep.begin() + a, rep.begin() + b);
                auto cls = fh[i].classify(piece);
                if (!cls) throw CompositionError("bounded product: projection of a cocycle is not a cocycle");
                for (std::size_t k = 0; k < cls->size(); ++k) phi(row + k, j) = (*cls)[k];
                row += fh[i].rank();
            }
        }
        out.phi.push_back(std::move(phi));
        out.factor_h.push_back(std::move(fh));
    }
    return out;
}

// Module of prod H^n with the max of the factor seminorms.
template <class T>
SeminormedModule<T> product_of_cohomology(const std::vector<Subquotient<T>>& fh) {
    std::vector<const SeminormedModule<T>*> mods;
    for (auto& h : fh) mods.push_back(&h.module());
    return SeminormedModule<T>::direct_sum(mods);
}

}  // namespace boundaries
