#pragma once

#include "boundaries/lp.hpp"
#include "boundaries/sparse.hpp"

#include <stdexcept>
#include <string>

namespace boundaries {

enum class AmbientNorm { Sup, L1 };

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite-rank module with a polyhedral seminorm. Plain modules carry
// per-coordinate weights; quotient gauges evaluate
//   |v| = min_l | S v + K l |_ambient
// where the ambient is a plain weighted module of dimension S.rows().
template <class T>
class SeminormedModule {
public:
    using N = norm_t<T>;

    SeminormedModule() = default;

    static SeminormedModule weighted(std::vector<N> w, AmbientNorm kind = AmbientNorm::Sup) {
        SeminormedModule m;
        m.kind_ = kind;
        m.weights_ = std::move(w);
        m.rank_ = m.weights_.size();
        return m;
    }
    static SeminormedModule sup(std::size_t rank) { return weighted(std::vector<N>(rank, N(1))); }
    static SeminormedModule trivial(std::size_t rank) { return weighted(std::vector<N>(rank, N(0))); }

    static SeminormedModule quotient(const SeminormedModule& ambient, const Matrix<T>& section, const Matrix<T>& kernel) {
        if (section.rows() != ambient.rank() || (kernel.cols() && kernel.rows() != ambient.rank()))
            throw std::invalid_argument("quotient gauge: dimension mismatch");
        if (!ambient.plain()) {
            // compose with the ambient's own gauge
            Matrix<T> s = ambient.section_ * section;
            Matrix<T> k = kernel.cols() ? Matrix<T>::hcat(ambient.section_ * kernel, ambient.kernel_) : ambient.kernel_;
            SeminormedModule base = weighted(ambient.weights_, ambient.kind_);
            return quotient(base, s, k);
        }
        SeminormedModule m;
        m.kind_ = ambient.kind_;
        m.weights_ = ambient.weights_;
        m.rank_ = section.cols();
        m.plain_ = false;
        m.section_ = section;
        m.kernel_ = kernel.cols() ? kernel : Matrix<T>(ambient.rank(), 0);
        return m;
    }

    // Quotient of a plain ambient by a surjection pi: ambient -> F^r.
    static SeminormedModule from_surjection(const SeminormedModule& ambient, const Matrix<T>& pi) {
        Matrix<T> t = pi;
        auto piv = rref(t);
        if (piv.size() != pi.rows()) throw std::invalid_argument("from_surjection: map is not surjective");
        // right inverse: columns e_{piv[k]} scaled through the reduced system
        Matrix<T> sub = pi.select_columns(piv);
        auto inv = inverse(sub);
        Matrix<T> sec(pi.cols(), pi.rows());
        for (std::size_t k = 0; k < piv.size(); ++k)
            for (std::size_t j = 0; j < pi.rows(); ++j) sec(piv[k], j) = (*inv)(k, j);
        return quotient(ambient, sec, kernel_basis(pi));
    }

    static SeminormedModule direct_sum(const std::vector<const SeminormedModule*>& parts) {
        if (parts.empty()) return weighted({});
        AmbientNorm kind = parts[0]->kind_;
        bool all_plain = true;
        for (auto* p : parts) {
            if (p->kind_ != kind) throw std::invalid_argument("direct sum of mixed norm kinds");
            all_plain = all_plain && p->plain_;
        }
        std::vector<N> w;
        for (auto* p : parts) w.insert(w.end(), p->weights_.begin(), p->weights_.end());
        if (all_plain) return weighted(std::move(w), kind);
        Matrix<T> s, k;
        bool first = true;
        for (auto* p : parts) {
            Matrix<T> ps = p->plain_ ? Matrix<T>::identity(p->rank_) : p->section_;
            Matrix<T> pk = p->plain_ ? Matrix<T>(p->rank_, 0) : p->kernel_;
            if (first) {
                s = ps;
                k = pk;
                first = false;
            } else {
                s = Matrix<T>::block_diag(s, ps);
                k = Matrix<T>::block_diag(k, pk);
            }
        }
        return quotient(weighted(std::move(w), kind), s, k);
    }

    std::size_t rank() const { return rank_; }
    bool plain() const { return plain_; }
    AmbientNorm kind() const { return kind_; }
    const std::vector<N>& weights() const { return weights_; }
    const Matrix<T>& section() const { return section_; }
    const Matrix<T>& kernel() const { return kernel_; }
    std::size_t ambient_dim() const { return weights_.size(); }
    bool all_weights_zero() const {
        for (auto& w : weights_)
            if (w != N(0)) return false;
        return true;
    }

private:
    AmbientNorm kind_ = AmbientNorm::Sup;
    std::vector<N> weights_;
    std::size_t rank_ = 0;
    bool plain_ = true;
    Matrix<T> section_;
    Matrix<T> kernel_;
};

template <class T>
struct NormValue {
    norm_t<T> value{};
    bool infinite = false;
    Vec<T> witness;  // ambient minimizer (seminorm_eval) or ball point (operator)
};

namespace detail {

template <class T>
norm_t<T> to_norm(const T& x) {
    if constexpr (field_traits<T>::trivial_norm)
        return norm_t<T>(0);
    else
        return field_traits<T>::abs(x);
}

template <class T>
norm_t<T> plain_eval(const std::vector<norm_t<T>>& w, AmbientNorm kind, const Vec<T>& v) {
    using N = norm_t<T>;
    N s(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (w[i] == N(0)) continue;
        N a = w[i] * to_norm(v[i]);
        if (kind == AmbientNorm::Sup) {
            if (a > s) s = a;
        } else {
            s += a;
        }
    }
    return s;
}

}  // namespace detail

// Seminorm of v (coordinates in M's basis).
template <class T>
NormValue<T> seminorm_eval(const SeminormedModule<T>& m, const Vec<T>& v) {
    using N = norm_t<T>;
    NormValue<T> out;
    if (v.size() != m.rank()) throw std::invalid_argument("seminorm_eval: rank mismatch");
    if constexpr (field_traits<T>::trivial_norm) {
        out.value = N(0);
        return out;
    } else {
        if (m.plain()) {
            out.value = detail::plain_eval<T>(m.weights(), m.kind(), v);
            out.witness = v;
            return out;
        }
        Vec<T> base = m.section().apply(v);
        const auto& w = m.weights();
        const auto& K = m.kernel();
        std::size_t k = K.cols();
        if (k == 0 || m.all_weights_zero()) {
            out.value = detail::plain_eval<T>(w, m.kind(), base);
            out.witness = base;
            return out;
        }
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] != N(0)) rows.push_back(i);
        LpProblem<T> lp;
        if (m.kind() == AmbientNorm::Sup) {
            // vars: lambda (k), t
            lp.c.assign(k + 1, T(0));
            lp.c[k] = T(1);
            lp.D = Matrix<T>(2 * rows.size(), k + 1);
            lp.e.assign(2 * rows.size(), T(0));
            for (std::size_t r = 0; r < rows.size(); ++r) {
                std::size_t i = rows[r];
                T wi = T(w[i]);
                for (std::size_t j = 0; j < k; ++j) {
                    lp.D(2 * r, j) = wi * K(i, j);
                    lp.D(2 * r + 1, j) = -(wi * K(i, j));
                }
                lp.D(2 * r, k) = T(-1);
                lp.D(2 * r + 1, k) = T(-1);
                lp.e[2 * r] = -(wi * base[i]);
                lp.e[2 * r + 1] = wi * base[i];
            }
        } else {
            // vars: lambda (k), s_r
            std::size_t nv = k + rows.size();
            lp.c.assign(nv, T(0));
            lp.D = Matrix<T>(2 * rows.size(), nv);
            lp.e.assign(2 * rows.size(), T(0));
            for (std::size_t r = 0; r < rows.size(); ++r) {
                std::size_t i = rows[r];
                lp.c[k + r] = T(w[i]);
                for (std::size_t j = 0; j < k; ++j) {
                    lp.D(2 * r, j) = K(i, j);
                    lp.D(2 * r + 1, j) = -K(i, j);
                }
                lp.D(2 * r, k + r) = T(-1);
                lp.D(2 * r + 1, k + r) = T(-1);
                lp.e[2 * r] = -base[i];
                lp.e[2 * r + 1] = base[i];
            }
        }
        auto res = lp_solve(lp);
        if (res.status != LpStatus::Optimal)
            throw std::logic_error(std::string("quotient gauge LP not optimal: ") + lp_status_name(res.status));
        Vec<T> u = base;
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = 0; j < k; ++j) u[i] += K(i, j) * res.x[j];
        out.value = detail::plain_eval<T>(w, m.kind(), u);
        out.witness = std::move(u);
        return out;
    }
}

struct OperatorOptions {
    std::size_t vertex_cap = std::size_t(1) << 20;
};

namespace detail {

// Vertices of { y : |a_i . y| <= 1 for all i } where the rows a_i span R^d.
// Candidates are d-subsets of constraints with signs; only one of each
// antipodal pair is returned.
template <class T>
std::vector<Vec<T>> symmetric_polytope_vertices(const Matrix<T>& a, std::size_t cap) {
    std::size_t m = a.rows(), d = a.cols();
    std::vector<Vec<T>> verts;
    if (d == 0) {
        verts.push_back({});
        return verts;
    }
    // count candidates: C(m,d) * 2^(d-1)
    long double cnt = 1;
    for (std::size_t i = 0; i < d; ++i) cnt = cnt * (m - i) / (i + 1);
    cnt *= std::pow(2.0L, static_cast<long double>(d - 1));
    if (cnt > static_cast<long double>(cap))
        throw ResourceError("vertex enumeration exceeds cap of " + std::to_string(cap) + " candidates");
    std::vector<std::size_t> comb(d);
    for (std::size_t i = 0; i < d; ++i) comb[i] = i;
    auto feasible = [&](const Vec<T>& y) {
        for (std::size_t i = 0; i < m; ++i) {
            T s(0);
            for (std::size_t j = 0; j < d; ++j) s += a(i, j) * y[j];
            if constexpr (field_traits<T>::exact) {
                if (s > T(1) || s < T(-1)) return false;
            } else {
                if (std::fabs(s) > 1 + 1e-9) return false;
            }
        }
        return true;
    };
    while (true) {
        Matrix<T> sub(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) sub(i, j) = a(comb[i], j);
        if (auto inv = inverse(sub)) {
            for (std::size_t mask = 0; mask < (std::size_t(1) << (d - 1)); ++mask) {
                Vec<T> rhs(d);
                rhs[0] = T(1);
                for (std::size_t i = 1; i < d; ++i) rhs[i] = (mask >> (i - 1)) & 1 ? T(-1) : T(1);
                Vec<T> y = inv->apply(rhs);
                if (!feasible(y)) continue;
                bool dup = false;
                for (auto& v : verts) {
                    bool same = true, neg = true;
                    for (std::size_t j = 0; j < d; ++j) {
                        if (!is_zero(T(v[j] - y[j]))) same = false;
                        if (!is_zero(T(v[j] + y[j]))) neg = false;
                    }
                    if (same || neg) {
                        dup = true;
                        break;
                    }
                }
                if (!dup) verts.push_back(std::move(y));
            }
        }
        std::size_t i = d;
        while (i > 0 && comb[i - 1] == m - d + i - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < d; ++j) comb[j] = comb[j - 1] + 1;
    }
    return verts;
}

}  // namespace detail

// sup { |f v|_tgt : |v|_src <= 1 }, with an infinity flag when a null
// direction of the source has image of positive seminorm.
template <class T>
NormValue<T> operator_seminorm(const Matrix<T>& f, const SeminormedModule<T>& src, const SeminormedModule<T>& tgt,
                               const OperatorOptions& opt = {}) {
    using N = norm_t<T>;
    NormValue<T> out;
    if (f.rows() != tgt.rank() || f.cols() != src.rank())
        throw std::invalid_argument("operator_seminorm: dimension mismatch");
    if constexpr (field_traits<T>::trivial_norm) {
        out.value = N(0);
        return out;
    } else {
        if (f.rows() == 0 || f.cols() == 0) {  // zero map out of or into 0
            out.value = N(0);
            return out;
        }
        auto tnorm = [&](const Vec<T>& v) { return seminorm_eval(tgt, v).value; };
        auto colvec = [&](const Vec<T>& v) { return f.apply(v); };
        const std::size_t r = src.rank();
        if (src.plain()) {
            const auto& w = src.weights();
            std::vector<std::size_t> pos;
            for (std::size_t i = 0; i < r; ++i) {
                if (w[i] != N(0)) {
                    pos.push_back(i);
                    continue;
                }
                Vec<T> e(r, T(0));
                e[i] = T(1);
                if (tnorm(colvec(e)) != N(0)) {
                    out.infinite = true;
                    out.witness = e;
                    return out;
                }
            }
            if (src.kind() == AmbientNorm::L1) {
                // ball vertices are +-e_i / w_i
                for (auto i : pos) {
                    Vec<T> e(r, T(0));
                    e[i] = T(1) / T(w[i]);
                    N v = tnorm(colvec(e));
                    if (v > out.value) {
                        out.value = v;
                        out.witness = e;
                    }
                }
                return out;
            }
            if (tgt.plain() && tgt.kind() == AmbientNorm::Sup) {
                const auto& tw = tgt.weights();
                for (std::size_t j = 0; j < f.rows(); ++j) {
                    if (tw[j] == N(0)) continue;
                    N s(0);
                    for (auto i : pos) s += detail::to_norm(f(j, i)) / w[i];
                    s = s * tw[j];
                    if (s > out.value || out.witness.empty()) {
                        out.value = s;
                        out.witness.assign(r, T(0));
                        for (auto i : pos) {
                            T sg = f(j, i) < T(0) ? T(-1) : T(1);
                            out.witness[i] = sg / T(w[i]);
                        }
                    }
                }
                return out;
            }
            if (pos.size() > 62 || (std::size_t(1) << (pos.empty() ? 0 : pos.size() - 1)) > opt.vertex_cap)
                throw ResourceError("vertex enumeration exceeds cap of " + std::to_string(opt.vertex_cap));
            std::size_t nv = pos.empty() ? 1 : std::size_t(1) << (pos.size() - 1);
            for (std::size_t mask = 0; mask < nv; ++mask) {
                Vec<T> v(r, T(0));
                for (std::size_t k = 0; k < pos.size(); ++k)
                    v[pos[k]] = (k > 0 && ((mask >> (k - 1)) & 1) ? T(-1) : T(1)) / T(w[pos[k]]);
                N val = tnorm(colvec(v));
                if (val > out.value || out.witness.empty()) {
                    out.value = val;
                    out.witness = v;
                }
            }
            return out;
        }
        if (src.kind() != AmbientNorm::Sup)
            throw std::invalid_argument("operator_seminorm: l1 quotient sources are not supported");
        // gauge source: ball = projection of { (v,l) : |w_i (S v + K l)_i| <= 1 }
        const auto& w = src.weights();
        const auto& S = src.section();
        const auto& K = src.kernel();
        std::size_t k = K.cols();
        Matrix<T> M = Matrix<T>::hcat(S, K);
        std::vector<std::size_t> pos;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] != N(0)) pos.push_back(i);
        Matrix<T> mp(pos.size(), r + k);
        for (std::size_t a = 0; a < pos.size(); ++a)
            for (std::size_t j = 0; j < r + k; ++j) mp(a, j) = T(w[pos[a]]) * M(pos[a], j);
        // null directions of the source seminorm
        Matrix<T> ker = kernel_basis(mp);
        for (std::size_t c = 0; c < ker.cols(); ++c) {
            Vec<T> v(r);
            for (std::size_t i = 0; i < r; ++i) v[i] = ker(i, c);
            if (tnorm(colvec(v)) != N(0)) {
                out.infinite = true;
                out.witness = v;
                return out;
            }
        }
        Matrix<T> q = column_basis(mp.transpose());  // (r+k) x d, complement of ker
        Matrix<T> a = mp * q;
        auto verts = detail::symmetric_polytope_vertices(a, opt.vertex_cap);
        for (auto& y : verts) {
            Vec<T> vl = q.apply(y);
            Vec<T> v(vl.begin(), vl.begin() + r);
            N val = tnorm(colvec(v));
            if (val > out.value || out.witness.empty()) {
                out.value = val;
                out.witness = v;
            }
        }
        return out;
    }
}

template <class T>
struct IsoCheck {
    bool invertible = false;
    bool isometric = false;
    NormValue<T> forward, backward;
};

template <class T>
IsoCheck<T> check_isometric_iso(const Matrix<T>& f, const SeminormedModule<T>& src, const SeminormedModule<T>& tgt) {
    IsoCheck<T> out;
    auto inv = inverse(f);
    if (!inv) return out;
    out.invertible = true;
    out.forward = operator_seminorm(f, src, tgt);
    out.backward = operator_seminorm(*inv, tgt, src);
    using N = norm_t<T>;
    out.isometric = !out.forward.infinite && !out.backward.infinite && norm_leq(out.forward.value, N(1)) &&
                    norm_leq(out.backward.value, N(1));
    return out;
}

// H = Z / B inside an ambient seminormed module.
template <class T>
class Subquotient {
public:
    Subquotient() = default;

    Subquotient(const SeminormedModule<T>& ambient, const std::vector<SparseVec<T>>& cycles,
                const std::vector<SparseVec<T>>& boundaries)
        : ambient_(ambient) {
        const std::size_t m = ambient.rank();
        SparseEchelon<T> zspan(false, static_cast<Index>(m));
        std::vector<SparseVec<T>> zb;
        for (auto& z : cycles)
            if (zspan.insert(z)) zb.push_back(z);
        SparseEchelon<T> span(false, static_cast<Index>(m));
        std::vector<SparseVec<T>> bb, reps;
        for (auto& b : boundaries) {
            if (!zspan.contains(b)) throw std::logic_error("subquotient: boundary not contained in cycles");
            if (span.insert(b)) bb.push_back(b);
        }
        for (auto& z : zb)
            if (span.insert(z)) reps.push_back(z);
        cycles_ = to_dense(zb, m);
        boundaries_ = to_dense(bb, m);
        reps_ = to_dense(reps, m);
        Matrix<T> all = Matrix<T>::hcat(boundaries_, reps_);
        if (all.cols()) solver_ = ColumnSolver<T>(all);
        module_ = SeminormedModule<T>::quotient(ambient, reps_, boundaries_);
    }

    std::size_t rank() const { return reps_.cols(); }
    std::size_t ambient_dim() const { return ambient_.rank(); }
    const Matrix<T>& cycles() const { return cycles_; }
    const Matrix<T>& boundaries() const { return boundaries_; }
    const Matrix<T>& reps() const { return reps_; }
    const SeminormedModule<T>& module() const { return module_; }
    const SeminormedModule<T>& ambient() const { return ambient_; }

    // Class coordinates of a cycle; nullopt if z is not a cycle.
    std::optional<Vec<T>> classify(const Vec<T>& z) const {
        if (boundaries_.cols() + reps_.cols() == 0) {
            for (auto& x : z)
                if (!is_zero(x)) return std::nullopt;
            return Vec<T>{};
        }
        auto c = solver_.solve(z);
        if (!c) return std::nullopt;
        return Vec<T>(c->begin() + boundaries_.cols(), c->end());
    }
    Vec<T> representative(const Vec<T>& coords) const { return reps_.apply(coords); }
    NormValue<T> class_seminorm(const Vec<T>& coords) const { return seminorm_eval(module_, coords); }

private:
    static Matrix<T> to_dense(const std::vector<SparseVec<T>>& cols, std::size_t m) {
        Matrix<T> d(m, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t k = 0; k < cols[j].size(); ++k) d(cols[j].idx[k], j) = cols[j].val[k];
        return d;
    }

    SeminormedModule<T> ambient_;
    Matrix<T> cycles_, boundaries_, reps_;
    SeminormedModule<T> module_;
    ColumnSolver<T> solver_;
};

// Columns of a sparse matrix as sparse vectors.
template <class T>
std::vector<SparseVec<T>> columns_of(const SparseMatrix<T>& m) {
    SparseMatrix<T> t = m.transpose();
    std::vector<SparseVec<T>> out(t.rows());
    for (Index c = 0; c < t.rows(); ++c) out[c] = t.row(c);
    return out;
}

struct CompositionError : std::logic_error {
    using std::logic_error::logic_error;
};

// H = ker d_out / im d_in at the middle module.
template <class T>
Subquotient<T> cohomology_presentation(const SparseMatrix<T>& d_in, const SparseMatrix<T>& d_out,
                                       const SeminormedModule<T>& middle) {
    if (d_in.rows() != static_cast<Index>(middle.rank()) || d_out.cols() != static_cast<Index>(middle.rank()))
        throw std::invalid_argument("cohomology_presentation: dimension mismatch");
    SparseMatrix<T> comp = d_out * d_in;
    if (auto nz = comp.first_nonzero())
        throw CompositionError("d_out * d_in != 0 at entry (" + std::to_string(nz->first) + ", " +
                               std::to_string(nz->second) + ")");
    auto z = sparse_kernel(d_out);
    auto b = columns_of(d_in);
    return Subquotient<T>(middle, z, b);
}

}  // namespace boundaries
