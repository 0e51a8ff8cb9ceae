#pragma once

#include "boundaries/prism.hpp"
#include "boundaries/seminorm.hpp"

#include <map>

namespace boundaries {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Seminormed modules on vertices, invertible isometries on nondegenerate
// edges A(e): A(d1 e) -> A(d0 e). Degenerate edges act as identities.
template <class T>
class CoefficientSystem {
public:
    CoefficientSystem() = default;
    CoefficientSystem(SSetPtr base, std::vector<SeminormedModule<T>> modules, std::map<Id, Matrix<T>> edges)
        : base_(std::move(base)), modules_(std::move(modules)), edges_(std::move(edges)) {
        if (static_cast<Id>(modules_.size()) != base_->count(0))
            throw InputError("coefficient system needs one module per vertex");
        for (auto& [e, m] : edges_) {
            if (e < 0 || e >= base_->count(1)) throw InputError("edge id out of range");
            if (!base_->nondegenerate(1, e)) throw InputError("edge maps are stored on nondegenerate edges only");
            auto inv = inverse(m);
            if (inv) inverses_.emplace(e, *inv);
        }
    }

    static CoefficientSystem constant(SSetPtr base, const SeminormedModule<T>& m) {
        std::vector<SeminormedModule<T>> mods(base->count(0), m);
        return CoefficientSystem(base, std::move(mods), {});
    }

    const SSetPtr& base() const { return base_; }
    const SeminormedModule<T>& module(Id v) const { return modules_[v]; }
    std::size_t rank(Id v) const { return modules_[v].rank(); }
    bool uniform_plain() const {
        for (auto& m : modules_)
            if (!m.plain()) return false;
        return true;
    }
    bool has_edge(Id e) const { return edges_.count(e) > 0; }
    // identity on degenerate or unspecified edges
    Matrix<T> edge(Id e) const {
        auto it = edges_.find(e);
        if (it != edges_.end()) return it->second;
        return Matrix<T>::identity(rank(base_->face(1, 1, e)));
    }
    Matrix<T> edge_inverse(Id e) const {
        auto it = inverses_.find(e);
        if (it != inverses_.end()) return it->second;
        if (edges_.count(e)) throw ValidationError("edge map is singular on edge " + std::to_string(e));
        return Matrix<T>::identity(rank(base_->face(1, 0, e)));
    }
    const Matrix<T>* stored_edge(Id e) const {
        auto it = edges_.find(e);
        return it == edges_.end() ? nullptr : &it->second;
    }
    const Matrix<T>* stored_inverse(Id e) const {
        auto it = inverses_.find(e);
        return it == inverses_.end() ? nullptr : &it->second;
    }
    const std::map<Id, Matrix<T>>& edges() const { return edges_; }

    // Exhaustive check of dimensions, invertibility, isometry and 2-simplex
    // relations. Marks the system validated when nothing is found.
    std::vector<std::string> validate(std::size_t max_report = 50) {
        std::vector<std::string> out;
        auto report = [&](std::string s) {
            if (out.size() < max_report) out.push_back(std::move(s));
        };
        for (Id e = 0; e < base_->count(1); ++e) {
            Id a = base_->face(1, 1, e), b = base_->face(1, 0, e);
            if (!base_->nondegenerate(1, e)) continue;
            auto it = edges_.find(e);
            if (it == edges_.end()) {
                if (rank(a) != rank(b)) report("edge " + std::to_string(e) + ": implicit identity between ranks");
                else if (!check_isometric_iso(Matrix<T>::identity(rank(a)), module(a), module(b)).isometric)
                    report("edge " + std::to_string(e) + ": implicit identity is not an isometry");
                continue;
            }
            const auto& m = it->second;
            if (m.rows() != rank(b) || m.cols() != rank(a)) {
                report("edge " + std::to_string(e) + ": matrix has wrong shape");
                continue;
            }
            if (!inverses_.count(e)) {
                report("edge " + std::to_string(e) + ": matrix is singular");
                continue;
            }
            auto iso = check_isometric_iso(m, module(a), module(b));
            if (!iso.isometric)
                report("edge " + std::to_string(e) + ": not an isometric isomorphism (norm " +
                       (iso.forward.infinite ? std::string("inf") : norm_str(iso.forward.value)) +
                       ", inverse norm " +
                       (iso.backward.infinite ? std::string("inf") : norm_str(iso.backward.value)) + ")");
        }
        if (base_->trunc() >= 2 && out.empty())
            for (Id s = 0; s < base_->count(2); ++s) {
                Matrix<T> lhs = edge(base_->face(2, 0, s)) * edge(base_->face(2, 2, s));
                if (!lhs.equals(edge(base_->face(2, 1, s))))
                    report("2-simplex " + std::to_string(s) + ": A(d0) A(d2) != A(d1)");
            }
        validated_ = out.empty();
        return out;
    }
    bool validated() const { return validated_; }
    void require_validated() const {
        if (!validated_) throw ValidationError("coefficient system has not been validated");
    }

    // Same modules with all weights zero.
    CoefficientSystem trivialized() const {
        std::vector<SeminormedModule<T>> mods;
        for (auto& m : modules_) mods.push_back(SeminormedModule<T>::trivial(m.rank()));
        CoefficientSystem c(base_, std::move(mods), edges_);
        c.validated_ = validated_;
        return c;
    }

private:
    SSetPtr base_;
    std::vector<SeminormedModule<T>> modules_;
    std::map<Id, Matrix<T>> edges_;
    std::map<Id, Matrix<T>> inverses_;
    bool validated_ = false;
};

// f*B; only the vertex and edge components of f are used, so f may land in
// a truncation of B's base.
template <class T>
CoefficientSystem<T> pullback_system(const SimplicialMap& f, const CoefficientSystem<T>& b) {
    b.require_validated();
    const auto& y = *b.base();
    if (f.tgt->count(0) != y.count(0) || (f.tgt->trunc() >= 1 && f.tgt->count(1) != y.count(1)))
        throw InputError("pullback: map target does not match the coefficient base");
    std::vector<SeminormedModule<T>> mods;
    for (Id x = 0; x < f.src->count(0); ++x) mods.push_back(b.module(f(0, x)));
    std::map<Id, Matrix<T>> edges;
    if (f.src->trunc() >= 1)
        for (Id e = 0; e < f.src->count(1); ++e) {
            if (!f.src->nondegenerate(1, e)) continue;
            Id fe = f(1, e);
            if (b.stored_edge(fe)) edges.emplace(e, *b.stored_edge(fe));
        }
    CoefficientSystem<T> out(f.src, std::move(mods), std::move(edges));
    auto v = out.validate();
    if (!v.empty()) throw ValidationError("pullback failed validation: " + v.front());
    return out;
}

template <class T>
CoefficientSystem<T> restrict_to_fiber(const Fiber& fb, const CoefficientSystem<T>& a) {
    return pullback_system(fb.iota, a);
}

// Morphism theta: per vertex of the common base a matrix A(x) -> B(x).
template <class T>
struct CoefficientMorphism {
    std::vector<Matrix<T>> theta;
};

// Naturality and norm-nonincrease of a coefficient morphism.
template <class T>
std::vector<std::string> check_morphism(const CoefficientSystem<T>& a, const CoefficientSystem<T>& b,
                                        const CoefficientMorphism<T>& m) {
    std::vector<std::string> out;
    const auto& x = *a.base();
    for (Id v = 0; v < x.count(0); ++v) {
        auto n = operator_seminorm(m.theta[v], a.module(v), b.module(v));
        if (n.infinite || !norm_leq(n.value, norm_t<T>(1)))
            out.push_back("vertex " + std::to_string(v) + ": morphism increases seminorms");
    }
    for (Id e = 0; e < x.count(1); ++e) {
        Id s = x.face(1, 1, e), t = x.face(1, 0, e);
        if (!(b.edge(e) * m.theta[s]).equals(m.theta[t] * a.edge(e)))
            out.push_back("edge " + std::to_string(e) + ": naturality square does not commute");
    }
    return out;
}

// Transport isomorphism F(alpha)*A_tau => A_tau' for alpha: [p] -> [p'] with
// tau = Y(alpha)(tau'), realized along the straight edge path in Delta^p'
// from alpha(p) to p'. Returns, for each vertex sigma of F_tau', the matrix
// A(sigma(alpha(p),0)) -> A(sigma(p',0)). With `single_edge` the path is one
// edge; otherwise it steps through every intermediate vertex.
template <class T>
std::vector<Matrix<T>> fiber_transport(const Fiber& big, const std::vector<int>& alpha,
                                       const CoefficientSystem<T>& a, bool single_edge) {
    const auto& x = *a.base();
    int pb = big.p;
    int start = alpha.back();
    std::vector<Matrix<T>> out;
    for (Id s = 0; s < big.levels[0].size(); ++s) {
        Id simplex = big.levels[0].at(s)[0];  // Delta^p' x Delta^0 -> X
        Id v0 = x.vertex(pb, simplex, start);
        Matrix<T> m = Matrix<T>::identity(a.rank(v0));
        std::vector<int> stops;
        if (single_edge)
            stops = {start, pb};
        else
            for (int k = start; k <= pb; ++k) stops.push_back(k);
        for (std::size_t k = 0; k + 1 < stops.size(); ++k) {
            if (stops[k] == stops[k + 1]) continue;
            Id e = x.edge(pb, simplex, stops[k], stops[k + 1]);
            m = a.edge(e) * m;
        }
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace boundaries

namespace boundaries {

// System on N(G) from a representation rho (one matrix per element); the
// edge of g carries rho(g)^-1 so that the 2-simplex relation holds for the
// nerve's composition order.
template <class T>
CoefficientSystem<T> action_system(const Nerve& nerve, const Group& g, const std::vector<Matrix<T>>& rho,
                                   const SeminormedModule<T>& module) {
    auto x = nerve.set();
    std::vector<SeminormedModule<T>> mods(x->count(0), module);
    std::map<Id, Matrix<T>> edges;
    for (int e = 0; e < g.order(); ++e)
        if (e != g.identity()) edges.emplace(e, rho[g.inv(e)]);
    return CoefficientSystem<T>(x, std::move(mods), std::move(edges));
}

}  // namespace boundaries
