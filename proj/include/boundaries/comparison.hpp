#pragma once

#include "boundaries/dress.hpp"

#include <map>
#include <tuple>

namespace boundaries {

// Map between two presentations over the same ambient that carries each
// source class to the class of its representative; nullopt if some
// representative is not a target cycle.
template <class T>
std::optional<Matrix<T>> induced_by_identity(const Subquotient<T>& src, const Subquotient<T>& tgt) {
    Matrix<T> out(tgt.rank(), src.rank());
    for (std::size_t j = 0; j < src.rank(); ++j) {
        Vec<T> e(src.rank(), T(0));
        e[j] = T(1);
        auto cls = tgt.classify(src.representative(e));
        if (!cls) return std::nullopt;
        for (std::size_t i = 0; i < tgt.rank(); ++i) out(i, j) = (*cls)[i];
    }
    return out;
}

template <class T>
struct ComparisonReport {
    Filtration filt = Filtration::II;
    int r_max = 0;
    // c_r on E_r^{s, n-s}, keyed (r, s, n); r = 0 is E_infinity
    std::map<std::tuple<int, int, int>, Matrix<T>> maps;
    bool identity_everywhere = true;
    std::size_t factorization_checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

namespace detail {

inline std::string page_tag(int r, int s, int n) {
    return "E_" + (r ? std::to_string(r) : std::string("inf")) + "^{" + std::to_string(s) + "," +
           std::to_string(n - s) + "}";
}

template <class T>
bool in_column_space(const Matrix<T>& m, const Vec<T>& v) {
    if (m.cols() == 0) {
        for (auto& x : v)
            if (!is_zero(x)) return false;
        return true;
    }
    Matrix<T> col(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) col(i, 0) = v[i];
    return rank(Matrix<T>::hcat(m, col)) == rank(m);
}

// H^q_b(F_y; A) -> H^q(F_y; A_tr) per vertex, pushed through base cochains.
template <class T>
std::optional<Matrix<T>> base_comparison(const FiberCoefficientSystem<T>& a, const FiberCoefficientSystem<T>& t,
                                         const BoundedCochainComplex<T>& cba, const Subquotient<T>& hba,
                                         const BoundedCochainComplex<T>& cbt, const Subquotient<T>& hbt, int p,
                                         const SimplicialSet& y) {
    std::vector<Matrix<T>> u;
    for (std::size_t v = 0; v < a.cohomology.size(); ++v) {
        auto m = induced_by_identity(a.cohomology[v], t.cohomology[v]);
        if (!m) return std::nullopt;
        u.push_back(std::move(*m));
    }
    Matrix<T> out(hbt.rank(), hba.rank());
    for (std::size_t j = 0; j < hba.rank(); ++j) {
        Vec<T> e(hba.rank(), T(0));
        e[j] = T(1);
        Vec<T> c = hba.representative(e);
        Vec<T> x(cbt.layout[p].dim(), T(0));
        for (Id tau = 0; tau < y.count(p); ++tau) {
            const auto& uv = u[y.vertex(p, tau, 0)];
            Index ia = cba.layout[p].start(tau), it = cbt.layout[p].start(tau);
            Vec<T> coords(c.begin() + ia, c.begin() + ia + static_cast<Index>(uv.cols()));
            auto img = uv.apply(coords);
            for (std::size_t i = 0; i < img.size(); ++i) x[it + i] = img[i];
        }
        auto cls = hbt.classify(x);
        if (!cls) return std::nullopt;
        for (std::size_t i = 0; i < hbt.rank(); ++i) out(i, j) = (*cls)[i];
    }
    return out;
}

}  // namespace detail

// Compares the spectral sequences of A and of A_tr (same module, trivial
// seminorm) through the unit A_tr -> A, which is the identity on finite
// cochains. Checks: c_r commutes with d_r, c_{r+1} is induced by c_r, the
// E_infinity maps agree with the map on total cohomology, and for
// filtration II the E_2 map factors through H^p_b(Y; H^q_b(F;A)).
template <class T>
ComparisonReport<T> comparison_of_spectral_sequences(const SimplicialMap& f, const CoefficientSystem<T>& a, int N,
                                                     Filtration filt = Filtration::II, int r_max = 3,
                                                     bool check_e2 = true) {
    ComparisonReport<T> rep;
    rep.filt = filt;
    rep.r_max = r_max;
    a.require_validated();
    auto at = a.trivialized();
    at.validate();
    auto grid = std::make_shared<const BisimplexGrid>(bisimplex_grid(f, N));
    auto pa = std::make_shared<const CoefficientSystem<T>>(a);
    auto pt = std::make_shared<const CoefficientSystem<T>>(at);
    auto d = build_double_complex(grid, pa);
    auto dt = build_double_complex(grid, pt);
    for (int p = 0; p <= N; ++p)
        for (int q = 0; p + q < N; ++q)
            if (!d.dh[p][q].equals(dt.dh[p][q]) || !d.dv[p][q].equals(dt.dv[p][q]))
                rep.failures.push_back("differentials of A and A_tr differ at (" + std::to_string(p) + "," +
                                       std::to_string(q) + ")");
    ExplicitPages<T> P(d, filt), Pt(dt, filt);
    const int top = N - 1;
    std::map<std::tuple<int, int, int>, Subquotient<T>> ea, et;
    auto fill = [&](int r) {
        for (int n = 0; n <= top; ++n)
            for (int s = 0; s <= n; ++s) {
                auto x = P.entry(r, s, n);
                auto y = Pt.entry(r, s, n);
                auto c = induced_by_identity(x, y);
                if (!c) {
                    rep.failures.push_back(detail::page_tag(r, s, n) + ": c_r does not map cycles to cycles");
                    continue;
                }
                if (c->rows() != c->cols() || !c->equals(Matrix<T>::identity(c->rows())))
                    rep.identity_everywhere = false;
                rep.maps.emplace(std::tuple{r, s, n}, std::move(*c));
                ea.emplace(std::tuple{r, s, n}, std::move(x));
                et.emplace(std::tuple{r, s, n}, std::move(y));
            }
    };
    for (int r = 1; r <= r_max + 1; ++r) fill(r);
    fill(0);
    if (!rep.ok()) return rep;
    for (int r = 1; r <= r_max; ++r) {
        std::map<std::pair<int, int>, Matrix<T>> dra, drt;
        for (int n = 0; n + 1 <= top; ++n)
            for (int s = 0; s + r <= n + 1; ++s) {
                dra.emplace(std::pair{s, n}, P.differential(r, s, n, ea.at({r, s, n}), ea.at({r, s + r, n + 1})));
                drt.emplace(std::pair{s, n}, Pt.differential(r, s, n, et.at({r, s, n}), et.at({r, s + r, n + 1})));
                const auto& lhs = drt.at({s, n}) * rep.maps.at({r, s, n});
                const auto& rhs = rep.maps.at({r, s + r, n + 1}) * dra.at({s, n});
                if (!lhs.equals(rhs))
                    rep.failures.push_back(detail::page_tag(r, s, n) + ": c_r does not commute with d_r");
            }
        // c_{r+1} against the map c_r induces on H(E_r)
        for (int n = 0; n <= top; ++n)
            for (int s = 0; s <= n; ++s) {
                const auto& next = ea.at({r + 1, s, n});
                const auto& cur = ea.at({r, s, n});
                const auto& curt = et.at({r, s, n});
                const auto& nextt = et.at({r + 1, s, n});
                auto in = drt.find({s - r, n - 1});
                Matrix<T> img = in == drt.end() ? Matrix<T>(curt.rank(), 0) : in->second;
                for (std::size_t j = 0; j < next.rank(); ++j) {
                    Vec<T> e(next.rank(), T(0));
                    e[j] = T(1);
                    auto u = cur.classify(next.representative(e));
                    auto w = curt.classify(nextt.representative(rep.maps.at({r + 1, s, n}).apply(e)));
                    if (!u || !w) {
                        rep.failures.push_back(detail::page_tag(r + 1, s, n) + ": E_{r+1} cycle is not an E_r cycle");
                        continue;
                    }
                    auto v = rep.maps.at({r, s, n}).apply(*u);
                    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= (*w)[i];
                    if (!detail::in_column_space(img, v))
                        rep.failures.push_back(detail::page_tag(r + 1, s, n) + ": c_{r+1} is not induced by c_r");
                }
            }
    }
    // E_infinity against the filtration of H^n(Tot)
    for (int n = 0; n <= top; ++n)
        for (int s = 0; s <= n; ++s) {
            auto gt = einf_filtration(Pt, s, n);
            const auto& x = ea.at({0, s, n});
            const auto& xt = et.at({0, s, n});
            for (std::size_t j = 0; j < x.rank(); ++j) {
                Vec<T> e(x.rank(), T(0));
                e[j] = T(1);
                auto v = x.representative(e);
                auto w = xt.representative(rep.maps.at({0, s, n}).apply(e));
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= w[i];
                auto cls = gt.classify(v);
                bool zero = cls.has_value();
                if (cls)
                    for (auto& c : *cls) zero = zero && is_zero(c);
                if (!zero)
                    rep.failures.push_back(detail::page_tag(0, s, n) +
                                           ": c_inf disagrees with the map on total cohomology");
            }
        }
    if (filt != Filtration::II || !check_e2) return rep;
    const auto& y = *f.tgt;
    for (int q = 0; q + 2 <= N; ++q) {
        auto fa = fiber_coefficient_system(f, a, q);
        auto ft = fiber_coefficient_system(f, at, q);
        if (!fa.violations.empty() || !ft.violations.empty()) {
            rep.failures.push_back("fiber coefficient system in degree " + std::to_string(q) + " is not valid");
            continue;
        }
        auto sa = std::make_shared<const CoefficientSystem<T>>(fa.system);
        auto st = std::make_shared<const CoefficientSystem<T>>(ft.system);
        for (int p = 0; p + q <= top; ++p) {
            auto cba = build_cochain_complex(sa, p + 1);
            auto cbt = build_cochain_complex(st, p + 1);
            auto hba = bounded_cohomology(cba, p), hbt = bounded_cohomology(cbt, p);
            auto e2a = e2_bidegree(d, filt, p, q), e2t = e2_bidegree(dt, filt, p, q);
            auto ma = detail::e2_matching_map(d, fa, p, cba, hba, e2a);
            auto mt = detail::e2_matching_map(dt, ft, p, cbt, hbt, e2t);
            auto mid = detail::base_comparison(fa, ft, cba, hba, cbt, hbt, p, y);
            auto c2 = induced_by_identity(e2a, e2t);
            const std::string where = "E_2^{" + std::to_string(p) + "," + std::to_string(q) + "}";
            if (!ma || !mt || !mid || !c2) {
                rep.failures.push_back(where + ": a factorization map is undefined");
                continue;
            }
            if (!(*mt * *mid).equals(*c2 * *ma)) rep.failures.push_back(where + ": c_2 does not factor through the base");
            ++rep.factorization_checks;
        }
    }
    return rep;
}

}  // namespace boundaries
