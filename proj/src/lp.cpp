#include "boundaries/lp.hpp"

#include "boundaries/sparse.hpp"

namespace boundaries {

const char* lp_status_name(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration-limit";
    }
    return "?";
}

namespace {

template <class T>
bool negative(const T& x) {
    if constexpr (field_traits<T>::exact)
        return x < T(0);
    else
        return x < -real_tolerance();
}
template <class T>
bool positive(const T& x) {
    if constexpr (field_traits<T>::exact)
        return x > T(0);
    else
        return x > real_tolerance();
}

// Revised simplex on  min c.x, A x = b, x >= 0  with b >= 0 and an initial
// identity basis given by `basis` (columns of A equal to unit vectors).
template <class T>
class Revised {
public:
    Revised(std::vector<SparseVec<T>> cols, Vec<T> b, std::vector<std::size_t> basis, std::size_t max_iter)
        : cols_(std::move(cols)), m_(b.size()), binv_(Matrix<T>::identity(b.size())), xb_(std::move(b)),
          basis_(std::move(basis)), max_iter_(max_iter) {
        in_basis_.assign(cols_.size(), -1);
        for (std::size_t i = 0; i < basis_.size(); ++i) in_basis_[basis_[i]] = static_cast<long>(i);
    }

    enum class Outcome { Optimal, Unbounded, Limit };

    // `allowed[j]` false excludes a column from entering.
    Outcome run(const Vec<T>& c, const std::vector<char>& allowed, std::size_t& iters, std::size_t& enter_out) {
        std::size_t degenerate = 0;
        while (true) {
            if (iters >= max_iter_) return Outcome::Limit;
            Vec<T> y = duals(c);
            bool bland = field_traits<T>::exact || degenerate > 50;
            std::size_t enter = cols_.size();
            T best(0);
            for (std::size_t j = 0; j < cols_.size(); ++j) {
                if (in_basis_[j] >= 0 || !allowed[j]) continue;
                T d = c[j];
                const auto& a = cols_[j];
                for (std::size_t k = 0; k < a.size(); ++k) d -= y[a.idx[k]] * a.val[k];
                if (!negative(d)) continue;
                if (bland) {
                    enter = j;
                    break;
                }
                if (enter == cols_.size() || d < best) {
                    best = d;
                    enter = j;
                }
            }
            if (enter == cols_.size()) return Outcome::Optimal;
            Vec<T> u = ftran(enter);
            std::size_t leave = m_;
            T ratio(0);
            for (std::size_t i = 0; i < m_; ++i) {
                if (!positive(u[i])) continue;
                T r = xb_[i] / u[i];
                if (leave == m_ || negative(T(r - ratio))) {
                    leave = i;
                    ratio = r;
                } else if (!positive(T(r - ratio)) && basis_[i] < basis_[leave]) {
                    leave = i;  // tie: Bland
                }
            }
            if (leave == m_) {
                enter_out = enter;
                last_u_ = std::move(u);
                return Outcome::Unbounded;
            }
            degenerate = is_zero(ratio) ? degenerate + 1 : 0;
            pivot(leave, enter, u);
            ++iters;
        }
    }

    Vec<T> duals(const Vec<T>& c) const {
        Vec<T> y(m_, T(0));
        for (std::size_t i = 0; i < m_; ++i) {
            const T& cb = c[basis_[i]];
            if (is_zero(cb)) continue;
            for (std::size_t k = 0; k < m_; ++k)
                if (!is_zero(binv_(i, k))) y[k] += cb * binv_(i, k);
        }
        return y;
    }

    Vec<T> ftran(std::size_t j) const {
        Vec<T> u(m_, T(0));
        const auto& a = cols_[j];
        for (std::size_t i = 0; i < m_; ++i) {
            T s(0);
            for (std::size_t k = 0; k < a.size(); ++k)
                if (!is_zero(binv_(i, a.idx[k]))) s += binv_(i, a.idx[k]) * a.val[k];
            u[i] = s;
        }
        return u;
    }

    void pivot(std::size_t r, std::size_t enter, const Vec<T>& u) {
        T piv = u[r];
        for (std::size_t k = 0; k < m_; ++k) binv_(r, k) /= piv;
        xb_[r] /= piv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || is_zero(u[i])) continue;
            T f = u[i];
            for (std::size_t k = 0; k < m_; ++k)
                if (!is_zero(binv_(r, k))) binv_(i, k) -= f * binv_(r, k);
            xb_[i] -= f * xb_[r];
            if constexpr (!field_traits<T>::exact)
                if (std::fabs(xb_[i]) < real_tolerance()) xb_[i] = 0;
        }
        in_basis_[basis_[r]] = -1;
        basis_[r] = enter;
        in_basis_[enter] = static_cast<long>(r);
    }

    // Tries to push basic columns listed in `drop` out of the basis.
    void drive_out(const std::vector<char>& is_art) {
        for (std::size_t r = 0; r < m_; ++r) {
            if (!is_art[basis_[r]]) continue;
            for (std::size_t j = 0; j < cols_.size(); ++j) {
                if (is_art[j] || in_basis_[j] >= 0) continue;
                Vec<T> u = ftran(j);
                if (is_zero(u[r])) continue;
                pivot(r, j, u);
                break;
            }
        }
    }

    Vec<T> primal() const {
        Vec<T> x(cols_.size(), T(0));
        for (std::size_t i = 0; i < m_; ++i) x[basis_[i]] = xb_[i];
        return x;
    }
    const Vec<T>& last_u() const { return last_u_; }
    const std::vector<std::size_t>& basis() const { return basis_; }

private:
    std::vector<SparseVec<T>> cols_;
    std::size_t m_;
    Matrix<T> binv_;
    Vec<T> xb_;
    std::vector<std::size_t> basis_;
    std::vector<long> in_basis_;
    std::size_t max_iter_;
    Vec<T> last_u_;
};

}  // namespace

template <class T>
LpResult<T> lp_solve(const LpProblem<T>& prob, const LpOptions& opt) {
    const std::size_t n = prob.c.size();
    const std::size_t ma = prob.b.size(), md = prob.e.size();
    if ((ma && prob.A.cols() != n) || prob.A.rows() != ma || (md && prob.D.cols() != n) || prob.D.rows() != md)
        throw std::invalid_argument("lp_solve: inconsistent dimensions");
    const std::size_t m = ma + md;
    // columns: x+ (n), x- (n), slack (md), artificial (as needed)
    std::vector<int> sgn(m, 1);
    Vec<T> rhs(m);
    for (std::size_t i = 0; i < ma; ++i) rhs[i] = prob.b[i];
    for (std::size_t k = 0; k < md; ++k) rhs[ma + k] = prob.e[k];
    for (std::size_t i = 0; i < m; ++i)
        if (rhs[i] < T(0)) {
            sgn[i] = -1;
            rhs[i] = -rhs[i];
        }
    std::vector<SparseVec<T>> cols;
    cols.reserve(2 * n + md + m);
    for (int side = 0; side < 2; ++side)
        for (std::size_t j = 0; j < n; ++j) {
            SparseVec<T> v;
            for (std::size_t i = 0; i < ma; ++i)
                if (!is_zero(prob.A(i, j))) v.push(i, T(side ? -prob.A(i, j) : prob.A(i, j)) * T(sgn[i]));
            for (std::size_t k = 0; k < md; ++k)
                if (!is_zero(prob.D(k, j)))
                    v.push(ma + k, T(side ? -prob.D(k, j) : prob.D(k, j)) * T(sgn[ma + k]));
            cols.push_back(std::move(v));
        }
    for (std::size_t k = 0; k < md; ++k) {
        SparseVec<T> v;
        v.push(ma + k, T(sgn[ma + k]));
        cols.push_back(std::move(v));
    }
    const std::size_t core = cols.size();
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (i >= ma && sgn[i] == 1) {
            basis[i] = 2 * n + (i - ma);
            continue;
        }
        SparseVec<T> v;
        v.push(i, T(1));
        basis[i] = cols.size();
        cols.push_back(std::move(v));
    }
    std::vector<char> is_art(cols.size(), 0);
    for (std::size_t j = core; j < cols.size(); ++j) is_art[j] = 1;

    LpResult<T> res;
    Revised<T> rs(cols, rhs, basis, opt.max_iterations);
    std::vector<char> allow_all(cols.size(), 1);

    auto to_original = [&](const Vec<T>& ystd, Vec<T>& y, Vec<T>& z) {
        y.assign(ma, T(0));
        z.assign(md, T(0));
        for (std::size_t i = 0; i < ma; ++i) y[i] = ystd[i] * T(sgn[i]);
        for (std::size_t k = 0; k < md; ++k) z[k] = -(ystd[ma + k] * T(sgn[ma + k]));
    };

    if (cols.size() > core) {
        Vec<T> c1(cols.size(), T(0));
        for (std::size_t j = core; j < cols.size(); ++j) c1[j] = T(1);
        std::size_t dummy = 0;
        auto out = rs.run(c1, allow_all, res.iterations, dummy);
        if (out == Revised<T>::Outcome::Limit) {
            res.status = LpStatus::IterationLimit;
            return res;
        }
        Vec<T> xs = rs.primal();
        T w(0);
        for (std::size_t j = core; j < cols.size(); ++j) w += xs[j];
        if (positive(w)) {
            res.status = LpStatus::Infeasible;
            to_original(rs.duals(c1), res.y, res.z);
            return res;
        }
        rs.drive_out(is_art);
    }
    Vec<T> c2(cols.size(), T(0));
    for (std::size_t j = 0; j < n; ++j) {
        c2[j] = prob.c[j];
        c2[n + j] = -prob.c[j];
    }
    std::vector<char> allow(cols.size(), 1);
    for (std::size_t j = core; j < cols.size(); ++j) allow[j] = 0;
    std::size_t enter = 0;
    auto out = rs.run(c2, allow, res.iterations, enter);
    if (out == Revised<T>::Outcome::Limit) {
        res.status = LpStatus::IterationLimit;
        return res;
    }
    Vec<T> xs = rs.primal();
    res.x.assign(n, T(0));
    for (std::size_t j = 0; j < n; ++j) res.x[j] = xs[j] - xs[n + j];
    if (out == Revised<T>::Outcome::Unbounded) {
        res.status = LpStatus::Unbounded;
        Vec<T> rstd(cols.size(), T(0));
        rstd[enter] = T(1);
        const auto& u = rs.last_u();
        for (std::size_t i = 0; i < m; ++i) rstd[rs.basis()[i]] -= u[i];
        res.ray.assign(n, T(0));
        for (std::size_t j = 0; j < n; ++j) res.ray[j] = rstd[j] - rstd[n + j];
        return res;
    }
    res.status = LpStatus::Optimal;
    T v(0);
    for (std::size_t j = 0; j < n; ++j) v += prob.c[j] * res.x[j];
    res.value = v;
    to_original(rs.duals(c2), res.y, res.z);
    return res;
}

template <class T>
bool lp_certificate_ok(const LpProblem<T>& prob, const LpResult<T>& res, std::string* why) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    auto near = [](const T& a, const T& b) {
        if constexpr (field_traits<T>::exact)
            return a == b;
        else
            return std::fabs(a - b) <= 1e-7 * (1 + std::fabs(a) + std::fabs(b));
    };
    const std::size_t n = prob.c.size();
    if (res.status == LpStatus::Optimal || res.status == LpStatus::Infeasible) {
        bool opt = res.status == LpStatus::Optimal;
        for (auto& zk : res.z)
            if (negative(zk)) return fail("negative inequality multiplier");
        for (std::size_t j = 0; j < n; ++j) {
            T s(0);
            for (std::size_t i = 0; i < prob.b.size(); ++i) s += prob.A(i, j) * res.y[i];
            for (std::size_t k = 0; k < prob.e.size(); ++k) s -= prob.D(k, j) * res.z[k];
            if (!near(s, opt ? prob.c[j] : T(0))) return fail("dual stationarity violated at variable " + std::to_string(j));
        }
        T dv(0);
        for (std::size_t i = 0; i < prob.b.size(); ++i) dv += prob.b[i] * res.y[i];
        for (std::size_t k = 0; k < prob.e.size(); ++k) dv -= prob.e[k] * res.z[k];
        if (!opt) return positive(dv) ? true : fail("Farkas value not positive");
        if (!near(dv, res.value)) return fail("duality gap");
        for (std::size_t i = 0; i < prob.b.size(); ++i) {
            T s(0);
            for (std::size_t j = 0; j < n; ++j) s += prob.A(i, j) * res.x[j];
            if (!near(s, prob.b[i])) return fail("primal equality violated");
        }
        for (std::size_t k = 0; k < prob.e.size(); ++k) {
            T s(0);
            for (std::size_t j = 0; j < n; ++j) s += prob.D(k, j) * res.x[j];
            if (positive(T(s - prob.e[k]))) return fail("primal inequality violated");
        }
        return true;
    }
    if (res.status == LpStatus::Unbounded) {
        T cr(0);
        for (std::size_t j = 0; j < n; ++j) cr += prob.c[j] * res.ray[j];
        if (!negative(cr)) return fail("ray does not decrease objective");
        return true;
    }
    return fail("no certificate");
}

template LpResult<Rational> lp_solve(const LpProblem<Rational>&, const LpOptions&);
template LpResult<double> lp_solve(const LpProblem<double>&, const LpOptions&);
template bool lp_certificate_ok(const LpProblem<Rational>&, const LpResult<Rational>&, std::string*);
template bool lp_certificate_ok(const LpProblem<double>&, const LpResult<double>&, std::string*);

}  // namespace boundaries
