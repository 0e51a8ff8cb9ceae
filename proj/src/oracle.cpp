#include "boundaries/oracle.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>

namespace boundaries {

namespace {

// Integer coboundary on nondegenerate simplices, dense rows = (n+1)-simplices.
std::vector<std::vector<long>> normalized_coboundary(const SimplicialSet& x, int n) {
    std::vector<Id> cols(x.count(n), -1), ncols;
    for (Id s = 0; s < x.count(n); ++s)
        if (x.nondegenerate(n, s)) {
            cols[s] = static_cast<Id>(ncols.size());
            ncols.push_back(s);
        }
    std::vector<std::vector<long>> m;
    for (Id s = 0; s < x.count(n + 1); ++s) {
        if (!x.nondegenerate(n + 1, s)) continue;
        std::vector<long> row(ncols.size(), 0);
        for (int i = 0; i <= n + 1; ++i) {
            Id f = x.face(n + 1, i, s);
            if (cols[f] >= 0) row[cols[f]] += i % 2 ? -1 : 1;
        }
        m.push_back(std::move(row));
    }
    return m;
}

std::size_t ncols_of(const SimplicialSet& x, int n) { return x.nondegenerate_count(n); }

long modp(long a, long p) { return ((a % p) + p) % p; }

long powmod(long a, long e, long p) {
    long r = 1;
    a = modp(a, p);
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

std::size_t rank_modp(std::vector<std::vector<long>> m, long p) {
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
    for (auto& row : m)
        for (auto& v : row) v = modp(v, p);
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        long inv = powmod(m[r][c], p - 2, p);
        for (auto& v : m[r]) v = v * inv % p;
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && m[i][c]) {
                long f = m[i][c];
                for (std::size_t j = c; j < cols; ++j) m[i][j] = modp(m[i][j] - f * m[r][j], p);
            }
        ++r;
    }
    return r;
}

// Fraction-free Bareiss rank over Q.
std::size_t rank_rational(const std::vector<std::vector<long>>& in) {
    std::size_t rows = in.size(), cols = rows ? in[0].size() : 0, r = 0;
    std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = in[i][j];
    mpz_class prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                m[i][j] = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                if (prev != 1) mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

// Elementary divisors of an integer matrix by row/column gcd elimination.
std::vector<mpz_class> smith_diagonal(const std::vector<std::vector<long>>& in) {
    std::size_t rows = in.size(), cols = rows ? in[0].size() : 0;
    std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = in[i][j];
    std::vector<mpz_class> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry as pivot
        bool found = false;
        std::size_t pi = 0, pj = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (!found || abs(m[i][j]) < abs(m[pi][pj]))) {
                    found = true;
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        std::swap(m[t], m[pi]);
        for (auto& row : m) std::swap(row[t], row[pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
                for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
                for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (auto& row : m) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility: fold any entry not divisible by the pivot
                for (std::size_t i = t + 1; i < rows && clean; ++i)
                    for (std::size_t j = t + 1; j < cols && clean; ++j)
                        if (m[i][j] % m[t][t] != 0) {
                            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
                            clean = false;
                        }
            }
        }
        diag.push_back(abs(m[t][t]));
        ++t;
    }
    return diag;
}

}  // namespace

OracleResult ordinary_cohomology_oracle(const SimplicialSet& x, OracleRing ring, int n, int prime) {
    if (n < 0 || n + 1 > x.trunc()) throw std::invalid_argument("oracle degree needs n+1 <= truncation");
    auto out_mat = normalized_coboundary(x, n);
    std::vector<std::vector<long>> in_mat;
    if (n > 0) in_mat = normalized_coboundary(x, n - 1);
    std::size_t dim = ncols_of(x, n);
    OracleResult res;
    auto rk = [&](const std::vector<std::vector<long>>& m) -> std::size_t {
        if (m.empty()) return 0;
        return ring == OracleRing::ModP ? rank_modp(m, prime) : rank_rational(m);
    };
    res.rank = dim - rk(out_mat) - rk(in_mat);
    if (ring == OracleRing::Integers && !in_mat.empty())
        for (auto& dv : smith_diagonal(in_mat))
            if (dv > 1) res.torsion.push_back(dv.get_str());
    return res;
}

}  // namespace boundaries
