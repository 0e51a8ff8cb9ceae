#pragma once

#include "boundaries/coefficients.hpp"

#include <random>

namespace boundaries {

// Isometries of the sup norm: signed permutation matrices.
template <class T>
Matrix<T> random_signed_permutation(std::size_t r, std::mt19937_64& rng) {
    std::vector<std::size_t> perm(r);
    for (std::size_t i = 0; i < r; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix<T> m(r, r);
    for (std::size_t i = 0; i < r; ++i) m(perm[i], i) = rng() & 1 ? T(1) : T(-1);
    return m;
}

template <class T>
bool is_identity(const Matrix<T>& m) {
    return m.equals(Matrix<T>::identity(m.rows()));
}

// rho(k) = P^k for a random signed permutation P with P^n = 1.
template <class T>
std::vector<Matrix<T>> random_cyclic_representation(int n, std::size_t r, std::mt19937_64& rng) {
    while (true) {
        Matrix<T> p = random_signed_permutation<T>(r, rng);
        Matrix<T> q = Matrix<T>::identity(r);
        std::vector<Matrix<T>> rho;
        for (int k = 0; k < n; ++k) {
            rho.push_back(q);
            q = q * p;
        }
        if (is_identity(q)) return rho;
    }
}

// Representation of a product group a x b (element a*|b|+b) from factor
// representations that commute.
template <class T>
std::vector<Matrix<T>> product_representation(const std::vector<Matrix<T>>& ra, const std::vector<Matrix<T>>& rb) {
    std::vector<Matrix<T>> out;
    for (auto& x : ra)
        for (auto& y : rb) out.push_back(x * y);
    return out;
}

// On Delta^m: vertex modules sup(r), edge (a,b) acting by Q_b Q_a^-1 for
// random signed permutations Q_v. Simply connected, yet edges twist.
template <class T>
CoefficientSystem<T> random_gauge_system(SSetPtr x, std::size_t r, std::mt19937_64& rng) {
    std::vector<Matrix<T>> q;
    for (Id v = 0; v < x->count(0); ++v) q.push_back(random_signed_permutation<T>(r, rng));
    std::map<Id, Matrix<T>> edges;
    for (Id e = 0; e < x->count(1); ++e) {
        if (!x->nondegenerate(1, e)) continue;
        Id a = x->face(1, 1, e), b = x->face(1, 0, e);
        edges.emplace(e, q[b] * q[a].transpose());
    }
    std::vector<SeminormedModule<T>> mods(x->count(0), SeminormedModule<T>::sup(r));
    return CoefficientSystem<T>(x, std::move(mods), std::move(edges));
}

}  // namespace boundaries
