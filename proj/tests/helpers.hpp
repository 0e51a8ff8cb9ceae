#pragma once

#include "boundaries/cochains.hpp"

namespace testutil {

using namespace boundaries;
using Q = Rational;

template <class T = Q>
Matrix<T> mat(std::initializer_list<std::initializer_list<long long>> rows) {
    Matrix<T> m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (auto& r : rows) {
        std::size_t j = 0;
        for (auto v : r) m(i, j++) = T(v);
        ++i;
    }
    return m;
}

// Z/2 acting on a rank-r module through the given matrix for the generator.
template <class T = Q>
CoefficientSystem<T> z2_system(const Nerve& n, const Matrix<T>& gen, const SeminormedModule<T>& m) {
    auto sys = action_system<T>(n, Group::cyclic(2), {Matrix<T>::identity(gen.rows()), gen}, m);
    return sys;
}

}  // namespace testutil
