#include "boundaries/cochains.hpp"

namespace boundaries {

namespace {

Id interval_simplex(const SimplicialSet& d1, int n, int ones) {
    for (Id y = 0; y < d1.count(n); ++y) {
        auto v = d1.vertices(n, y);
        int c = 0;
        for (Id a : v) c += a == 1;
        bool sorted = std::is_sorted(v.begin(), v.end());
        if (sorted && c == ones) return y;
    }
    throw std::logic_error("interval simplex not found");
}

}  // namespace

SimplicialMap cylinder_end(const ProductSet& cyl, int end) {
    const auto& x = cyl.pr1.tgt;
    const auto& d1 = *cyl.pr2.tgt;
    SimplicialMap m{x, cyl.set, {}};
    m.comp.resize(x->trunc() + 1);
    for (int n = 0; n <= x->trunc(); ++n) {
        Id y = interval_simplex(d1, n, end ? n + 1 : 0);
        m.comp[n].resize(x->count(n));
        for (Id s = 0; s < x->count(n); ++s) m.comp[n][s] = s * d1.count(n) + y;
    }
    return m;
}

Id prism_simplex(const ProductSet& cyl, int n, Id sigma, int j) {
    const auto& x = *cyl.pr1.tgt;
    const auto& d1 = *cyl.pr2.tgt;
    Id xs = x.degen(n - 1, j, sigma);
    Id y = interval_simplex(d1, n, n - j);
    return xs * d1.count(n) + y;
}

}  // namespace boundaries
