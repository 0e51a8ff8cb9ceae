#include "boundaries/homotopy.hpp"

#include <map>

namespace boundaries {

namespace {

std::map<std::vector<Id>, Id> vertex_index(const SimplicialSet& s, int n) {
    std::map<std::vector<Id>, Id> m;
    for (Id y = 0; y < s.count(n); ++y) m.emplace(s.vertices(n, y), y);
    return m;
}

}  // namespace

Homotopy conjugation_homotopy(const Nerve& nh, const Nerve& ng, const Homomorphism& phi0, int c) {
    const Group& h = *phi0.src;
    const Group& g = *phi0.tgt;
    std::vector<int> phi1(h.order());
    for (int x = 0; x < h.order(); ++x) phi1[x] = g.mul(g.mul(g.inv(c), phi0(x)), c);
    int trunc = nh.set()->trunc();
    if (ng.set()->trunc() != trunc) throw InputError("conjugation homotopy: truncations differ");
    Homotopy out;
    out.cyl = product(nh.set(), standard_simplex(1, trunc));
    const auto& d1 = *out.cyl.pr2.tgt;
    out.g = SimplicialMap{out.cyl.set, ng.set(), {}};
    out.g.comp.resize(trunc + 1);
    for (int n = 0; n <= trunc; ++n) {
        Id ny = d1.count(n);
        out.g.comp[n].resize(out.cyl.set->count(n));
        for (Id s = 0; s < nh.set()->count(n); ++s)
            for (Id y = 0; y < ny; ++y) {
                if (n == 0) {
                    out.g.comp[0][s * ny + y] = 0;
                    continue;
                }
                auto u = d1.vertices(n, y);
                const auto& str = nh.string(n, s);
                std::vector<int> img;
                for (int i = 0; i < n; ++i) {
                    int a = u[i], b = u[i + 1];
                    int x = str[i];
                    img.push_back(a == b ? (a == 0 ? phi0(x) : phi1[x]) : g.mul(phi0(x), c));
                }
                out.g.comp[n][s * ny + y] = ng.lookup(n, img);
            }
    }
    return out;
}

Homotopy poset_homotopy(int k, int m, const std::function<int(int, int)>& g, int trunc) {
    for (int a = 0; a <= k; ++a) {
        if (g(a, 0) > g(a, 1)) throw InputError("poset homotopy is not monotone in t");
        if (a > 0 && (g(a - 1, 0) > g(a, 0) || g(a - 1, 1) > g(a, 1)))
            throw InputError("poset homotopy is not monotone in a");
    }
    Homotopy out;
    auto x = standard_simplex(k, trunc);
    auto y = standard_simplex(m, trunc);
    out.cyl = product(x, standard_simplex(1, trunc));
    const auto& d1 = *out.cyl.pr2.tgt;
    out.g = SimplicialMap{out.cyl.set, y, {}};
    out.g.comp.resize(trunc + 1);
    for (int n = 0; n <= trunc; ++n) {
        auto idx = vertex_index(*y, n);
        Id ny = d1.count(n);
        out.g.comp[n].resize(out.cyl.set->count(n));
        for (Id s = 0; s < x->count(n); ++s) {
            auto vs = x->vertices(n, s);
            for (Id t = 0; t < ny; ++t) {
                auto u = d1.vertices(n, t);
                std::vector<Id> img;
                for (int i = 0; i <= n; ++i) img.push_back(g(vs[i], u[i]));
                out.g.comp[n][s * ny + t] = idx.at(img);
            }
        }
    }
    return out;
}

SimplicialMap simplex_map(int k, int m, const std::vector<int>& on_vertices, int trunc) {
    auto x = standard_simplex(k, trunc);
    auto y = standard_simplex(m, trunc);
    SimplicialMap f{x, y, {}};
    for (int n = 0; n <= trunc; ++n) {
        auto idx = vertex_index(*y, n);
        f.comp.emplace_back(x->count(n));
        for (Id s = 0; s < x->count(n); ++s) {
            std::vector<Id> img;
            for (Id v : x->vertices(n, s)) img.push_back(on_vertices.at(v));
            f.comp[n][s] = idx.at(img);
        }
    }
    return f;
}

}  // namespace boundaries
